#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "rlnc/network.hpp"
#include "rlnc/network_io.hpp"
#include "support/support.hpp"

using namespace rlnc::network;
using rlnc::InvalidArgument;

namespace {

NetworkSpec single_edge() {
  NetworkSpec spec;
  spec.name = "single";
  spec.nodes = {"s", "t"};
  spec.edges = {{"e1", "s", "t"}};
  spec.sources = {"s"};
  spec.sinks = {"t"};
  spec.demands = {{"t", {1}}};
  return spec;
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind kind) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

// Every prefix of the order is closed under "in-edges of the tail first".
bool prefix_closed(const AugmentedNetwork& aug,
                   const std::vector<std::size_t>& order) {
  std::vector<bool> placed(aug.edge_count(), false);
  for (const auto e : order) {
    for (const auto in : aug.in_edges(aug.edge(e).tail)) {
      if (!placed[in]) return false;
    }
    placed[e] = true;
  }
  return true;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(validate(single_edge()).empty());

  SUBCASE("two-cycle with witness") {
    auto spec = single_edge();
    spec.nodes = {"s", "a", "b", "t"};
    spec.edges = {{"e1", "s", "a"}, {"e2", "a", "b"}, {"e3", "b", "a"},
                  {"e4", "b", "t"}};
    const auto vs = validate(spec);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].kind == ViolationKind::cycle);
    CHECK(vs[0].witness == std::vector<std::string>{"e2", "e3"});
  }
  SUBCASE("self loop") {
    auto spec = single_edge();
    spec.edges.push_back({"loop", "t", "t"});
    const auto vs = validate(spec);
    REQUIRE(has_kind(vs, ViolationKind::cycle));
    CHECK(vs.back().witness == std::vector<std::string>{"loop"});
  }
  SUBCASE("demand out of range") {
    auto spec = single_edge();
    spec.nodes.push_back("s2");
    spec.sources.push_back("s2");
    spec.demands["t"] = {3};
    CHECK(has_kind(validate(spec), ViolationKind::demand_range));
    spec.demands["t"] = {0};
    CHECK(has_kind(validate(spec), ViolationKind::demand_range));
  }
  SUBCASE("other violations") {
    auto spec = single_edge();
    spec.demands["t"] = {};
    CHECK(has_kind(validate(spec), ViolationKind::empty_demand));

    spec = single_edge();
    spec.demands.clear();
    CHECK(has_kind(validate(spec), ViolationKind::missing_demand));

    spec = single_edge();
    spec.edges.push_back({"e1", "s", "t"});
    CHECK(has_kind(validate(spec), ViolationKind::duplicate_edge_id));

    spec = single_edge();
    spec.edges.push_back({"e2", "s", "ghost"});
    CHECK(has_kind(validate(spec), ViolationKind::dangling_reference));

    spec = single_edge();
    spec.sinks.push_back("s");
    spec.demands["s"] = {1};
    CHECK(has_kind(validate(spec), ViolationKind::source_is_sink));

    spec = single_edge();
    spec.nodes.push_back("*x");
    CHECK(has_kind(validate(spec), ViolationKind::reserved_name));

    spec = single_edge();
    spec.sinks.clear();
    spec.demands.clear();
    CHECK(has_kind(validate(spec), ViolationKind::no_sinks));

    spec = single_edge();
    spec.nodes.push_back("s");
    CHECK(has_kind(validate(spec), ViolationKind::duplicate_node));
  }
  SUBCASE("build throws the violation list") {
    auto spec = single_edge();
    spec.demands["t"] = {2};
    try {
      (void)AugmentedNetwork::build(spec, RateVector({1}));
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.violations().size() == 1);
    }
  }
}

TEST_CASE("sinks may relay; sources may receive") {
  NetworkSpec spec;
  spec.nodes = {"s1", "s2", "t1", "t2"};
  spec.edges = {{"a", "s1", "s2"}, {"b", "s2", "t1"}, {"c", "t1", "t2"}};
  spec.sources = {"s1", "s2"};
  spec.sinks = {"t1", "t2"};
  spec.demands = {{"t1", {1, 2}}, {"t2", {1}}};
  CHECK(validate(spec).empty());
}

TEST_CASE("augmentation") {
  const auto bottleneck = rlnc::testing::fixture("bottleneck");
  SUBCASE("rate (2,1)") {
    const auto aug = AugmentedNetwork::build(bottleneck, RateVector({2, 1}));
    CHECK(aug.dimension() == 3);
    CHECK(aug.virtual_edge_count() == 3);
    std::vector<VirtualTag> tags;
    for (const auto& e : aug.edges()) {
      if (e.tag) {
        tags.push_back(*e.tag);
        CHECK(e.tail == aug.virtual_node(e.tag->source));
        CHECK(e.head == aug.source_node(e.tag->source));
      }
    }
    CHECK(tags == std::vector<VirtualTag>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(aug.edge(0).id == "*1.1");
    CHECK(aug.edge(2).id == "*2.1");
    CHECK(aug.coordinate(0, 1) == 1);
    CHECK(aug.coordinate(1, 0) == 2);
    CHECK_THROWS_AS(aug.coordinate(1, 1), InvalidArgument);
    CHECK(aug.edge_count() == 6);
  }
  SUBCASE("rate (0,0)") {
    const auto aug = AugmentedNetwork::build(bottleneck, RateVector({0, 0}));
    CHECK(aug.dimension() == 0);
    CHECK(aug.virtual_edge_count() == 0);
    CHECK(aug.edge_count() == 3);
  }
  SUBCASE("rate length mismatch") {
    CHECK_THROWS_AS(AugmentedNetwork::build(bottleneck, RateVector({1})),
                    InvalidArgument);
  }
  SUBCASE("strip restores the base") {
    for (const auto& name : rlnc::testing::fixture_names()) {
      const auto spec = rlnc::testing::fixture(name);
      const auto aug =
          AugmentedNetwork::build(spec, rlnc::testing::fixture_rate(name));
      CHECK(strip_virtual(aug) == spec);
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto inst = rlnc::testing::random_instance(seed);
      const auto aug = AugmentedNetwork::build(inst.spec, inst.rate);
      CHECK(strip_virtual(aug) == inst.spec);
    }
  }
}

TEST_CASE("topological edge order") {
  SUBCASE("path") {
    NetworkSpec spec;
    spec.nodes = {"c", "b", "a"};  // deliberately not in path order
    spec.edges = {{"bc", "b", "c"}, {"ab", "a", "b"}};
    spec.sources = {"a"};
    spec.sinks = {"c"};
    spec.demands = {{"c", {1}}};
    const auto aug = AugmentedNetwork::build(spec, RateVector({1}));
    const auto order = topo_edge_order(aug);
    const auto ab = std::find(order.begin(), order.end(), aug.edge_index("ab"));
    const auto bc = std::find(order.begin(), order.end(), aug.edge_index("bc"));
    CHECK(ab < bc);
  }
  SUBCASE("fixtures and random networks") {
    std::vector<std::pair<NetworkSpec, RateVector>> cases;
    for (const auto& name : rlnc::testing::fixture_names()) {
      cases.emplace_back(rlnc::testing::fixture(name),
                         rlnc::testing::fixture_rate(name));
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      auto inst = rlnc::testing::random_instance(seed);
      cases.emplace_back(inst.spec, inst.rate);
    }
    for (const auto& [spec, rate] : cases) {
      CAPTURE(spec.name);
      const auto aug = AugmentedNetwork::build(spec, rate);
      const auto order = topo_edge_order(aug);
      REQUIRE(order.size() == spec.edges.size() + rate.total());
      auto sorted = order;
      std::sort(sorted.begin(), sorted.end());
      REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      REQUIRE(prefix_closed(aug, order));
      for (std::size_t k = 0; k < aug.virtual_edge_count(); ++k) {
        REQUIRE(aug.is_virtual(order[k]));
      }
      REQUIRE(order == topo_edge_order(AugmentedNetwork::build(spec, rate)));
    }
  }
}

TEST_CASE("rate vectors") {
  CHECK(RateVector::parse("2,1") == RateVector({2, 1}));
  CHECK(RateVector::parse("3") == RateVector({3}));
  CHECK(RateVector::parse(" 1, 0 ").str() == "1,0");
  CHECK(RateVector({2, 1}).total() == 3);
  for (const char* bad : {"", ",", "1,", "a", "1,-1", "1;2", "1.5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(RateVector::parse(bad), InvalidArgument);
  }
}

TEST_CASE("network file format") {
  SUBCASE("round trip") {
    for (const auto& name : rlnc::testing::fixture_names()) {
      const auto spec = rlnc::testing::fixture(name);
      CHECK(spec.name == name);
      CHECK(parse_network(to_json(spec)) == spec);
    }
    const auto inst = rlnc::testing::random_instance(3);
    CHECK(parse_network(to_json(inst.spec)) == inst.spec);
  }
  SUBCASE("syntax errors name the line") {
    try {
      (void)parse_network("{\n  \"nodes\": [\"a\",\n  ]\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("schema errors name the field") {
    auto expect = [](const char* text, const char* field) {
      try {
        (void)parse_network(text);
        FAIL("expected ParseError");
      } catch (const ParseError& e) {
        CAPTURE(e.what());
        CHECK(std::string(e.what()).find(field) != std::string::npos);
      }
    };
    expect(R"({"nodes": [], "sources": [], "sinks": [], "demands": {}})",
           "'edges'");
    expect(R"({"nodes": ["a"], "edges": [{"id": "e", "tail": "a", "head": 3}],
              "sources": [], "sinks": [], "demands": {}})",
           "edges[0].head");
    expect(R"({"nodes": ["a"], "edges": [], "sources": [], "sinks": [],
              "demands": {"t": [-1]}})",
           "demands.t[0]");
    expect(R"({"nodes": "a", "edges": [], "sources": [], "sinks": [],
              "demands": {}})",
           "nodes");
  }
  SUBCASE("file name becomes the default name") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "rlnc_unnamed_net.json";
    {
      std::ofstream out(path);
      out << R"({"nodes": ["s", "t"], "edges": [{"id": "e", "tail": "s", "head": "t"}],
                 "sources": ["s"], "sinks": ["t"], "demands": {"t": [1]}})";
    }
    CHECK(load_network(path).name == "rlnc_unnamed_net");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_network(dir / "does_not_exist.json"), ParseError);
  }
}
