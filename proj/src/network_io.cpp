#include "rlnc/network_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace rlnc::network {
namespace {

using nlohmann::json;

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(fmt::format("{}: missing field '{}'",
                                 path.empty() ? "<root>" : path, key));
  }
  return *it;
}

std::string join_path(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : fmt::format("{}.{}", path, key);
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    throw ParseError(fmt::format("{}: expected a string, got {}", path,
                                 v.type_name()));
  }
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) {
    throw ParseError(fmt::format("{}: expected an array, got {}", path,
                                 v.type_name()));
  }
  return v;
}

std::vector<std::string> string_list(const json& obj, const char* key) {
  const std::string path = key;
  const auto& arr = as_array(member(obj, key, ""), path);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(as_string(arr[k], fmt::format("{}[{}]", path, k)));
  }
  return out;
}

}  // namespace

NetworkSpec parse_network(std::string_view text,
                          const std::string& fallback_name) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.what() carries "parse error at line L, column C: ..."
    throw ParseError(e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(fmt::format("<root>: expected an object, got {}",
                                 doc.type_name()));
  }

  NetworkSpec spec;
  spec.name = fallback_name;
  if (auto it = doc.find("name"); it != doc.end()) {
    spec.name = as_string(*it, "name");
  }
  spec.nodes = string_list(doc, "nodes");
  spec.sources = string_list(doc, "sources");
  spec.sinks = string_list(doc, "sinks");

  const auto& edges = as_array(member(doc, "edges", ""), "edges");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto path = fmt::format("edges[{}]", k);
    if (!edges[k].is_object()) {
      throw ParseError(fmt::format("{}: expected an object, got {}", path,
                                   edges[k].type_name()));
    }
    EdgeSpec e;
    e.id = as_string(member(edges[k], "id", path), join_path(path, "id"));
    e.tail = as_string(member(edges[k], "tail", path), join_path(path, "tail"));
    e.head = as_string(member(edges[k], "head", path), join_path(path, "head"));
    spec.edges.push_back(std::move(e));
  }

  const auto& demands = member(doc, "demands", "");
  if (!demands.is_object()) {
    throw ParseError(fmt::format("demands: expected an object, got {}",
                                 demands.type_name()));
  }
  for (const auto& [sink, list] : demands.items()) {
    const auto path = fmt::format("demands.{}", sink);
    as_array(list, path);
    std::vector<std::size_t> indices;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (!list[k].is_number_unsigned()) {
        throw ParseError(fmt::format(
            "{}[{}]: expected a 1-based source index, got {}", path, k,
            list[k].dump()));
      }
      indices.push_back(list[k].get<std::size_t>());
    }
    spec.demands.emplace(sink, std::move(indices));
  }
  return spec;
}

NetworkSpec load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(fmt::format("{}: cannot open file", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_network(buffer.str(), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string to_json(const NetworkSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["nodes"] = spec.nodes;
  json edges = json::array();
  for (const auto& e : spec.edges) {
    edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  }
  doc["edges"] = std::move(edges);
  doc["sources"] = spec.sources;
  doc["sinks"] = spec.sinks;
  json demands = json::object();
  for (const auto& [sink, list] : spec.demands) demands[sink] = list;
  doc["demands"] = std::move(demands);
  return doc.dump(2);
}

}  // namespace rlnc::network
