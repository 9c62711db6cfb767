// rlnc: command-line front end.
//
// Exit codes: 0 success, 1 rate condition fails (check) or no witness
// (search), 2 invalid input, 3 request refused by a size guard.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rlnc/achieve.hpp"
#include "rlnc/coding.hpp"
#include "rlnc/error.hpp"
#include "rlnc/experiment.hpp"
#include "rlnc/gf.hpp"
#include "rlnc/network.hpp"
#include "rlnc/network_io.hpp"

namespace {

using rlnc::gf::Field;
using rlnc::network::NetworkSpec;
using rlnc::network::RateVector;

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;
constexpr int kGuard = 3;

// Input errors tagged with the option or file they came from.
struct InputError {
  std::string message;
};

struct Options {
  std::string network;
  std::string rate;
  std::string field;
  std::string fields;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string format = "table";
  std::string output;
  std::size_t bound = 0;
};

NetworkSpec load(const Options& o) {
  try {
    auto spec = rlnc::network::load_network(o.network);
    const auto violations = rlnc::network::validate(spec);
    if (!violations.empty()) {
      std::string msg = fmt::format("{}: invalid network", o.network);
      for (const auto& v : violations) msg += "\n  " + v.message;
      throw InputError{msg};
    }
    return spec;
  } catch (const rlnc::Error& e) {
    throw InputError{e.what()};
  }
}

RateVector rate_for(const Options& o, const NetworkSpec& spec) {
  RateVector rate;
  try {
    rate = RateVector::parse(o.rate);
  } catch (const rlnc::Error& e) {
    throw InputError{fmt::format("--rate: {}", e.what())};
  }
  if (rate.size() != spec.sources.size()) {
    throw InputError{fmt::format(
        "--rate: {} entries given but {} declares {} sources", rate.size(),
        o.network, spec.sources.size())};
  }
  return rate;
}

Field field_from(const std::string& option, const std::string& text) {
  try {
    return Field::parse(text);
  } catch (const rlnc::Error& e) {
    throw InputError{fmt::format("{}: {}", option, e.what())};
  }
}

std::vector<Field> fields_from(const std::string& text) {
  std::vector<Field> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(field_from("--fields", item));
  if (out.empty()) throw InputError{"--fields: empty field list"};
  return out;
}

std::uint64_t seed_of(const Options& o) {
  if (!o.seed) throw InputError{"--seed is required for this command"};
  return *o.seed;
}

// Writes to --output when given, standard output otherwise.
void emit(const Options& o, const std::function<void(std::ostream&)>& body) {
  if (o.output.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw InputError{fmt::format("--output: cannot open {}", o.output)};
  body(out);
}

bool csv(const Options& o) { return o.format == "csv"; }

int cmd_validate(const Options& o) {
  const auto spec = load(o);
  std::cout << fmt::format("{}: ok ({} nodes, {} edges, {} sources, {} sinks)\n",
                           spec.name, spec.nodes.size(), spec.edges.size(),
                           spec.sources.size(), spec.sinks.size());
  return kOk;
}

int cmd_check(const Options& o) {
  const auto spec = load(o);
  const auto verdict = rlnc::achieve::check_rate(spec, rate_for(o, spec));
  emit(o, [&](std::ostream& out) {
    if (csv(o)) {
      out << "sink,d1,d2,total,holds\n";
      for (const auto& s : verdict.sinks) {
        out << fmt::format("{},{},{},{},{}\n", s.sink_name, s.d1, s.d2, s.total,
                           s.holds ? "true" : "false");
      }
      return;
    }
    out << fmt::format("{:<12} {:>4} {:>4} {:>6}  {}\n", "sink", "d1", "d2",
                       "total", "holds");
    for (const auto& s : verdict.sinks) {
      out << fmt::format("{:<12} {:>4} {:>4} {:>6}  {}\n", s.sink_name, s.d1,
                         s.d2, s.total,
                         s.holds ? "yes"
                                 : fmt::format("no ({} != {})", s.d1 + s.d2,
                                               s.total));
    }
    out << fmt::format("rate {}: {}\n", verdict.rate.str(),
                       verdict.holds ? "achievable" : "not achievable");
  });
  return verdict.holds ? kOk : kFails;
}

void print_reports(std::ostream& out, const Options& o,
                   std::span<const rlnc::experiment::TrialReport> reports) {
  if (csv(o)) {
    rlnc::experiment::write_csv(out, reports);
    return;
  }
  out << fmt::format("{:<10} {:<12} {:>10} {:>10}  {}\n", "field", "sink",
                     "successes", "trials", "rate");
  for (const auto& r : reports) {
    auto row = [&](const std::string& sink, std::uint64_t n) {
      out << fmt::format("{:<10} {:<12} {:>10} {:>10}  {:.6f}\n", r.field, sink,
                         n, r.trials, static_cast<double>(n) / r.trials);
    };
    for (std::size_t k = 0; k < r.sink_names.size(); ++k) {
      row(r.sink_names[k], r.sink_successes[k]);
    }
    row("ALL", r.overall_successes);
  }
}

int cmd_simulate(const Options& o) {
  const auto spec = load(o);
  const auto rate = rate_for(o, spec);
  const auto field = field_from("--field", o.field);
  const auto seed = seed_of(o);
  if (o.trials == 0) throw InputError{"--trials: must be at least 1"};
  const auto report =
      rlnc::experiment::monte_carlo(spec, rate, field, o.trials, seed, o.threads);
  emit(o, [&](std::ostream& out) {
    print_reports(out, o, std::span<const rlnc::experiment::TrialReport>(&report, 1));
  });
  return kOk;
}

int cmd_sweep(const Options& o) {
  const auto spec = load(o);
  const auto rate = rate_for(o, spec);
  const auto fields = fields_from(o.fields);
  const auto seed = seed_of(o);
  if (o.trials == 0) throw InputError{"--trials: must be at least 1"};
  rlnc::experiment::SweepTable table;
  try {
    table = rlnc::experiment::field_sweep(spec, rate, fields, o.trials, seed,
                                          o.threads);
  } catch (const rlnc::InvalidArgument& e) {
    throw InputError{fmt::format("--fields: {}", e.what())};
  }
  emit(o, [&](std::ostream& out) { print_reports(out, o, table); });
  return kOk;
}

int cmd_oracle(const Options& o) {
  const auto spec = load(o);
  const auto rate = rate_for(o, spec);
  const auto field = field_from("--field", o.field);
  const auto exact = rlnc::experiment::brute_force(spec, rate, field, o.threads);
  emit(o, [&](std::ostream& out) {
    if (csv(o)) {
      rlnc::experiment::write_exact_csv(
          out, std::span<const rlnc::experiment::ExactProbability>(&exact, 1));
      return;
    }
    out << fmt::format("{} coefficient slots, {} tuples over {}\n", exact.slots,
                       exact.tuple_count, exact.field);
    auto row = [&](const std::string& sink, std::uint64_t n) {
      const auto p = rlnc::experiment::Fraction::reduced(n, exact.tuple_count);
      out << fmt::format("{:<12} {:>10}  {}/{}  ({:.6f})\n", sink, n, p.num,
                         p.den, p.value());
    };
    for (std::size_t k = 0; k < exact.sink_names.size(); ++k) {
      row(exact.sink_names[k], exact.sink_successes[k]);
    }
    row("ALL", exact.overall_successes);
  });
  return kOk;
}

int cmd_search(const Options& o) {
  const auto spec = load(o);
  const auto rate = rate_for(o, spec);
  const auto field = field_from("--field", o.field);
  const auto witness = rlnc::experiment::existence_search(spec, rate, field);
  if (!witness) {
    std::cout << fmt::format("no coding over {} decodes at every sink\n",
                             field.name());
    return kFails;
  }
  const auto aug = rlnc::network::AugmentedNetwork::build(spec, rate);
  emit(o, [&](std::ostream& out) {
    rlnc::coding::dump(out, rlnc::coding::code_with_coefficients(aug, field, *witness),
                       aug);
  });
  return kOk;
}

int cmd_dump(const Options& o) {
  const auto spec = load(o);
  const auto rate = rate_for(o, spec);
  const auto field = field_from("--field", o.field);
  const auto aug = rlnc::network::AugmentedNetwork::build(spec, rate);
  auto rng = rlnc::RngStream::derive(seed_of(o), 0);
  const auto code = rlnc::coding::random_code(aug, field, rng);
  emit(o, [&](std::ostream& out) { rlnc::coding::dump(out, code, aug); });
  return kOk;
}

int cmd_region(const Options& o) {
  const auto spec = load(o);
  const auto report = rlnc::achieve::enumerate_region(spec, o.bound);
  emit(o, [&](std::ostream& out) {
    if (csv(o)) {
      out << "rate,frontier\n";
      for (const auto& r : report.achievable) {
        const bool maximal =
            std::find(report.frontier.begin(), report.frontier.end(), r) !=
            report.frontier.end();
        out << fmt::format("\"{}\",{}\n", r.str(), maximal ? "true" : "false");
      }
      return;
    }
    out << fmt::format("{} achievable rates in [0,{}]^{}\n",
                       report.achievable.size(), report.bound,
                       spec.sources.size());
    out << "frontier:";
    for (const auto& r : report.frontier) out << " (" << r.str() << ")";
    out << '\n';
  });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random linear network coding laboratory"};
  app.require_subcommand(1);
  Options o;

  auto add_network = [&](CLI::App* cmd) {
    cmd->add_option("--network", o.network, "Network JSON file")->required();
  };
  auto add_rate = [&](CLI::App* cmd) {
    cmd->add_option("--rate", o.rate, "Rate vector, e.g. 1,1")->required();
  };
  auto add_field = [&](CLI::App* cmd) {
    cmd->add_option("--field", o.field, "Field: p:<q> or 2^<k>[:poly-hex]")
        ->required();
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "csv"}));
    cmd->add_option("--output", o.output, "Write to this file");
  };
  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", o.threads, "Worker threads")
        ->check(CLI::Range(1u, 1024u));
  };
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_option("--trials", o.trials, "Number of random codes")->required();
    cmd->add_option("--seed", o.seed, "Master seed");
    add_threads(cmd);
  };

  auto* validate = app.add_subcommand("validate", "Check a network file");
  add_network(validate);

  auto* check = app.add_subcommand("check", "Maxflow condition for a rate");
  add_network(check);
  add_rate(check);
  add_output(check);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo success rate");
  add_network(simulate);
  add_rate(simulate);
  add_field(simulate);
  add_run(simulate);
  add_output(simulate);

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo over several fields");
  add_network(sweep);
  add_rate(sweep);
  sweep->add_option("--fields", o.fields, "Comma-separated fields")->required();
  add_run(sweep);
  add_output(sweep);

  auto* region = app.add_subcommand("region", "Achievable rates up to a bound");
  add_network(region);
  region->add_option("--bound", o.bound, "Largest rate per source")->required();
  add_output(region);

  auto* oracle = app.add_subcommand("oracle", "Exact success probability");
  add_network(oracle);
  add_rate(oracle);
  add_field(oracle);
  add_threads(oracle);
  add_output(oracle);

  auto* search = app.add_subcommand("search", "First coding that decodes everywhere");
  add_network(search);
  add_rate(search);
  add_field(search);
  add_output(search);

  auto* dump = app.add_subcommand("dump", "Print one random coding");
  add_network(dump);
  add_rate(dump);
  add_field(dump);
  dump->add_option("--seed", o.seed, "Master seed");
  add_output(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*check) return cmd_check(o);
    if (*simulate) return cmd_simulate(o);
    if (*sweep) return cmd_sweep(o);
    if (*region) return cmd_region(o);
    if (*oracle) return cmd_oracle(o);
    if (*search) return cmd_search(o);
    if (*dump) return cmd_dump(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kInputError;
  } catch (const rlnc::GuardExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kGuard;
  } catch (const rlnc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
