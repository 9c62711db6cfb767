#include "rlnc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "rlnc/decode.hpp"
#include "rlnc/error.hpp"

namespace rlnc::experiment {
namespace {

using network::AugmentedNetwork;

struct Counts {
  std::vector<std::uint64_t> sinks;
  std::uint64_t overall = 0;

  explicit Counts(std::size_t n) : sinks(n, 0) {}

  void record(const decode::DecodeOutcome& outcome) {
    for (std::size_t k = 0; k < sinks.size(); ++k) {
      sinks[k] += outcome.per_sink[k] ? 1 : 0;
    }
    overall += outcome.all ? 1 : 0;
  }

  void merge(const Counts& other) {
    for (std::size_t k = 0; k < sinks.size(); ++k) sinks[k] += other.sinks[k];
    overall += other.overall;
  }
};

// Runs body(begin, end, counts) over contiguous chunks of [0, total).
// Integer counts are summed, so the result does not depend on `threads`.
template <typename Body>
Counts run_partitioned(std::uint64_t total, unsigned threads,
                       std::size_t sinks, Body body) {
  const std::uint64_t workers =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total));
  Counts result(sinks);
  if (workers == 1) {
    body(0, total, result);
    return result;
  }
  std::vector<Counts> partial(workers, Counts(sinks));
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = total * w / workers;
      const std::uint64_t end = total * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          body(begin, end, partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& p : partial) result.merge(p);
  return result;
}

std::vector<std::string> sink_names(const AugmentedNetwork& aug) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < aug.sink_count(); ++k) {
    names.push_back(aug.node_name(aug.sink_node(k)));
  }
  return names;
}

void check_guard(double tuples, std::size_t slots, const Field& field) {
  if (tuples > kTupleGuard) {
    throw GuardExceeded(
        fmt::format("{}^{} = {:.0f} coefficient tuples exceeds the limit of "
                    "{:.0f}",
                    field.order(), slots, tuples, kTupleGuard),
        tuples, kTupleGuard);
  }
}

// Advances a base-q odometer whose last digit moves fastest.
void increment(std::vector<gf::Element>& digits, std::uint32_t q) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k].value < q) return;
    digits[k].value = 0;
  }
}

std::vector<gf::Element> tuple_at(std::uint64_t index, std::size_t slots,
                                  const Field& field) {
  std::vector<gf::Element> digits(slots, field.zero());
  for (std::size_t k = slots; k-- > 0;) {
    digits[k].value = static_cast<std::uint32_t>(index % field.order());
    index /= field.order();
  }
  return digits;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

TrialReport monte_carlo(const NetworkSpec& spec, const RateVector& rate,
                        const Field& field, std::uint64_t trials,
                        std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  const auto aug = AugmentedNetwork::build(spec, rate);

  const auto counts = run_partitioned(
      trials, threads, aug.sink_count(),
      [&](std::uint64_t begin, std::uint64_t end, Counts& acc) {
        for (std::uint64_t k = begin; k < end; ++k) {
          auto rng = RngStream::derive(seed, k);
          const auto code = coding::random_code(aug, field, rng);
          acc.record(decode::all_sinks_decodable(code, aug));
        }
      });

  TrialReport report;
  report.network = spec.name;
  report.rate = rate;
  report.field = field.name();
  report.trials = trials;
  report.seed = seed;
  report.sink_names = sink_names(aug);
  report.sink_successes = counts.sinks;
  report.overall_successes = counts.overall;
  return report;
}

Fraction Fraction::reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InvalidArgument("fraction with zero denominator");
  const auto g = std::gcd(num, den);
  return {num / g, den / g};
}

double tuple_count(const NetworkSpec& spec, const RateVector& rate,
                   const Field& field) {
  const auto aug = AugmentedNetwork::build(spec, rate);
  return std::pow(static_cast<double>(field.order()),
                  static_cast<double>(coding::coefficient_slots(aug).size()));
}

ExactProbability brute_force(const NetworkSpec& spec, const RateVector& rate,
                             const Field& field, unsigned threads) {
  const auto aug = AugmentedNetwork::build(spec, rate);
  const std::size_t slots = coding::coefficient_slots(aug).size();
  const double tuples = std::pow(static_cast<double>(field.order()),
                                 static_cast<double>(slots));
  check_guard(tuples, slots, field);
  const auto total = static_cast<std::uint64_t>(tuples);

  const auto counts = run_partitioned(
      total, threads, aug.sink_count(),
      [&](std::uint64_t begin, std::uint64_t end, Counts& acc) {
        auto digits = tuple_at(begin, slots, field);
        for (std::uint64_t t = begin; t < end; ++t) {
          const auto code = coding::code_with_coefficients(aug, field, digits);
          acc.record(decode::all_sinks_decodable(code, aug));
          increment(digits, field.order());
        }
      });

  ExactProbability out;
  out.network = spec.name;
  out.rate = rate;
  out.field = field.name();
  out.slots = slots;
  out.tuple_count = total;
  out.sink_names = sink_names(aug);
  out.sink_successes = counts.sinks;
  out.overall_successes = counts.overall;
  return out;
}

SweepTable field_sweep(const NetworkSpec& spec, const RateVector& rate,
                       std::span<const Field> fields, std::uint64_t trials,
                       std::uint64_t seed, unsigned threads) {
  for (std::size_t k = 1; k < fields.size(); ++k) {
    if (fields[k].order() <= fields[k - 1].order()) {
      throw InvalidArgument(fmt::format(
          "sweep fields must increase in order: {} follows {}",
          fields[k].name(), fields[k - 1].name()));
    }
  }
  SweepTable table;
  for (const auto& f : fields) {
    table.push_back(monte_carlo(spec, rate, f, trials, seed, threads));
  }
  return table;
}

std::optional<CoefficientMap> existence_search(const NetworkSpec& spec,
                                               const RateVector& rate,
                                               const Field& field) {
  const auto aug = AugmentedNetwork::build(spec, rate);
  const auto slots = coding::coefficient_slots(aug);
  const double tuples = std::pow(static_cast<double>(field.order()),
                                 static_cast<double>(slots.size()));
  check_guard(tuples, slots.size(), field);
  const auto total = static_cast<std::uint64_t>(tuples);

  std::vector<gf::Element> digits(slots.size(), field.zero());
  for (std::uint64_t t = 0; t < total; ++t) {
    const auto code = coding::code_with_coefficients(aug, field, digits);
    if (decode::all_sinks_decodable(code, aug).all) {
      return coding::coefficient_map(code);
    }
    increment(digits, field.order());
  }
  return std::nullopt;
}

void write_csv(std::ostream& out, std::span<const TrialReport> reports) {
  out << kCsvHeader << '\n';
  for (const auto& r : reports) {
    const auto prefix =
        fmt::format("{},{},{},{},{}", csv_field(r.network),
                    csv_field(r.rate.str()), csv_field(r.field), r.trials,
                    r.seed);
    auto row = [&](const std::string& sink, std::uint64_t successes) {
      out << fmt::format("{},{},{},{:.6f}\n", prefix, csv_field(sink),
                         successes,
                         static_cast<double>(successes) / r.trials);
    };
    for (std::size_t k = 0; k < r.sink_names.size(); ++k) {
      row(r.sink_names[k], r.sink_successes[k]);
    }
    row("ALL", r.overall_successes);
  }
}

void write_exact_csv(std::ostream& out,
                     std::span<const ExactProbability> results) {
  out << kExactCsvHeader << '\n';
  for (const auto& r : results) {
    const auto prefix = fmt::format(
        "{},{},{},{},", csv_field(r.network), csv_field(r.rate.str()),
        csv_field(r.field), r.tuple_count);
    auto row = [&](const std::string& sink, std::uint64_t successes) {
      const auto p = Fraction::reduced(successes, r.tuple_count);
      out << fmt::format("{},{},{},{:.6f},{},{}\n", prefix, csv_field(sink),
                         successes, p.value(), p.num, p.den);
    };
    for (std::size_t k = 0; k < r.sink_names.size(); ++k) {
      row(r.sink_names[k], r.sink_successes[k]);
    }
    row("ALL", r.overall_successes);
  }
}

}  // namespace rlnc::experiment
