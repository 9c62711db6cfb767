#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rlnc/coding.hpp"
#include "rlnc/gf.hpp"
#include "rlnc/network.hpp"

namespace rlnc::experiment {

using coding::CoefficientMap;
using gf::Field;
using network::NetworkSpec;
using network::RateVector;

/// Empirical decoding statistics of random linear coding.  Reproducible bit
/// for bit from (network, rate, field, trials, seed), whatever the thread
/// count.
struct TrialReport {
  std::string network;
  RateVector rate;
  std::string field;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> sink_names;
  std::vector<std::uint64_t> sink_successes;
  std::uint64_t overall_successes = 0;  // all sinks in the same trial
};

/// Trial k draws its coefficients from RngStream::derive(seed, k).
/// Throws InvalidArgument when trials == 0.
TrialReport monte_carlo(const NetworkSpec& spec, const RateVector& rate,
                        const Field& field, std::uint64_t trials,
                        std::uint64_t seed, unsigned threads = 1);

/// Reduced fraction.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Fraction reduced(std::uint64_t num, std::uint64_t den);
  double value() const { return static_cast<double>(num) / den; }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Exact success probability, enumerating every coefficient tuple.
struct ExactProbability {
  std::string network;
  RateVector rate;
  std::string field;
  std::size_t slots = 0;
  std::uint64_t tuple_count = 0;  // q^slots
  std::vector<std::string> sink_names;
  std::vector<std::uint64_t> sink_successes;
  std::uint64_t overall_successes = 0;

  Fraction sink_probability(std::size_t k) const {
    return Fraction::reduced(sink_successes.at(k), tuple_count);
  }
  Fraction overall_probability() const {
    return Fraction::reduced(overall_successes, tuple_count);
  }
};

/// Largest q^slots that brute_force and existence_search accept.
inline constexpr double kTupleGuard = 1e7;

/// q^slots for this instance, as a double so oversized requests can be
/// reported without overflow.
double tuple_count(const NetworkSpec& spec, const RateVector& rate,
                   const Field& field);

/// Throws GuardExceeded above kTupleGuard.
ExactProbability brute_force(const NetworkSpec& spec, const RateVector& rate,
                             const Field& field, unsigned threads = 1);

using SweepTable = std::vector<TrialReport>;

/// One monte_carlo row per field, same seed for every row.  Fields must be
/// given in strictly increasing order.
SweepTable field_sweep(const NetworkSpec& spec, const RateVector& rate,
                       std::span<const Field> fields, std::uint64_t trials,
                       std::uint64_t seed, unsigned threads = 1);

/// First coefficient mapping, in lexicographic order over
/// coding::coefficient_slots, under which every sink decodes.
std::optional<CoefficientMap> existence_search(const NetworkSpec& spec,
                                               const RateVector& rate,
                                               const Field& field);

inline constexpr const char* kCsvHeader =
    "network,rate,field,trials,seed,sink,successes,success_rate";
inline constexpr const char* kExactCsvHeader =
    "network,rate,field,trials,seed,sink,successes,success_rate,numerator,"
    "denominator";

/// Header plus one row per sink and an "ALL" row per report.
void write_csv(std::ostream& out, std::span<const TrialReport> reports);
/// Same layout; trials is the tuple count, seed is empty, and the reduced
/// probability follows.
void write_exact_csv(std::ostream& out,
                     std::span<const ExactProbability> results);

}  // namespace rlnc::experiment
