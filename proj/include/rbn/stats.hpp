#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rbn/attractors.hpp"
#include "rbn/network.hpp"

namespace rbn {

struct EnsembleSpec {
  std::size_t n = 4;
  std::size_t k = 2;
  std::uint32_t p_max = 4;
  TranslationMode q_mode = TranslationMode::zero;
  std::size_t sample_size = 1000;
  std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
  SearchParams search;
  std::uint64_t seed = 0;
  // Worker threads; results do not depend on it.
  unsigned jobs = 1;
};

// Per-network figures for one scheme.
struct NetworkStats {
  std::uint64_t attractors = 0;
  // Attractor states counted in extended (state, phase) space.
  std::uint64_t states_in_attractors = 0;
  double pct_states_in_attractors = 0.0;
  double normalized_states = 0.0;
  double pct_not_reaching = 0.0;
};

struct SchemeStats {
  Scheme scheme = Scheme::crbn;
  double mean_attractors = 0.0;
  double pct_states_in_attractors = 0.0;
  double normalized_states = 0.0;
  double pct_not_reaching = 0.0;

  bool operator==(const SchemeStats&) const = default;
};

struct StatsSummary {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t sample_size = 0;
  std::vector<SchemeStats> per_scheme;

  const SchemeStats& at(Scheme scheme) const;
  bool operator==(const StatsSummary&) const = default;
};

// Stream tags for deriving per-network streams from the master seed.
inline constexpr std::uint64_t kGenerationTag = 0x100;
constexpr std::uint64_t scheme_tag(Scheme s) noexcept {
  return static_cast<std::uint64_t>(s);
}

// The network drawn for trial `index` of an ensemble.
Network ensemble_network(const EnsembleSpec& spec, std::size_t index);

NetworkStats network_stats(const Network& net, Scheme scheme,
                           const SweepResult& sweep);

StatsSummary run_ensemble(const EnsembleSpec& spec);

// Attractor states divided by the extended-space factor phase_modulus
// (1 for CRBN, ARBN and GARBN).
double normalized_states_in_attractors(const Network& net, Scheme scheme,
                                       std::span<const Attractor> attractors);

// 2^(n * 2^k), the number of distinct rule assignments.
boost::multiprecision::cpp_int possible_network_count(std::size_t n, std::size_t k);

// Plain digits up to 8 digits, otherwise "d.ddE+XX" with the given number of
// significant digits (rounded half up).
std::string format_count(const boost::multiprecision::cpp_int& value,
                         int significant = 3);

struct Spread {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double max_vs_mean_pct = 0.0;
  // Both differences are taken relative to the mean.
  double max_vs_min_pct = 0.0;
  // Largest |x - mean| / mean over the samples, in percent.
  double max_abs_dev_pct = 0.0;
};

Spread spread_of(std::span<const double> values);

struct SchemeDivergence {
  Scheme scheme = Scheme::crbn;
  Spread attractors;
  Spread pct_states_in_attractors;
  Spread normalized_states;
  Spread pct_not_reaching;
};

struct DivergenceReport {
  std::vector<std::uint64_t> seeds;
  std::vector<StatsSummary> samples;
  std::vector<SchemeDivergence> per_scheme;

  const SchemeDivergence& at(Scheme scheme) const;
};

// Runs one ensemble per seed (spec.seed is replaced) and compares them.
DivergenceReport sample_divergence(const EnsembleSpec& spec,
                                   std::span<const std::uint64_t> seeds);
// Seeds derived from spec.seed, one per sample.
DivergenceReport sample_divergence(const EnsembleSpec& spec, std::size_t num_samples);

inline constexpr std::string_view kCsvHeader =
    "scheme,n,k,mean_attractors,pct_states_in_attractors,normalized_states,"
    "pct_not_reaching";

void write_csv(std::ostream& out, std::span<const StatsSummary> summaries);

}  // namespace rbn
