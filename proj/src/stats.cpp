#include "rbn/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace rbn {

const SchemeStats& StatsSummary::at(Scheme scheme) const {
  for (const auto& s : per_scheme) {
    if (s.scheme == scheme) return s;
  }
  throw std::out_of_range("scheme not in summary: " + std::string(label(scheme)));
}

const SchemeDivergence& DivergenceReport::at(Scheme scheme) const {
  for (const auto& s : per_scheme) {
    if (s.scheme == scheme) return s;
  }
  throw std::out_of_range("scheme not in report: " + std::string(label(scheme)));
}

Network ensemble_network(const EnsembleSpec& spec, std::size_t index) {
  RandomStream rng = RandomStream(spec.seed).derive({index, kGenerationTag});
  return generate_network(spec.n, spec.k, spec.p_max, rng, {spec.q_mode});
}

NetworkStats network_stats(const Network& net, Scheme scheme,
                           const SweepResult& sweep) {
  NetworkStats s;
  s.attractors = sweep.attractors.size();
  for (const auto& a : sweep.attractors) s.states_in_attractors += a.period();
  const double divisor = uses_clock(scheme) ? static_cast<double>(phase_modulus(net)) : 1.0;
  const double states = static_cast<double>(sweep.initial_states);
  s.normalized_states = static_cast<double>(s.states_in_attractors) / divisor;
  s.pct_states_in_attractors = 100.0 * s.normalized_states / states;
  s.pct_not_reaching = 100.0 * static_cast<double>(sweep.not_reaching) / states;
  return s;
}

StatsSummary run_ensemble(const EnsembleSpec& spec) {
  if (spec.sample_size == 0) {
    throw std::invalid_argument("run_ensemble: sample_size must be at least 1");
  }
  if (spec.k > spec.n) {
    throw std::invalid_argument("run_ensemble: k exceeds n");
  }
  if (spec.n > kExhaustiveLimit) {
    throw SizeLimitError("run_ensemble sweeps all 2^n initial states and is "
                         "limited to n <= 20");
  }
  const std::size_t schemes = spec.schemes.size();
  std::vector<NetworkStats> per_net(spec.sample_size * schemes);

  const RandomStream master(spec.seed);
  auto trial = [&](std::size_t index) {
    const Network net = ensemble_network(spec, index);
    for (std::size_t s = 0; s < schemes; ++s) {
      const Scheme scheme = spec.schemes[s];
      const RandomStream base = master.derive({index, scheme_tag(scheme)});
      per_net[index * schemes + s] =
          network_stats(net, scheme, heuristic_sweep(net, scheme, spec.search, base));
    }
  };

  const unsigned workers =
      std::max(1U, std::min<unsigned>(spec.jobs, static_cast<unsigned>(spec.sample_size)));
  if (workers == 1) {
    for (std::size_t i = 0; i < spec.sample_size; ++i) trial(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < spec.sample_size; i = next++) {
          try {
            trial(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Sums run in trial order so the result is independent of `jobs`.
  StatsSummary summary{spec.n, spec.k, spec.sample_size, {}};
  const double count = static_cast<double>(spec.sample_size);
  for (std::size_t s = 0; s < schemes; ++s) {
    double attractors = 0, pct = 0, normalized = 0, not_reaching = 0;
    for (std::size_t i = 0; i < spec.sample_size; ++i) {
      const NetworkStats& ns = per_net[i * schemes + s];
      attractors += static_cast<double>(ns.attractors);
      pct += ns.pct_states_in_attractors;
      normalized += ns.normalized_states;
      not_reaching += ns.pct_not_reaching;
    }
    summary.per_scheme.push_back({spec.schemes[s], attractors / count, pct / count,
                                  normalized / count, not_reaching / count});
  }
  return summary;
}

double normalized_states_in_attractors(const Network& net, Scheme scheme,
                                       std::span<const Attractor> attractors) {
  std::uint64_t total = 0;
  for (const auto& a : attractors) total += a.period();
  const std::uint64_t divisor = uses_clock(scheme) ? phase_modulus(net) : 1;
  return static_cast<double>(total) / static_cast<double>(divisor);
}

boost::multiprecision::cpp_int possible_network_count(std::size_t n, std::size_t k) {
  if (n == 0) throw std::invalid_argument("possible_network_count: n must be >= 1");
  if (k > n) throw std::invalid_argument("possible_network_count: k must not exceed n");
  // Keep the exponent n * 2^k below 2^24 bits.
  if (k > 24 || (static_cast<std::uint64_t>(n) << k) > (std::uint64_t{1} << 24)) {
    throw SizeLimitError("possible_network_count: 2^(n*2^k) is too large to expand");
  }
  boost::multiprecision::cpp_int value = 1;
  value <<= static_cast<unsigned>(n << k);
  return value;
}

std::string format_count(const boost::multiprecision::cpp_int& value, int significant) {
  const std::string digits = value.str();
  if (digits.size() <= 8 || significant < 1) return digits;
  const auto sig = static_cast<std::size_t>(significant);
  std::string mantissa = digits.substr(0, sig);
  int exponent = static_cast<int>(digits.size()) - 1;
  if (digits.size() > sig && digits[sig] >= '5') {
    // Round half up, carrying leftwards.
    std::size_t i = sig;
    while (i-- > 0) {
      if (mantissa[i] == '9') {
        mantissa[i] = '0';
      } else {
        ++mantissa[i];
        break;
      }
    }
    if (mantissa.front() == '0') {
      mantissa.insert(mantissa.begin(), '1');
      mantissa.pop_back();
      ++exponent;
    }
  }
  std::ostringstream out;
  out << mantissa.front();
  if (sig > 1) out << '.' << mantissa.substr(1);
  out << "E+" << std::setw(2) << std::setfill('0') << exponent;
  return out.str();
}

Spread spread_of(std::span<const double> values) {
  Spread s;
  if (values.empty()) return s;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (s.mean > 0.0) {
    s.max_vs_mean_pct = 100.0 * (s.max - s.mean) / s.mean;
    s.max_vs_min_pct = 100.0 * (s.max - s.min) / s.mean;
    s.max_abs_dev_pct = 100.0 * std::max(s.max - s.mean, s.mean - s.min) / s.mean;
  }
  return s;
}

DivergenceReport sample_divergence(const EnsembleSpec& spec,
                                   std::span<const std::uint64_t> seeds) {
  if (seeds.size() < 2) {
    throw std::invalid_argument("sample_divergence needs at least two samples");
  }
  DivergenceReport report;
  report.seeds.assign(seeds.begin(), seeds.end());
  for (std::uint64_t seed : seeds) {
    EnsembleSpec sample = spec;
    sample.seed = seed;
    report.samples.push_back(run_ensemble(sample));
  }
  for (Scheme scheme : spec.schemes) {
    std::vector<double> att, pct, norm, miss;
    for (const auto& summary : report.samples) {
      const SchemeStats& s = summary.at(scheme);
      att.push_back(s.mean_attractors);
      pct.push_back(s.pct_states_in_attractors);
      norm.push_back(s.normalized_states);
      miss.push_back(s.pct_not_reaching);
    }
    report.per_scheme.push_back(
        {scheme, spread_of(att), spread_of(pct), spread_of(norm), spread_of(miss)});
  }
  return report;
}

DivergenceReport sample_divergence(const EnsembleSpec& spec, std::size_t num_samples) {
  std::vector<std::uint64_t> seeds;
  const RandomStream master(spec.seed);
  for (std::size_t i = 0; i < num_samples; ++i) {
    seeds.push_back(master.derive({0xD1u, i}).seed());
  }
  return sample_divergence(spec, seeds);
}

void write_csv(std::ostream& out, std::span<const StatsSummary> summaries) {
  out << kCsvHeader << '\n';
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (const auto& summary : summaries) {
    for (const auto& s : summary.per_scheme) {
      out << label(s.scheme) << ',' << summary.n << ',' << summary.k << ','
          << s.mean_attractors << ',' << s.pct_states_in_attractors << ','
          << s.normalized_states << ',' << s.pct_not_reaching << '\n';
    }
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace rbn
