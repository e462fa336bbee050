#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "rbn/network.hpp"

namespace rbn {

// Network state paired with the clock phase t mod phase_modulus. For CRBN,
// ARBN and GARBN the phase is always 0.
struct ExtendedState {
  NetState state;
  std::uint64_t phase = 0;

  auto operator<=>(const ExtendedState&) const = default;
};

enum class AttractorKind { point, cycle };

std::string_view to_string(AttractorKind kind) noexcept;

struct Attractor {
  AttractorKind kind = AttractorKind::cycle;
  // One period of the cycle, rotated so the smallest element comes first.
  std::vector<ExtendedState> states;
  // Number of phase-0 initial states that led here, when known.
  std::optional<std::uint64_t> basin_size;

  std::size_t period() const noexcept { return states.size(); }
  // Distinct plain states on the cycle, ascending.
  std::vector<NetState> projected_states() const;

  // Identity ignores the basin size.
  bool operator==(const Attractor& other) const {
    return kind == other.kind && states == other.states;
  }
};

// Builds an attractor from one period of a cycle in trajectory order:
// rotates to canonical form and classifies it.
Attractor make_attractor(const Network& net, std::vector<ExtendedState> cycle);

// Parameters of the fixed-horizon search used in the ensemble experiments.
// Periods strictly below the max_period bounds are detected.
struct SearchParams {
  std::size_t transient = 10000;
  std::size_t max_period_crbn = 50;
  std::size_t max_period_det = 200;
  std::size_t point_window = 50;

  std::size_t period_bound(Scheme scheme) const noexcept {
    return scheme == Scheme::crbn ? max_period_crbn : max_period_det;
  }
};

bool is_point_attractor(const Network& net, const NetState& state);

// Exact set of fixed points by sweeping all 2^n states, ascending.
std::vector<NetState> enumerate_point_attractors(const Network& net);

// Follows the extended-state trajectory from (start, phase 0) with a hash of
// visited states and returns the first cycle it closes.
Attractor find_attractor_exact(const Network& net, Scheme scheme,
                               const NetState& start);

// All attractors reached from phase-0 initial states (deterministic schemes,
// with basin sizes) or the point attractors (non-deterministic schemes).
// Sorted by canonical states.
std::vector<Attractor> enumerate_attractors(const Network& net, Scheme scheme);

// Runs the transient, then looks for a repeating extended state with period
// below the scheme's bound (deterministic schemes), or for a state constant
// over the point window (non-deterministic schemes). Empty when nothing is
// detected.
std::optional<Attractor> heuristic_search(const Network& net, Scheme scheme,
                                          const NetState& start,
                                          const SearchParams& params,
                                          RandomStream* rng = nullptr);

// Successor graph of a deterministic scheme over all (state, phase) pairs,
// decomposed into cycles and in-trees. Node id = phase * 2^n + state code.
class ExtendedGraph {
 public:
  ExtendedGraph(const Network& net, Scheme scheme);

  std::uint64_t phase_modulus() const noexcept { return modulus_; }
  std::uint64_t state_count() const noexcept { return states_; }
  std::size_t node_count() const noexcept { return successor_.size(); }

  std::uint32_t node(std::uint64_t code, std::uint64_t phase) const noexcept {
    return static_cast<std::uint32_t>(phase * states_ + code);
  }
  ExtendedState extended(std::uint32_t node) const;

  std::uint32_t successor(std::uint32_t node) const noexcept {
    return successor_[node];
  }
  std::uint32_t cycle_of(std::uint32_t node) const noexcept {
    return cycle_id_[node];
  }
  std::uint32_t distance_to_cycle(std::uint32_t node) const noexcept {
    return distance_[node];
  }
  // Cycles in trajectory order.
  const std::vector<std::vector<std::uint32_t>>& cycles() const noexcept {
    return cycles_;
  }

  Attractor attractor(std::uint32_t cycle) const;

 private:
  Network net_;
  std::uint64_t modulus_;
  std::uint64_t states_;
  std::vector<std::uint32_t> successor_;
  std::vector<std::uint32_t> cycle_id_;
  std::vector<std::uint32_t> distance_;
  std::vector<std::vector<std::uint32_t>> cycles_;
};

// Heuristic search from every phase-0 initial state, merged.
struct SweepResult {
  // Distinct detected attractors; basin_size counts the initial states that
  // detected each one.
  std::vector<Attractor> attractors;
  std::uint64_t initial_states = 0;
  std::uint64_t not_reaching = 0;
};

// Same outcome as calling heuristic_search on every initial state s with
// the stream base.derive(s.code()), computed without simulating the full
// horizon where the result is already determined. base is ignored for
// deterministic schemes.
SweepResult heuristic_sweep(const Network& net, Scheme scheme,
                            const SearchParams& params,
                            const RandomStream& base);

}  // namespace rbn
