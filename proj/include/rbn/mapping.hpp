#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbn/network.hpp"

namespace rbn {

inline constexpr std::string_view kMappingConvention =
    "original nodes 0..n-1 keep their positions; clock nodes n..n+m-1 hold "
    "t mod phase_modulus in binary, most significant bit first; states are "
    "written node 0 leftmost; clock values >= phase_modulus reset to 0 and "
    "hold the original nodes";

struct MappingOptions {
  // Give every mapped node all n+m nodes as inputs instead of padding to the
  // largest actual dependency count.
  bool full_inputs = false;
};

struct MappingResult {
  Network mapped;
  Scheme scheme;
  std::uint64_t phase_modulus = 1;
  std::size_t m = 0;
  std::vector<std::size_t> clock_positions;
  // Largest number of nodes any mapped node actually depends on.
  std::size_t max_dependencies = 0;
  std::string convention{kMappingConvention};
};

// Classical (synchronous) network with m clock nodes that reproduces a
// DARBN or DGARBN from clock value 0. Built by tabulating one step of the
// original scheme for every (state, clock) pair.
MappingResult map_to_crbn(const Network& net, Scheme scheme,
                          MappingOptions options = {});

struct MappingDivergence {
  NetState initial;
  std::uint64_t step = 0;
  NetState original;
  NetState mapped;  // first n bits of the mapped state
};

struct MappingReport {
  bool equivalent = true;
  std::optional<MappingDivergence> first_divergence;
  std::uint64_t horizon = 0;
  std::uint64_t initial_states = 0;
  std::size_t m = 0;
  std::string convention;
};

// Co-simulates the original from (s0, t=0) and the mapped network from
// (s0, clock=0) for every s0 over `horizon` steps, comparing the first n bits.
MappingReport verify_mapping(const Network& original, Scheme scheme,
                             const MappingResult& result, std::uint64_t horizon);

// (state, successor) rows of the synchronous update for all 2^n states in
// ascending order.
std::vector<std::pair<NetState, NetState>> crbn_transition_table(const Network& net);

}  // namespace rbn
