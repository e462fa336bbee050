#include "rbn/attractors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

namespace rbn {

namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kOnPath = kUnvisited - 1;

std::uint64_t clock_modulus(const Network& net, Scheme scheme) {
  return uses_clock(scheme) ? phase_modulus(net) : 1;
}

struct CodePhase {
  std::uint64_t code;
  std::uint64_t phase;
  bool operator==(const CodePhase&) const = default;
};

struct CodePhaseHash {
  std::size_t operator()(const CodePhase& k) const noexcept {
    return static_cast<std::size_t>(splitmix64(k.code ^ splitmix64(k.phase)));
  }
};

void require_deterministic(Scheme scheme, std::string_view operation) {
  if (!is_deterministic(scheme)) {
    throw std::invalid_argument(std::string(operation) +
                                " needs a deterministic scheme, got " +
                                std::string(label(scheme)));
  }
}

std::vector<Attractor> sorted(std::vector<Attractor> attractors) {
  std::sort(attractors.begin(), attractors.end(),
            [](const Attractor& a, const Attractor& b) { return a.states < b.states; });
  return attractors;
}

}  // namespace

std::string_view to_string(AttractorKind kind) noexcept {
  return kind == AttractorKind::point ? "point" : "cycle";
}

std::vector<NetState> Attractor::projected_states() const {
  std::vector<NetState> out;
  out.reserve(states.size());
  for (const auto& es : states) out.push_back(es.state);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Attractor make_attractor(const Network& net, std::vector<ExtendedState> cycle) {
  if (cycle.empty()) throw std::invalid_argument("empty attractor cycle");
  auto smallest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), smallest, cycle.end());
  Attractor a;
  a.states = std::move(cycle);
  const auto projected = a.projected_states();
  a.kind = (projected.size() == 1 && is_point_attractor(net, projected.front()))
               ? AttractorKind::point
               : AttractorKind::cycle;
  return a;
}

bool is_point_attractor(const Network& net, const NetState& state) {
  if (state.size() != net.n()) {
    throw std::invalid_argument("is_point_attractor: state length differs from n");
  }
  for (std::size_t i = 0; i < net.n(); ++i) {
    if (net.eval_code(i, state.code()) != state[i]) return false;
  }
  return true;
}

std::vector<NetState> enumerate_point_attractors(const Network& net) {
  require_exhaustive(net, "enumerate_point_attractors");
  std::vector<NetState> out;
  const std::uint64_t total = std::uint64_t{1} << net.n();
  for (std::uint64_t code = 0; code < total; ++code) {
    if (step_code(net, code, Scheme::crbn, 0) == code) {
      out.emplace_back(net.n(), code);
    }
  }
  return out;
}

Attractor find_attractor_exact(const Network& net, Scheme scheme,
                               const NetState& start) {
  require_deterministic(scheme, "find_attractor_exact");
  if (start.size() != net.n()) {
    throw std::invalid_argument("find_attractor_exact: state length differs from n");
  }
  const std::uint64_t modulus = clock_modulus(net, scheme);
  std::unordered_map<CodePhase, std::size_t, CodePhaseHash> seen;
  std::vector<CodePhase> path;
  CodePhase cur{start.code(), 0};
  while (true) {
    auto [it, inserted] = seen.emplace(cur, path.size());
    if (!inserted) break;
    path.push_back(cur);
    cur = {step_code(net, cur.code, scheme, cur.phase), (cur.phase + 1) % modulus};
  }
  std::vector<ExtendedState> cycle;
  for (std::size_t i = seen.at(cur); i < path.size(); ++i) {
    cycle.push_back({NetState(net.n(), path[i].code), path[i].phase});
  }
  return make_attractor(net, std::move(cycle));
}

ExtendedGraph::ExtendedGraph(const Network& net, Scheme scheme)
    : net_(net), modulus_(1), states_(0) {
  require_deterministic(scheme, "ExtendedGraph");
  require_exhaustive(net, "ExtendedGraph");
  modulus_ = clock_modulus(net, scheme);
  states_ = std::uint64_t{1} << net.n();
  if (modulus_ > (std::uint64_t{1} << 31) / states_) {
    throw SizeLimitError("extended state space (phase modulus * 2^n) exceeds 2^31");
  }
  const std::uint64_t total = modulus_ * states_;
  successor_.resize(total);
  for (std::uint64_t phase = 0; phase < modulus_; ++phase) {
    const std::uint64_t next_phase = (phase + 1) % modulus_;
    for (std::uint64_t code = 0; code < states_; ++code) {
      successor_[node(code, phase)] =
          node(step_code(net, code, scheme, phase), next_phase);
    }
  }

  cycle_id_.assign(total, kUnvisited);
  distance_.assign(total, 0);
  std::vector<std::uint32_t> path;
  for (std::uint32_t start = 0; start < total; ++start) {
    if (cycle_id_[start] != kUnvisited) continue;
    path.clear();
    std::uint32_t v = start;
    while (cycle_id_[v] == kUnvisited) {
      cycle_id_[v] = kOnPath;
      path.push_back(v);
      v = successor_[v];
    }
    std::size_t tail_end = path.size();
    if (cycle_id_[v] == kOnPath) {
      // Closed a new cycle: the path suffix starting at v.
      const auto first = std::find(path.begin(), path.end(), v);
      const auto id = static_cast<std::uint32_t>(cycles_.size());
      cycles_.emplace_back(first, path.end());
      for (auto it = first; it != path.end(); ++it) {
        cycle_id_[*it] = id;
        distance_[*it] = 0;
      }
      tail_end = static_cast<std::size_t>(first - path.begin());
    }
    for (std::size_t i = tail_end; i-- > 0;) {
      const std::uint32_t next = successor_[path[i]];
      cycle_id_[path[i]] = cycle_id_[next];
      distance_[path[i]] = distance_[next] + 1;
    }
  }
}

ExtendedState ExtendedGraph::extended(std::uint32_t node) const {
  return {NetState(net_.n(), node % states_), node / states_};
}

Attractor ExtendedGraph::attractor(std::uint32_t cycle) const {
  std::vector<ExtendedState> states;
  states.reserve(cycles_.at(cycle).size());
  for (std::uint32_t v : cycles_[cycle]) states.push_back(extended(v));
  return make_attractor(net_, std::move(states));
}

std::vector<Attractor> enumerate_attractors(const Network& net, Scheme scheme) {
  require_exhaustive(net, "enumerate_attractors");
  std::vector<Attractor> out;
  if (!is_deterministic(scheme)) {
    for (const NetState& s : enumerate_point_attractors(net)) {
      out.push_back(make_attractor(net, {{s, 0}}));
    }
    return out;
  }
  const ExtendedGraph graph(net, scheme);
  std::map<std::uint32_t, std::uint64_t> basins;
  for (std::uint64_t code = 0; code < graph.state_count(); ++code) {
    ++basins[graph.cycle_of(graph.node(code, 0))];
  }
  for (const auto& [cycle, basin] : basins) {
    Attractor a = graph.attractor(cycle);
    a.basin_size = basin;
    out.push_back(std::move(a));
  }
  return sorted(std::move(out));
}

std::optional<Attractor> heuristic_search(const Network& net, Scheme scheme,
                                          const NetState& start,
                                          const SearchParams& params,
                                          RandomStream* rng) {
  if (start.size() != net.n()) {
    throw std::invalid_argument("heuristic_search: state length differs from n");
  }
  if (!is_deterministic(scheme) && rng == nullptr) {
    throw std::invalid_argument(std::string(label(scheme)) +
                                " search requires a random stream");
  }
  const std::uint64_t modulus = clock_modulus(net, scheme);
  std::uint64_t code = start.code();
  std::uint64_t t = 0;
  for (; t < params.transient; ++t) code = step_code(net, code, scheme, t, rng);

  if (!is_deterministic(scheme)) {
    std::uint64_t probe = code;
    for (std::size_t w = 0; w < params.point_window; ++w) {
      probe = step_code(net, probe, scheme, t + w, rng);
      if (probe != code) return std::nullopt;
    }
    return make_attractor(net, {{NetState(net.n(), code), 0}});
  }

  // Window s(T .. T + 2*(bound-1)) covers every candidate period below bound.
  const std::size_t bound = params.period_bound(scheme);
  if (bound < 2) return std::nullopt;
  std::vector<std::uint64_t> window;
  window.reserve(2 * bound);
  window.push_back(code);
  for (std::size_t i = 1; i < 2 * (bound - 1); ++i) {
    code = step_code(net, code, scheme, t + i - 1, rng);
    window.push_back(code);
  }
  for (std::size_t period = 1; period < bound; ++period) {
    if (period % modulus != 0) continue;  // phases must match too
    bool repeats = true;
    for (std::size_t i = 0; i < period && repeats; ++i) {
      repeats = window[i] == window[i + period];
    }
    if (!repeats) continue;
    std::vector<ExtendedState> cycle;
    for (std::size_t i = 0; i < period; ++i) {
      cycle.push_back({NetState(net.n(), window[i]), (t + i) % modulus});
    }
    return make_attractor(net, std::move(cycle));
  }
  return std::nullopt;
}

SweepResult heuristic_sweep(const Network& net, Scheme scheme,
                            const SearchParams& params,
                            const RandomStream& base) {
  require_exhaustive(net, "heuristic_sweep");
  SweepResult result;
  const std::uint64_t total = std::uint64_t{1} << net.n();
  result.initial_states = total;

  if (is_deterministic(scheme)) {
    const ExtendedGraph graph(net, scheme);
    const std::size_t bound = params.period_bound(scheme);
    std::map<std::uint32_t, std::uint64_t> basins;
    for (std::uint64_t code = 0; code < total; ++code) {
      const std::uint32_t v = graph.node(code, 0);
      const std::uint32_t cycle = graph.cycle_of(v);
      if (graph.distance_to_cycle(v) <= params.transient &&
          graph.cycles()[cycle].size() < bound) {
        ++basins[cycle];
      } else {
        ++result.not_reaching;
      }
    }
    for (const auto& [cycle, basin] : basins) {
      Attractor a = graph.attractor(cycle);
      a.basin_size = basin;
      result.attractors.push_back(std::move(a));
    }
    result.attractors = sorted(std::move(result.attractors));
    return result;
  }

  std::vector<std::uint8_t> fixed(total, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    fixed[code] = step_code(net, code, Scheme::crbn, 0) == code ? 1 : 0;
  }
  std::map<std::uint64_t, std::uint64_t> detected;
  for (std::uint64_t start = 0; start < total; ++start) {
    RandomStream rng = base.derive(start);
    std::uint64_t code = start;
    std::uint64_t t = 0;
    // A fixed point reached within the transient stays put through the window.
    while (t < params.transient && fixed[code] == 0) {
      code = step_code(net, code, scheme, t, &rng);
      ++t;
    }
    bool constant = true;
    if (fixed[code] == 0) {
      t = params.transient;
      std::uint64_t probe = code;
      for (std::size_t w = 0; w < params.point_window && constant; ++w) {
        probe = step_code(net, probe, scheme, t + w, &rng);
        constant = probe == code;
      }
    }
    if (constant) {
      ++detected[code];
    } else {
      ++result.not_reaching;
    }
  }
  for (const auto& [code, basin] : detected) {
    Attractor a = make_attractor(net, {{NetState(net.n(), code), 0}});
    a.basin_size = basin;
    result.attractors.push_back(std::move(a));
  }
  result.attractors = sorted(std::move(result.attractors));
  return result;
}

}  // namespace rbn
