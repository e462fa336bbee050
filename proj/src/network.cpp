#include "rbn/network.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace rbn {

NetState::NetState(std::size_t n, std::uint64_t code)
    : n_(static_cast<std::uint32_t>(n)), code_(code) {
  if (n == 0 || n > kSimulationLimit) {
    throw SizeLimitError("state size must be in [1, 64], got " +
                         std::to_string(n));
  }
  if (n < 64 && (code >> n) != 0) {
    throw std::invalid_argument("state code has bits beyond n");
  }
}

NetState NetState::parse(std::string_view bits) {
  if (bits.empty()) {
    throw FormatError("empty state string");
  }
  if (bits.size() > kSimulationLimit) {
    throw SizeLimitError("state string longer than 64 nodes");
  }
  std::uint64_t code = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw FormatError("state string must contain only 0/1: '" +
                        std::string(bits) + "'");
    }
    code = (code << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return NetState(bits.size(), code);
}

void NetState::set(std::size_t node, bool value) noexcept {
  const std::uint64_t mask = std::uint64_t{1} << (n_ - 1 - node);
  code_ = value ? (code_ | mask) : (code_ & ~mask);
}

std::string NetState::to_string() const {
  std::string out(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::crbn: return "crbn";
    case Scheme::arbn: return "arbn";
    case Scheme::darbn: return "darbn";
    case Scheme::garbn: return "garbn";
    case Scheme::dgarbn: return "dgarbn";
  }
  return "?";
}

std::string_view label(Scheme s) noexcept {
  switch (s) {
    case Scheme::crbn: return "CRBN";
    case Scheme::arbn: return "ARBN";
    case Scheme::darbn: return "DARBN";
    case Scheme::garbn: return "GARBN";
    case Scheme::dgarbn: return "DGARBN";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Scheme s : kAllSchemes) {
    if (lower == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown updating scheme '" + std::string(name) +
                              "'");
}

Network::Network(std::size_t n, std::size_t k, std::vector<std::uint32_t> inputs,
                 std::vector<std::uint8_t> tables,
                 std::vector<std::uint32_t> periods,
                 std::vector<std::uint32_t> translations)
    : n_(n),
      k_(k),
      inputs_(std::move(inputs)),
      tables_(std::move(tables)),
      periods_(std::move(periods)),
      translations_(std::move(translations)) {
  if (n == 0) throw std::invalid_argument("network needs at least one node");
  if (n > kSimulationLimit) {
    throw SizeLimitError("network has " + std::to_string(n) +
                         " nodes; the limit is 64");
  }
  if (k > n) {
    throw std::invalid_argument("connectivity k=" + std::to_string(k) +
                                " exceeds n=" + std::to_string(n));
  }
  if (k > kMaxConnectivity) {
    throw SizeLimitError("connectivity k=" + std::to_string(k) +
                         " exceeds the lookup-table limit of 20");
  }
  if (inputs_.size() != n * k) {
    throw std::invalid_argument("expected n*k input indices");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t* in = inputs_.data() + i * k;
    for (std::size_t j = 0; j < k; ++j) {
      if (in[j] >= n) {
        throw std::invalid_argument("input index " + std::to_string(in[j]) +
                                    " out of range");
      }
      if (std::find(in, in + j, in[j]) != in + j) {
        throw std::invalid_argument("node " + std::to_string(i) +
                                    " lists input " + std::to_string(in[j]) + " twice");
      }
    }
  }
  if (tables_.size() != n * table_size()) {
    throw std::invalid_argument("expected n*2^k lookup-table bits");
  }
  for (std::uint8_t b : tables_) {
    if (b > 1) throw std::invalid_argument("lookup-table entries must be 0/1");
  }
  if (periods_.size() != n || translations_.size() != n) {
    throw std::invalid_argument("expected one period and translation per node");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (periods_[i] == 0) {
      throw std::invalid_argument("period must be at least 1");
    }
    if (translations_[i] >= periods_[i]) {
      throw std::invalid_argument("translation q must be below period p");
    }
  }
}

void Network::set_table_bit(std::size_t node, std::size_t index, bool value) {
  if (node >= n_ || index >= table_size()) {
    throw std::out_of_range("table bit out of range");
  }
  tables_[(node << k_) | index] = value ? 1 : 0;
}

Network generate_network(std::size_t n, std::size_t k, std::uint32_t p_max,
                         RandomStream& rng, GenerateOptions options) {
  if (n == 0) throw std::invalid_argument("generate_network: n must be >= 1");
  if (k > n) {
    throw std::invalid_argument("generate_network: k=" + std::to_string(k) +
                                " exceeds n=" + std::to_string(n));
  }
  if (p_max == 0) throw std::invalid_argument("generate_network: p_max must be >= 1");
  if (k > kMaxConnectivity) {
    throw SizeLimitError("generate_network: k above lookup-table limit");
  }

  std::vector<std::uint32_t> inputs;
  inputs.reserve(n * k);
  std::vector<std::uint32_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(pool.begin(), pool.end(), 0U);
    // Partial Fisher-Yates: the first k slots are a draw without replacement.
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t pick = j + rng.uniform_below(n - j);
      std::swap(pool[j], pool[pick]);
      inputs.push_back(pool[j]);
    }
  }

  const std::size_t table_size = std::size_t{1} << k;
  std::vector<std::uint8_t> tables(n * table_size);
  for (auto& bit : tables) bit = rng.coin() ? 1 : 0;

  std::vector<std::uint32_t> periods(n);
  std::vector<std::uint32_t> translations(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    periods[i] = static_cast<std::uint32_t>(rng.uniform_between(1, p_max));
  }
  if (options.translations == TranslationMode::uniform) {
    for (std::size_t i = 0; i < n; ++i) {
      translations[i] = static_cast<std::uint32_t>(rng.uniform_below(periods[i]));
    }
  }
  return Network(n, k, std::move(inputs), std::move(tables), std::move(periods),
                 std::move(translations));
}

bool eval_node(const Network& net, std::size_t node, const NetState& state) {
  if (node >= net.n()) throw std::out_of_range("eval_node: node out of range");
  if (state.size() != net.n()) {
    throw std::invalid_argument("eval_node: state length differs from n");
  }
  return net.eval_code(node, state.code());
}

std::vector<std::size_t> scheduled_nodes(const Network& net, std::uint64_t t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < net.n(); ++i) {
    if (t % net.period(i) == net.translation(i)) out.push_back(i);
  }
  return out;
}

std::uint64_t phase_modulus(const Network& net) {
  std::uint64_t lcm = 1;
  for (std::uint32_t p : net.periods()) {
    const std::uint64_t g = std::gcd(lcm, std::uint64_t{p});
    const std::uint64_t factor = p / g;
    if (lcm > UINT64_MAX / factor) {
      throw SizeLimitError("phase modulus overflows 64 bits");
    }
    lcm *= factor;
  }
  return lcm;
}

namespace {

inline std::uint64_t node_mask(std::size_t n, std::size_t node) noexcept {
  return std::uint64_t{1} << (n - 1 - node);
}

inline std::uint64_t all_mask(std::size_t n) noexcept {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Recompute every node in `mask` from the same source state.
std::uint64_t synchronous_update(const Network& net, std::uint64_t code,
                                 std::uint64_t mask) {
  const std::size_t n = net.n();
  std::uint64_t next = code & ~mask;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = node_mask(n, i);
    if ((mask & bit) != 0 && net.eval_code(i, code)) next |= bit;
  }
  return next;
}

}  // namespace

std::uint64_t step_code(const Network& net, std::uint64_t code, Scheme scheme,
                        std::uint64_t t, RandomStream* rng) {
  const std::size_t n = net.n();
  switch (scheme) {
    case Scheme::crbn:
      return synchronous_update(net, code, all_mask(n));
    case Scheme::arbn: {
      if (rng == nullptr) {
        throw std::invalid_argument("ARBN stepping requires a random stream");
      }
      const std::size_t node = rng->uniform_below(n);
      const std::uint64_t bit = node_mask(n, node);
      return net.eval_code(node, code) ? (code | bit) : (code & ~bit);
    }
    case Scheme::garbn: {
      if (rng == nullptr) {
        throw std::invalid_argument("GARBN stepping requires a random stream");
      }
      // One fair coin per node: the low n bits of a single draw.
      const std::uint64_t mask = rng->next_u64() & all_mask(n);
      return synchronous_update(net, code, mask);
    }
    case Scheme::darbn: {
      std::uint64_t cur = code;
      for (std::size_t i = 0; i < n; ++i) {
        if (t % net.period(i) != net.translation(i)) continue;
        const std::uint64_t bit = node_mask(n, i);
        cur = net.eval_code(i, cur) ? (cur | bit) : (cur & ~bit);
      }
      return cur;
    }
    case Scheme::dgarbn: {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (t % net.period(i) == net.translation(i)) mask |= node_mask(n, i);
      }
      return synchronous_update(net, code, mask);
    }
  }
  return code;
}

NetState step(const Network& net, const NetState& state, Scheme scheme,
              std::uint64_t t, RandomStream* rng) {
  if (state.size() != net.n()) {
    throw std::invalid_argument("step: state length differs from n");
  }
  return NetState(net.n(), step_code(net, state.code(), scheme, t, rng));
}

std::vector<NetState> trajectory(const Network& net, const NetState& start,
                                 Scheme scheme, std::size_t steps,
                                 RandomStream* rng, std::uint64_t t0) {
  if (start.size() != net.n()) {
    throw std::invalid_argument("trajectory: state length differs from n");
  }
  if (!is_deterministic(scheme) && rng == nullptr) {
    throw std::invalid_argument(std::string(label(scheme)) +
                                " trajectories require a random stream");
  }
  std::vector<NetState> out;
  out.reserve(steps + 1);
  out.push_back(start);
  std::uint64_t code = start.code();
  for (std::size_t s = 0; s < steps; ++s) {
    code = step_code(net, code, scheme, t0 + s, rng);
    out.emplace_back(net.n(), code);
  }
  return out;
}

NetState seeded_step(const Network& net, const NetState& state, Scheme scheme,
                     std::uint64_t t, std::optional<std::uint64_t> seed) {
  if (!seed) {
    if (!is_deterministic(scheme)) {
      throw std::invalid_argument(std::string(label(scheme)) + " stepping requires a seed");
    }
    return step(net, state, scheme, t);
  }
  RandomStream rng = RandomStream(*seed).derive(t);
  return step(net, state, scheme, t, &rng);
}

std::vector<NetState> seeded_trajectory(const Network& net, const NetState& start,
                                        Scheme scheme, std::size_t steps,
                                        std::optional<std::uint64_t> seed,
                                        std::uint64_t t0) {
  std::vector<NetState> out{start};
  out.reserve(steps + 1);
  for (std::size_t s = 0; s < steps; ++s) {
    out.push_back(seeded_step(net, out.back(), scheme, t0 + s, seed));
  }
  return out;
}

void require_exhaustive(const Network& net, std::string_view operation) {
  if (net.n() > kExhaustiveLimit) {
    throw SizeLimitError(std::string(operation) + " sweeps all 2^n states and " +
                         "is limited to n <= 20 (got n=" +
                         std::to_string(net.n()) + ")");
  }
}

}  // namespace rbn
