#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rbn/random_stream.hpp"

namespace rbn {

// Largest n for operations that sweep all 2^n states.
inline constexpr std::size_t kExhaustiveLimit = 20;
// Largest n for simulation (states are packed into one 64-bit word).
inline constexpr std::size_t kSimulationLimit = 64;
// Largest k; a lookup table has 2^k entries.
inline constexpr std::size_t kMaxConnectivity = 20;

// Raised when an operation refuses a network that is too large for it.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Raised on malformed textual input (state strings, network files).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bit vector of node values. Node 0 is the leftmost character of the
// textual form and the most significant bit of code(), so ordering by code
// is lexicographic ordering of the bitstrings.
class NetState {
 public:
  NetState() = default;
  NetState(std::size_t n, std::uint64_t code);

  static NetState zeros(std::size_t n) { return NetState(n, 0); }
  static NetState parse(std::string_view bits);

  std::size_t size() const noexcept { return n_; }
  std::uint64_t code() const noexcept { return code_; }

  bool operator[](std::size_t node) const noexcept {
    return ((code_ >> (n_ - 1 - node)) & 1U) != 0;
  }
  void set(std::size_t node, bool value) noexcept;

  std::string to_string() const;

  auto operator<=>(const NetState&) const = default;

 private:
  std::uint32_t n_ = 0;
  std::uint64_t code_ = 0;
};

enum class Scheme { crbn, arbn, darbn, garbn, dgarbn };

inline constexpr Scheme kAllSchemes[] = {Scheme::crbn, Scheme::arbn,
                                         Scheme::darbn, Scheme::garbn,
                                         Scheme::dgarbn};

constexpr bool is_deterministic(Scheme s) noexcept {
  return s == Scheme::crbn || s == Scheme::darbn || s == Scheme::dgarbn;
}

// Schemes whose node updates follow the per-node period/translation clock.
constexpr bool uses_clock(Scheme s) noexcept {
  return s == Scheme::darbn || s == Scheme::dgarbn;
}

std::string_view to_string(Scheme s) noexcept;
// Upper-case label as used in reports, e.g. "DGARBN".
std::string_view label(Scheme s) noexcept;
// Accepts either case; throws std::invalid_argument on an unknown name.
Scheme parse_scheme(std::string_view name);

// Homogeneous Boolean network: n nodes, each reading k inputs through a
// 2^k-entry lookup table, and updated on the clock t mod period == translation
// under the deterministic non-synchronous schemes.
class Network {
 public:
  Network(std::size_t n, std::size_t k, std::vector<std::uint32_t> inputs,
          std::vector<std::uint8_t> tables, std::vector<std::uint32_t> periods,
          std::vector<std::uint32_t> translations);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t table_size() const noexcept { return std::size_t{1} << k_; }
  std::size_t rule_bits() const noexcept { return n_ * table_size(); }

  std::span<const std::uint32_t> inputs(std::size_t node) const noexcept {
    return {inputs_.data() + node * k_, k_};
  }
  std::span<const std::uint8_t> table(std::size_t node) const noexcept {
    return {tables_.data() + node * table_size(), table_size()};
  }
  std::uint32_t period(std::size_t node) const noexcept { return periods_[node]; }
  std::uint32_t translation(std::size_t node) const noexcept {
    return translations_[node];
  }
  std::span<const std::uint32_t> periods() const noexcept { return periods_; }
  std::span<const std::uint32_t> translations() const noexcept {
    return translations_;
  }

  // Lookup-table index for node given the packed state; the first listed
  // input is the most significant bit.
  std::size_t table_index(std::size_t node, std::uint64_t code) const noexcept {
    std::size_t idx = 0;
    const std::uint32_t* in = inputs_.data() + node * k_;
    for (std::size_t j = 0; j < k_; ++j) {
      idx = (idx << 1) | ((code >> (n_ - 1 - in[j])) & 1U);
    }
    return idx;
  }
  bool eval_code(std::size_t node, std::uint64_t code) const noexcept {
    return tables_[(node << k_) | table_index(node, code)] != 0;
  }

  void set_table_bit(std::size_t node, std::size_t index, bool value);

  bool operator==(const Network&) const = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<std::uint32_t> inputs_;
  std::vector<std::uint8_t> tables_;
  std::vector<std::uint32_t> periods_;
  std::vector<std::uint32_t> translations_;
};

enum class TranslationMode { zero, uniform };

struct GenerateOptions {
  TranslationMode translations = TranslationMode::zero;
};

Network generate_network(std::size_t n, std::size_t k, std::uint32_t p_max,
                         RandomStream& rng, GenerateOptions options = {});

bool eval_node(const Network& net, std::size_t node, const NetState& state);

// Nodes with t mod period == translation, ascending.
std::vector<std::size_t> scheduled_nodes(const Network& net, std::uint64_t t);

// LCM of all node periods. Throws SizeLimitError on 64-bit overflow.
std::uint64_t phase_modulus(const Network& net);

// One update of the network from time t to t+1. rng is required for ARBN
// and GARBN and ignored otherwise; t is only consulted by DARBN and DGARBN.
NetState step(const Network& net, const NetState& state, Scheme scheme,
              std::uint64_t t, RandomStream* rng = nullptr);

// Packed-code form of step(), used by the sweeps.
std::uint64_t step_code(const Network& net, std::uint64_t code, Scheme scheme,
                        std::uint64_t t, RandomStream* rng = nullptr);

// States s(0..steps) with s(0) = start and time starting at t0.
std::vector<NetState> trajectory(const Network& net, const NetState& start,
                                 Scheme scheme, std::size_t steps,
                                 RandomStream* rng = nullptr,
                                 std::uint64_t t0 = 0);

// Stepping for the command line and the service: step t draws from
// RandomStream(seed).derive(t), so a run equals the sequence of single seeded
// steps. seed is required for ARBN and GARBN.
NetState seeded_step(const Network& net, const NetState& state, Scheme scheme,
                     std::uint64_t t, std::optional<std::uint64_t> seed);
std::vector<NetState> seeded_trajectory(const Network& net, const NetState& start,
                                        Scheme scheme, std::size_t steps,
                                        std::optional<std::uint64_t> seed,
                                        std::uint64_t t0 = 0);

// Throws SizeLimitError when n exceeds the exhaustive limit.
void require_exhaustive(const Network& net, std::string_view operation);

}  // namespace rbn
