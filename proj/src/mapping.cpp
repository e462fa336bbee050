#include "rbn/mapping.hpp"

#include <algorithm>
#include <bit>

namespace rbn {

namespace {

std::size_t clock_bits(std::uint64_t modulus) {
  return modulus <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(modulus - 1));
}

}  // namespace

MappingResult map_to_crbn(const Network& net, Scheme scheme,
                          MappingOptions options) {
  if (!uses_clock(scheme)) {
    throw std::invalid_argument("map_to_crbn maps DARBN or DGARBN networks, got " +
                                std::string(label(scheme)));
  }
  const std::uint64_t modulus = phase_modulus(net);
  const std::size_t n = net.n();
  const std::size_t m = clock_bits(modulus);
  const std::size_t total = n + m;
  if (total > kExhaustiveLimit) {
    throw SizeLimitError("mapped network would have " + std::to_string(total) +
                         " nodes; tabulation is limited to 20");
  }

  // Full successor function of the mapped network over 2^(n+m) codes. The
  // clock occupies the low m bits, so code = (state << m) | clock.
  const std::uint64_t size = std::uint64_t{1} << total;
  const std::uint64_t clock_mask = (std::uint64_t{1} << m) - 1;
  std::vector<std::uint32_t> next(size);
  for (std::uint64_t code = 0; code < size; ++code) {
    const std::uint64_t state = code >> m;
    const std::uint64_t clock = code & clock_mask;
    if (clock < modulus) {
      const std::uint64_t stepped = step_code(net, state, scheme, clock);
      next[code] = static_cast<std::uint32_t>((stepped << m) | ((clock + 1) % modulus));
    } else {
      next[code] = static_cast<std::uint32_t>(state << m);
    }
  }

  auto bit_of = [total](std::uint64_t code, std::size_t node) {
    return (code >> (total - 1 - node)) & 1U;
  };

  std::vector<std::vector<std::uint32_t>> deps(total);
  for (std::size_t j = 0; j < total; ++j) {
    for (std::size_t x = 0; x < total; ++x) {
      const std::uint64_t flip = std::uint64_t{1} << (total - 1 - x);
      for (std::uint64_t code = 0; code < size; ++code) {
        if ((code & flip) != 0) continue;
        if (bit_of(next[code], j) != bit_of(next[code | flip], j)) {
          deps[j].push_back(static_cast<std::uint32_t>(x));
          break;
        }
      }
    }
  }
  std::size_t max_deps = 0;
  for (const auto& d : deps) max_deps = std::max(max_deps, d.size());
  const std::size_t k = options.full_inputs ? total : max_deps;

  std::vector<std::uint32_t> inputs;
  std::vector<std::uint8_t> tables;
  inputs.reserve(total * k);
  tables.reserve(total << k);
  for (std::size_t j = 0; j < total; ++j) {
    // Pad with the lowest-indexed nodes the function ignores.
    std::vector<std::uint32_t> in = deps[j];
    for (std::uint32_t x = 0; in.size() < k; ++x) {
      if (std::find(deps[j].begin(), deps[j].end(), x) == deps[j].end()) {
        in.push_back(x);
      }
    }
    std::sort(in.begin(), in.end());
    for (std::size_t idx = 0; idx < (std::size_t{1} << k); ++idx) {
      std::uint64_t code = 0;
      for (std::size_t b = 0; b < k; ++b) {
        if ((idx >> (k - 1 - b)) & 1U) code |= std::uint64_t{1} << (total - 1 - in[b]);
      }
      tables.push_back(static_cast<std::uint8_t>(bit_of(next[code], j)));
    }
    inputs.insert(inputs.end(), in.begin(), in.end());
  }

  MappingResult result{
      Network(total, k, std::move(inputs), std::move(tables),
              std::vector<std::uint32_t>(total, 1), std::vector<std::uint32_t>(total, 0)),
      scheme, modulus, m, {}, max_deps};
  for (std::size_t c = 0; c < m; ++c) result.clock_positions.push_back(n + c);
  return result;
}

MappingReport verify_mapping(const Network& original, Scheme scheme,
                             const MappingResult& result, std::uint64_t horizon) {
  require_exhaustive(original, "verify_mapping");
  const std::size_t n = original.n();
  const std::size_t m = result.m;
  if (result.mapped.n() != n + m) {
    throw std::invalid_argument("mapping result does not match the original network");
  }
  MappingReport report;
  report.horizon = horizon;
  report.m = m;
  report.convention = result.convention;
  report.initial_states = std::uint64_t{1} << n;

  for (std::uint64_t s0 = 0; s0 < report.initial_states; ++s0) {
    std::uint64_t orig = s0;
    std::uint64_t mapped = s0 << m;
    for (std::uint64_t t = 0; t < horizon; ++t) {
      orig = step_code(original, orig, scheme, t);
      mapped = step_code(result.mapped, mapped, Scheme::crbn, 0);
      if ((mapped >> m) != orig) {
        report.equivalent = false;
        report.first_divergence = MappingDivergence{
            NetState(n, s0), t + 1, NetState(n, orig), NetState(n, mapped >> m)};
        return report;
      }
    }
  }
  return report;
}

std::vector<std::pair<NetState, NetState>> crbn_transition_table(const Network& net) {
  require_exhaustive(net, "crbn_transition_table");
  std::vector<std::pair<NetState, NetState>> rows;
  const std::uint64_t total = std::uint64_t{1} << net.n();
  rows.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    rows.emplace_back(NetState(net.n(), code),
                      NetState(net.n(), step_code(net, code, Scheme::crbn, 0)));
  }
  return rows;
}

}  // namespace rbn
