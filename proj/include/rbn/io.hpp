#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "rbn/attractors.hpp"
#include "rbn/mapping.hpp"
#include "rbn/network.hpp"
#include "rbn/stats.hpp"

namespace rbn {

using Json = nlohmann::ordered_json;

inline constexpr int kNetworkFormatVersion = 1;

// Network document:
//   {version, n, k, inputs: n x k indices, tables: n bitstrings of length 2^k
//    (index 0 leftmost), p: n periods, q: n translations}
Json network_to_json(const Network& net);
Network network_from_json(const Json& doc);

// Canonical text form; save -> load -> save is byte-identical.
std::string write_network(const Network& net);
Network read_network(std::string_view text);

Network load_network(const std::filesystem::path& path);
void save_network(const std::filesystem::path& path, const Network& net);

Json attractor_to_json(const Attractor& attractor);
Json attractors_to_json(const Network& net, Scheme scheme,
                        std::span<const Attractor> attractors);
Json sweep_to_json(const Network& net, Scheme scheme, const SweepResult& sweep);

Json mapping_to_json(const MappingResult& result);
Json mapping_report_to_json(const MappingReport& report);

Json ensemble_manifest(const EnsembleSpec& spec);
Json summary_to_json(const StatsSummary& summary);
Json divergence_to_json(const DivergenceReport& report);

}  // namespace rbn
