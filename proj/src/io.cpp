#include "rbn/io.hpp"

#include <fstream>
#include <sstream>

namespace rbn {

namespace {

std::string bitstring(std::span<const std::uint8_t> bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) out[i] = '1';
  }
  return out;
}

template <typename T>
T require_field(const Json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw FormatError(std::string("network document is missing '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("network field '") + key + "': " + e.what());
  }
}

Json extended_to_json(const ExtendedState& es) {
  return Json{{"state", es.state.to_string()}, {"phase", es.phase}};
}

}  // namespace

Json network_to_json(const Network& net) {
  Json inputs = Json::array();
  Json tables = Json::array();
  for (std::size_t i = 0; i < net.n(); ++i) {
    inputs.push_back(std::vector<std::uint32_t>(net.inputs(i).begin(), net.inputs(i).end()));
    tables.push_back(bitstring(net.table(i)));
  }
  Json doc;
  doc["version"] = kNetworkFormatVersion;
  doc["n"] = net.n();
  doc["k"] = net.k();
  doc["inputs"] = std::move(inputs);
  doc["tables"] = std::move(tables);
  doc["p"] = std::vector<std::uint32_t>(net.periods().begin(), net.periods().end());
  doc["q"] = std::vector<std::uint32_t>(net.translations().begin(), net.translations().end());
  return doc;
}

Network network_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("network document must be a JSON object");
  const auto version = require_field<int>(doc, "version");
  if (version != kNetworkFormatVersion) {
    throw FormatError("unsupported network format version " + std::to_string(version));
  }
  const auto n = require_field<std::size_t>(doc, "n");
  const auto k = require_field<std::size_t>(doc, "k");
  const auto inputs = require_field<std::vector<std::vector<std::uint32_t>>>(doc, "inputs");
  const auto tables = require_field<std::vector<std::string>>(doc, "tables");
  auto periods = require_field<std::vector<std::uint32_t>>(doc, "p");
  auto translations = require_field<std::vector<std::uint32_t>>(doc, "q");

  if (inputs.size() != n || tables.size() != n) {
    throw FormatError("network document needs one input list and one table per node");
  }
  if (k > kMaxConnectivity) {
    throw SizeLimitError("connectivity k=" + std::to_string(k) +
                         " exceeds the lookup-table limit of 20");
  }
  std::vector<std::uint32_t> flat_inputs;
  std::vector<std::uint8_t> flat_tables;
  for (std::size_t i = 0; i < n; ++i) {
    if (inputs[i].size() != k) {
      throw FormatError("node " + std::to_string(i) + " must list exactly k inputs");
    }
    flat_inputs.insert(flat_inputs.end(), inputs[i].begin(), inputs[i].end());
    if (tables[i].size() != (std::size_t{1} << k)) {
      throw FormatError("node " + std::to_string(i) + " table must have 2^k bits");
    }
    for (char c : tables[i]) {
      if (c != '0' && c != '1') {
        throw FormatError("node " + std::to_string(i) + " table must be a bitstring");
      }
      flat_tables.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  }
  try {
    return Network(n, k, std::move(flat_inputs), std::move(flat_tables),
                   std::move(periods), std::move(translations));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid network: ") + e.what());
  }
}

std::string write_network(const Network& net) {
  return network_to_json(net).dump(2) + "\n";
}

Network read_network(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("network file is not valid JSON: ") + e.what());
  }
  return network_from_json(doc);
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open network file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return read_network(text.str());
}

void save_network(const std::filesystem::path& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write network file " + path.string());
  out << write_network(net);
}

Json attractor_to_json(const Attractor& attractor) {
  Json states = Json::array();
  for (const auto& es : attractor.states) states.push_back(extended_to_json(es));
  Json doc;
  doc["kind"] = std::string(to_string(attractor.kind));
  doc["period"] = attractor.period();
  doc["states"] = std::move(states);
  if (attractor.basin_size) doc["basin_size"] = *attractor.basin_size;
  return doc;
}

Json attractors_to_json(const Network& net, Scheme scheme,
                        std::span<const Attractor> attractors) {
  Json list = Json::array();
  for (const auto& a : attractors) list.push_back(attractor_to_json(a));
  Json doc;
  doc["scheme"] = std::string(label(scheme));
  doc["n"] = net.n();
  doc["phase_modulus"] = uses_clock(scheme) ? phase_modulus(net) : 1;
  doc["count"] = attractors.size();
  doc["attractors"] = std::move(list);
  return doc;
}

Json sweep_to_json(const Network& net, Scheme scheme, const SweepResult& sweep) {
  Json doc = attractors_to_json(net, scheme, sweep.attractors);
  doc["initial_states"] = sweep.initial_states;
  doc["not_reaching"] = sweep.not_reaching;
  return doc;
}

Json mapping_to_json(const MappingResult& result) {
  Json doc;
  doc["scheme"] = std::string(label(result.scheme));
  doc["phase_modulus"] = result.phase_modulus;
  doc["m"] = result.m;
  doc["clock_positions"] = result.clock_positions;
  doc["max_dependencies"] = result.max_dependencies;
  doc["convention"] = result.convention;
  doc["network"] = network_to_json(result.mapped);
  return doc;
}

Json mapping_report_to_json(const MappingReport& report) {
  Json doc;
  doc["equivalent"] = report.equivalent;
  doc["horizon"] = report.horizon;
  doc["initial_states"] = report.initial_states;
  doc["m"] = report.m;
  doc["convention"] = report.convention;
  if (report.first_divergence) {
    const auto& d = *report.first_divergence;
    doc["first_divergence"] = Json{{"initial_state", d.initial.to_string()},
                                   {"step", d.step},
                                   {"original", d.original.to_string()},
                                   {"mapped", d.mapped.to_string()}};
  } else {
    doc["first_divergence"] = nullptr;
  }
  return doc;
}

Json ensemble_manifest(const EnsembleSpec& spec) {
  Json schemes = Json::array();
  for (Scheme s : spec.schemes) schemes.push_back(std::string(label(s)));
  Json doc;
  doc["n"] = spec.n;
  doc["k"] = spec.k;
  doc["p_max"] = spec.p_max;
  doc["q_mode"] = spec.q_mode == TranslationMode::zero ? "zero" : "uniform";
  doc["sample_size"] = spec.sample_size;
  doc["schemes"] = std::move(schemes);
  doc["search"] = Json{{"transient", spec.search.transient},
                       {"max_period_crbn", spec.search.max_period_crbn},
                       {"max_period_det", spec.search.max_period_det},
                       {"point_window", spec.search.point_window}};
  doc["seed"] = spec.seed;
  return doc;
}

Json summary_to_json(const StatsSummary& summary) {
  Json rows = Json::array();
  for (const auto& s : summary.per_scheme) {
    rows.push_back(Json{{"scheme", std::string(label(s.scheme))},
                        {"mean_attractors", s.mean_attractors},
                        {"pct_states_in_attractors", s.pct_states_in_attractors},
                        {"normalized_states", s.normalized_states},
                        {"pct_not_reaching", s.pct_not_reaching}});
  }
  return Json{{"n", summary.n},
              {"k", summary.k},
              {"sample_size", summary.sample_size},
              {"schemes", std::move(rows)}};
}

Json divergence_to_json(const DivergenceReport& report) {
  auto spread = [](const Spread& s) {
    return Json{{"min", s.min},
                {"max", s.max},
                {"mean", s.mean},
                {"max_vs_mean_pct", s.max_vs_mean_pct},
                {"max_vs_min_pct", s.max_vs_min_pct},
                {"max_abs_dev_pct", s.max_abs_dev_pct}};
  };
  Json schemes = Json::array();
  for (const auto& d : report.per_scheme) {
    schemes.push_back(Json{{"scheme", std::string(label(d.scheme))},
                           {"mean_attractors", spread(d.attractors)},
                           {"pct_states_in_attractors", spread(d.pct_states_in_attractors)},
                           {"normalized_states", spread(d.normalized_states)},
                           {"pct_not_reaching", spread(d.pct_not_reaching)}});
  }
  return Json{{"seeds", report.seeds}, {"schemes", std::move(schemes)}};
}

}  // namespace rbn
