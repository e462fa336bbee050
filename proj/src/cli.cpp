#include "rbn/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "rbn/attractors.hpp"
#include "rbn/io.hpp"
#include "rbn/mapping.hpp"
#include "rbn/service.hpp"
#include "rbn/stats.hpp"

namespace rbn::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<Scheme> out;
  for (const auto& name : names) out.push_back(parse_scheme(name));
  if (out.empty()) out.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
  return out;
}

// Writes to --out when given, otherwise to the command's stdout.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw FormatError("cannot write " + path);
  file << text;
}

std::optional<std::uint64_t> optional_seed(const CLI::Option* flag, std::uint64_t seed) {
  return flag->count() > 0 ? std::optional(seed) : std::nullopt;
}

void require_seed(const CLI::Option* flag, Scheme scheme) {
  if (!is_deterministic(scheme) && flag->count() == 0) {
    throw UsageError(std::string(label(scheme)) + " is non-deterministic; pass --seed");
  }
}

struct EnsembleFlags {
  std::vector<std::size_t> n;
  std::vector<std::size_t> k;
  std::uint32_t p_max = 4;
  bool random_q = false;
  std::size_t samples = 1000;
  std::size_t transient = 10000;
  std::uint64_t seed = 0;
  std::vector<std::string> schemes;
  unsigned jobs = 1;
  std::string out;
  std::string manifest;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n", n, "Node counts")->required()->delimiter(',');
    cmd->add_option("--k", k, "Connectivities")->required()->delimiter(',');
    cmd->add_option("--pmax", p_max, "Largest update period")->capture_default_str();
    cmd->add_flag("--random-q", random_q, "Draw translations uniformly in [0, p)");
    cmd->add_option("--samples", samples, "Networks per ensemble")->capture_default_str();
    cmd->add_option("--transient", transient, "Steps before inspection")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Master seed")->required();
    cmd->add_option("--schemes", schemes, "Schemes to test (default: all)")
        ->delimiter(',');
    cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    cmd->add_option("--out", out, "CSV output file (default: stdout)");
    cmd->add_option("--manifest", manifest, "Write the experiment manifest here");
  }

  EnsembleSpec spec(std::size_t nodes, std::size_t inputs) const {
    EnsembleSpec s;
    s.n = nodes;
    s.k = inputs;
    s.p_max = p_max;
    s.q_mode = random_q ? TranslationMode::uniform : TranslationMode::zero;
    s.sample_size = samples;
    s.schemes = parse_schemes(schemes);
    s.search.transient = transient;
    s.seed = seed;
    s.jobs = jobs;
    return s;
  }

  void write_manifest(const Json& specs) const {
    if (manifest.empty()) return;
    std::ofstream file(manifest);
    if (!file) throw FormatError("cannot write " + manifest);
    file << specs.dump(2) << '\n';
  }
};

std::string attractor_text(const Attractor& a) {
  std::ostringstream line;
  line << to_string(a.kind) << " period=" << a.period();
  if (a.basin_size) line << " basin=" << *a.basin_size;
  line << ":";
  for (const auto& es : a.states) line << ' ' << es.state.to_string() << '@' << es.phase;
  return line.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random Boolean network laboratory"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random network");
  std::size_t gen_n = 0, gen_k = 0;
  std::uint32_t gen_pmax = 4;
  bool gen_random_q = false;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Nodes")->required();
  gen->add_option("--k", gen_k, "Inputs per node")->required();
  gen->add_option("--pmax", gen_pmax, "Largest update period")->capture_default_str();
  gen->add_flag("--random-q", gen_random_q, "Draw translations uniformly in [0, p)");
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_option("--out", gen_out, "Network file (default: stdout)");

  // run
  auto* run_cmd = app.add_subcommand("run", "Print a trajectory");
  std::string run_net, run_scheme, run_state;
  std::size_t run_steps = 10;
  std::uint64_t run_seed = 0, run_t0 = 0;
  run_cmd->add_option("--net", run_net, "Network file")->required();
  run_cmd->add_option("--scheme", run_scheme, "Updating scheme")->required();
  run_cmd->add_option("--state", run_state, "Initial state, node 0 leftmost")->required();
  run_cmd->add_option("--steps", run_steps, "Steps to run")->capture_default_str();
  auto* run_seed_flag = run_cmd->add_option("--seed", run_seed, "Seed (ARBN/GARBN)");
  run_cmd->add_option("--t0", run_t0, "Initial time")->capture_default_str();

  // attractors
  auto* att = app.add_subcommand("attractors", "Enumerate attractors");
  std::string att_net, att_scheme, att_out;
  bool att_heuristic = false, att_text = false;
  std::uint64_t att_seed = 0;
  std::size_t att_transient = SearchParams{}.transient;
  att->add_option("--net", att_net, "Network file")->required();
  att->add_option("--scheme", att_scheme, "Updating scheme")->required();
  att->add_flag("--heuristic", att_heuristic, "Fixed-horizon search from every state");
  auto* att_seed_flag = att->add_option("--seed", att_seed, "Seed (heuristic ARBN/GARBN)");
  att->add_option("--transient", att_transient, "Heuristic transient")->capture_default_str();
  att->add_flag("--text", att_text, "One line per attractor instead of JSON");
  att->add_option("--out", att_out, "Output file (default: stdout)");

  // stats / divergence
  auto* stats = app.add_subcommand("stats", "Ensemble statistics as CSV");
  EnsembleFlags stats_flags;
  stats_flags.add_to(stats);

  auto* div = app.add_subcommand("divergence", "Spread between independent ensembles");
  EnsembleFlags div_flags;
  div_flags.add_to(div);
  std::size_t div_ensembles = 5;
  div->add_option("--ensembles", div_ensembles, "Independent ensembles")
      ->capture_default_str();

  // count
  auto* count = app.add_subcommand("count", "Number of possible networks 2^(n*2^k)");
  std::size_t count_n = 0, count_k = 0;
  bool count_sci = false, count_table = false;
  count->add_option("--n", count_n, "Nodes");
  count->add_option("--k", count_k, "Inputs per node");
  count->add_flag("--sci", count_sci, "Three significant digits above 10^8");
  count->add_flag("--table", count_table, "Print the grid n=1..10, k=0..6");

  // map / verify-map
  auto* map = app.add_subcommand("map", "Map a DARBN/DGARBN to a classical network");
  std::string map_net, map_scheme, map_out;
  bool map_full = false;
  map->add_option("--net", map_net, "Network file")->required();
  map->add_option("--scheme", map_scheme, "darbn or dgarbn")->required();
  map->add_option("--out", map_out, "Mapped network file (default: stdout)");
  map->add_flag("--full-inputs", map_full, "Give every mapped node all n+m inputs");

  auto* verify = app.add_subcommand("verify-map", "Co-simulate a network and its mapping");
  std::string ver_net, ver_scheme, ver_mapped;
  std::uint64_t ver_steps = 1000;
  verify->add_option("--net", ver_net, "Original network file")->required();
  verify->add_option("--scheme", ver_scheme, "darbn or dgarbn")->required();
  verify->add_option("--mapped", ver_mapped, "Mapped network (default: build it)");
  verify->add_option("--steps", ver_steps, "Horizon")->capture_default_str();

  // serve
  auto* srv = app.add_subcommand("serve", "HTTP service for the laboratory UI");
  int srv_port = 8080;
  std::string srv_host = "127.0.0.1";
  srv->add_option("--port", srv_port, "Port")->capture_default_str();
  srv->add_option("--host", srv_host, "Bind address")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (gen->parsed()) {
      RandomStream rng(gen_seed);
      GenerateOptions opts;
      if (gen_random_q) opts.translations = TranslationMode::uniform;
      emit(gen_out, out, write_network(generate_network(gen_n, gen_k, gen_pmax, rng, opts)));
    } else if (run_cmd->parsed()) {
      const Network net = load_network(run_net);
      const Scheme scheme = parse_scheme(run_scheme);
      require_seed(run_seed_flag, scheme);
      const NetState start = NetState::parse(run_state);
      if (start.size() != net.n()) {
        throw UsageError("--state has " + std::to_string(start.size()) +
                         " bits but the network has " + std::to_string(net.n()));
      }
      const auto states = seeded_trajectory(net, start, scheme, run_steps,
                                            optional_seed(run_seed_flag, run_seed), run_t0);
      for (std::size_t i = 0; i < states.size(); ++i) {
        out << (i == 0 ? "" : " ") << states[i].to_string();
      }
      out << '\n';
    } else if (att->parsed()) {
      const Network net = load_network(att_net);
      const Scheme scheme = parse_scheme(att_scheme);
      std::vector<Attractor> found;
      Json doc;
      if (att_heuristic) {
        require_seed(att_seed_flag, scheme);
        SearchParams params;
        params.transient = att_transient;
        const SweepResult sweep = heuristic_sweep(net, scheme, params, RandomStream(att_seed));
        found = sweep.attractors;
        doc = sweep_to_json(net, scheme, sweep);
      } else {
        found = enumerate_attractors(net, scheme);
        doc = attractors_to_json(net, scheme, found);
      }
      std::string text;
      if (att_text) {
        for (const auto& a : found) text += attractor_text(a) + "\n";
      } else {
        text = doc.dump(2) + "\n";
      }
      emit(att_out, out, text);
    } else if (stats->parsed()) {
      std::vector<StatsSummary> summaries;
      Json manifest = Json::array();
      for (std::size_t n : stats_flags.n) {
        for (std::size_t k : stats_flags.k) {
          if (k > n) continue;
          const EnsembleSpec spec = stats_flags.spec(n, k);
          manifest.push_back(ensemble_manifest(spec));
          summaries.push_back(run_ensemble(spec));
        }
      }
      if (summaries.empty()) throw UsageError("no (n, k) pair with k <= n");
      std::ostringstream csv;
      write_csv(csv, summaries);
      emit(stats_flags.out, out, csv.str());
      stats_flags.write_manifest(manifest);
    } else if (div->parsed()) {
      std::ostringstream csv;
      csv << "scheme,n,k,statistic,min,max,mean,max_vs_mean_pct,max_vs_min_pct,"
             "max_abs_dev_pct\n"
          << std::fixed << std::setprecision(6);
      Json manifest = Json::array();
      for (std::size_t n : div_flags.n) {
        for (std::size_t k : div_flags.k) {
          if (k > n) continue;
          const EnsembleSpec spec = div_flags.spec(n, k);
          Json entry = ensemble_manifest(spec);
          entry["ensembles"] = div_ensembles;
          manifest.push_back(entry);
          const DivergenceReport report = sample_divergence(spec, div_ensembles);
          for (const auto& d : report.per_scheme) {
            const std::pair<const char*, const Spread*> rows[] = {
                {"mean_attractors", &d.attractors},
                {"pct_states_in_attractors", &d.pct_states_in_attractors},
                {"normalized_states", &d.normalized_states},
                {"pct_not_reaching", &d.pct_not_reaching}};
            for (const auto& [name, s] : rows) {
              csv << label(d.scheme) << ',' << n << ',' << k << ',' << name << ','
                  << s->min << ',' << s->max << ',' << s->mean << ','
                  << s->max_vs_mean_pct << ',' << s->max_vs_min_pct << ','
                  << s->max_abs_dev_pct << '\n';
            }
          }
        }
      }
      if (manifest.empty()) throw UsageError("no (n, k) pair with k <= n");
      emit(div_flags.out, out, csv.str());
      div_flags.write_manifest(manifest);
    } else if (count->parsed()) {
      if (count_table) {
        out << "n\\k";
        for (std::size_t k = 0; k <= 6; ++k) out << '\t' << k;
        out << '\n';
        for (std::size_t n = 1; n <= 10; ++n) {
          out << n;
          for (std::size_t k = 0; k <= std::min<std::size_t>(n, 6); ++k) {
            out << '\t' << format_count(possible_network_count(n, k));
          }
          out << '\n';
        }
      } else {
        if (count->count("--n") == 0 || count->count("--k") == 0) {
          throw UsageError("count needs --n and --k (or --table)");
        }
        if (count_k > count_n) throw UsageError("k must not exceed n");
        const auto value = possible_network_count(count_n, count_k);
        out << (count_sci ? format_count(value) : value.str()) << '\n';
      }
    } else if (map->parsed()) {
      const Network net = load_network(map_net);
      const MappingResult result =
          map_to_crbn(net, parse_scheme(map_scheme), MappingOptions{map_full});
      emit(map_out, out, write_network(result.mapped));
      if (!map_out.empty()) {
        Json summary = mapping_to_json(result);
        summary.erase("network");
        out << summary.dump(2) << '\n';
      }
    } else if (verify->parsed()) {
      const Network net = load_network(ver_net);
      const Scheme scheme = parse_scheme(ver_scheme);
      MappingResult result = map_to_crbn(net, scheme);
      if (!ver_mapped.empty()) {
        Network mapped = load_network(ver_mapped);
        if (mapped.n() != result.mapped.n()) {
          throw FormatError("mapped network must have n+m = " +
                            std::to_string(result.mapped.n()) + " nodes");
        }
        result.max_dependencies = mapped.k();
        result.mapped = std::move(mapped);
      }
      const MappingReport report = verify_mapping(net, scheme, result, ver_steps);
      out << mapping_report_to_json(report).dump(2) << '\n';
    } else if (srv->parsed()) {
      Service service;
      err << "serving on http://" << srv_host << ':' << srv_port << '\n';
      serve(service, srv_host, srv_port);
    }
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kSizeRefusal;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kSuccess;
}

}  // namespace rbn::cli
