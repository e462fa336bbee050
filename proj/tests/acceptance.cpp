// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "rbn/attractors.hpp"
#include "rbn/mapping.hpp"
#include "rbn/stats.hpp"

using namespace rbn;

namespace {

// Tolerances and workloads.
constexpr std::size_t kPointNetworks = 100;
constexpr std::size_t kPointSeeds = 10;
constexpr std::size_t kPointWindow = 50;
constexpr std::size_t kZeroNetworks = 50;
constexpr std::size_t kOrderingSamples = 200;
constexpr std::size_t kOrderingTransient = 2000;
constexpr int kMaxInversions = 1;
constexpr double kDarbnCrbnGap = 0.5;
constexpr std::size_t kTrendSamples = 200;
constexpr double kMinR2 = 0.9;
constexpr std::size_t kDivergenceEnsembles = 5;
constexpr std::size_t kDivergenceSamples = 1000;
constexpr double kMaxDivergencePct = 10.0;
constexpr std::size_t kOracleNetworks = 100;

struct Outcome {
  bool pass;
  std::string detail;
};

using Rows = std::vector<std::pair<std::string, std::string>>;

Rows table_of(const Network& net) {
  Rows rows;
  for (const auto& [from, to] : crbn_transition_table(net)) {
    rows.emplace_back(from.to_string(), to.to_string());
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

Rows sorted(Rows rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

Outcome ac1() {
  const Rows expected_rows = {{"11", "11"}, {"10", "01"}, {"01", "00"}, {"00", "10"}};
  const Rows got = table_of(test::net_t2());
  const bool pass = got == sorted(expected_rows);
  return {pass, "4 rows " + std::string(pass ? "match" : "differ")};
}

Outcome ac2() {
  const Rows darbn_rows = {{"111", "110"}, {"101", "000"}, {"011", "010"}, {"001", "100"},
                       {"110", "111"}, {"100", "001"}, {"010", "001"}, {"000", "111"}};
  const Rows dgarbn_rows = {{"111", "110"}, {"101", "000"}, {"011", "010"}, {"001", "100"},
                       {"110", "111"}, {"100", "011"}, {"010", "001"}, {"000", "101"}};
  const Network net = test::net_t2();
  bool pass = true;
  std::ostringstream detail;
  for (auto [scheme, want] : {std::pair{Scheme::darbn, &darbn_rows}, std::pair{Scheme::dgarbn, &dgarbn_rows}}) {
    const MappingResult r = map_to_crbn(net, scheme);
    const bool rows_ok = table_of(r.mapped) == sorted(*want);
    const MappingReport report = verify_mapping(net, scheme, r, 1000);
    const bool verified = report.equivalent && report.initial_states == 4 && report.horizon == 1000;
    pass = pass && rows_ok && verified;
    detail << label(scheme) << ": rows " << (rows_ok ? "match" : "differ") << ", T=1000 "
           << (verified ? "equivalent" : "diverges") << "; ";
  }
  return {pass, detail.str()};
}

Outcome ac3() {
  RandomStream rng(0xAC3);
  std::size_t violations = 0, points = 0;
  for (std::size_t trial = 0; trial < kPointNetworks; ++trial) {
    const std::size_t n = 2 + rng.uniform_below(7);
    const std::size_t k = rng.uniform_below(std::min<std::size_t>(n, 3) + 1);
    GenerateOptions opts;
    if (trial % 2) opts.translations = TranslationMode::uniform;
    const Network net = generate_network(n, k, 4, rng, opts);
    const std::set<std::string> expected = oracle::fixed_points(oracle::from(net));
    points += expected.size();
    for (Scheme scheme : kAllSchemes) {
      std::set<std::string> got;
      for (const Attractor& a : enumerate_attractors(net, scheme)) {
        if (a.kind == AttractorKind::point) got.insert(a.states.front().state.to_string());
      }
      if (got != expected) ++violations;
    }
    for (const std::string& p : expected) {
      for (Scheme scheme : {Scheme::arbn, Scheme::garbn}) {
        for (std::uint64_t seed = 0; seed < kPointSeeds; ++seed) {
          RandomStream r = rng.derive({trial, seed});
          const auto run = trajectory(net, NetState::parse(p), scheme, kPointWindow, &r);
          if (std::any_of(run.begin(), run.end(),
                          [&](const NetState& s) { return s.to_string() != p; })) {
            ++violations;
          }
        }
      }
    }
  }
  return {violations == 0, std::to_string(points) + " fixed points, " +
                               std::to_string(violations) + " violations"};
}

Outcome ac4() {
  RandomStream rng(0xAC4);
  std::size_t violations = 0;
  SearchParams params;
  for (std::size_t trial = 0; trial < kZeroNetworks; ++trial) {
    const std::size_t n = 1 + rng.uniform_below(10);
    const Network net = generate_network(n, 0, 4, rng, {TranslationMode::uniform});
    const auto fixed = oracle::fixed_points(oracle::from(net));
    if (fixed.size() != 1) {
      ++violations;
      continue;
    }
    const std::string point = *fixed.begin();
    for (Scheme scheme : kAllSchemes) {
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        const NetState s(n, code);
        std::optional<Attractor> a;
        if (is_deterministic(scheme)) {
          a = find_attractor_exact(net, scheme, s);
        } else {
          RandomStream r = rng.derive({trial, code, scheme_tag(scheme)});
          a = heuristic_search(net, scheme, s, params, &r);
        }
        if (!a || a->kind != AttractorKind::point ||
            a->projected_states() != std::vector{NetState::parse(point)}) {
          ++violations;
        }
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations"};
}

// 2^e as a decimal string by repeated doubling.
std::string power_of_two(std::size_t e) {
  std::string digits = "1";
  for (std::size_t i = 0; i < e; ++i) {
    int carry = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      const int d = (*it - '0') * 2 + carry;
      *it = static_cast<char>('0' + d % 10);
      carry = d / 10;
    }
    if (carry) digits.insert(digits.begin(), static_cast<char>('0' + carry));
  }
  return digits;
}

// Three significant digits in the "d.ddE+XX" style, rounded half up.
std::string sci3(const std::string& digits) {
  long long lead = std::stoll(digits.substr(0, 3));
  int exponent = static_cast<int>(digits.size()) - 1;
  if (digits.size() > 3 && digits[3] >= '5') ++lead;
  if (lead == 1000) {
    lead = 100;
    ++exponent;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%02lldE+%02d", lead / 100, lead % 100, exponent);
  return buf;
}

Outcome ac5() {
  const std::vector<std::vector<std::string>> published_counts = {
      {"2", "4"},
      {"4", "16", "256"},
      {"8", "64", "4096", "1.68E+07"},
      {"16", "256", "65536", "4.29E+09", "1.84E+19"},
      {"32", "1024", "1048576", "1.10E+12", "1.21E+24", "1.46E+48"},
      {"64", "4096", "16777216", "2.81E+14", "7.92E+28", "6.28E+57", "3.94E+115"},
      {"128", "16384", "2.68E+08", "7.21E+16", "5.19E+33", "2.70E+67", "7.27E+134"},
      {"256", "65536", "4.29E+09", "1.84E+19", "3.40E+38", "1.16E+77", "1.34E+154"},
      {"512", "262144", "6.87E+10", "4.72E+21", "2.23E+43", "4.97E+86", "2.47E+173"},
      {"1024", "1048576", "1.10E+12", "1.21E+24", "1.46E+48", "2.14E+96", "4.56E+192"},
  };
  std::size_t cells = 0, mismatches = 0;
  for (std::size_t n = 1; n <= published_counts.size(); ++n) {
    for (std::size_t k = 0; k < published_counts[n - 1].size(); ++k) {
      ++cells;
      const std::string& cell = published_counts[n - 1][k];
      const std::string exact = power_of_two(n << k);
      const std::string got = possible_network_count(n, k).str();
      const bool sci = cell.find('E') != std::string::npos;
      const bool ok = got == exact && (sci ? sci3(got) == cell : got == cell);
      if (!ok) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(cells) + " cells, " + std::to_string(mismatches) +
                               " mismatches"};
}

EnsembleSpec ensemble(std::size_t n, std::size_t k, std::size_t samples, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.n = n;
  spec.k = k;
  spec.p_max = 4;
  spec.q_mode = TranslationMode::zero;
  spec.sample_size = samples;
  spec.seed = seed;
  return spec;
}

Outcome ac6() {
  const Scheme order[] = {Scheme::crbn, Scheme::dgarbn, Scheme::darbn, Scheme::garbn,
                          Scheme::arbn};
  bool pass = true;
  std::ostringstream detail;
  detail.precision(3);
  for (std::size_t n = 3; n <= 5; ++n) {
    EnsembleSpec spec = ensemble(n, 3, kOrderingSamples, 0xAC6 + n);
    spec.search.transient = kOrderingTransient;
    const StatsSummary s = run_ensemble(spec);
    int inversions = 0;
    for (std::size_t i = 0; i + 1 < std::size(order); ++i) {
      if (s.at(order[i]).mean_attractors < s.at(order[i + 1]).mean_attractors) ++inversions;
    }
    const double crbn = s.at(Scheme::crbn).mean_attractors;
    const double gap = std::abs(s.at(Scheme::darbn).mean_attractors - crbn) / crbn;
    pass = pass && inversions <= kMaxInversions && gap <= kDarbnCrbnGap;
    detail << "n=" << n << " [";
    for (Scheme scheme : order) detail << ' ' << label(scheme) << '=' << s.at(scheme).mean_attractors;
    detail << " ] inversions=" << inversions << " gap=" << gap << "; ";
  }
  return {pass, detail.str()};
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fit = intercept + slope * x[i];
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - sy / m) * (y[i] - sy / m);
  }
  return ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
}

Outcome ac7() {
  const Scheme det[] = {Scheme::crbn, Scheme::darbn, Scheme::dgarbn};
  std::map<Scheme, std::vector<double>> means;
  std::vector<double> xs;
  for (std::size_t n = 3; n <= 6; ++n) {
    EnsembleSpec spec = ensemble(n, 3, kTrendSamples, 0xAC7 + n);
    spec.schemes.assign(std::begin(det), std::end(det));
    const StatsSummary s = run_ensemble(spec);
    xs.push_back(static_cast<double>(n));
    for (Scheme scheme : det) means[scheme].push_back(s.at(scheme).mean_attractors);
  }
  bool pass = true;
  std::ostringstream detail;
  detail.precision(4);
  for (Scheme scheme : det) {
    const double r2 = r_squared(xs, means[scheme]);
    pass = pass && r2 >= kMinR2;
    detail << label(scheme) << " R2=" << r2 << " (";
    for (double v : means[scheme]) detail << ' ' << v;
    detail << " ); ";
  }
  return {pass, detail.str()};
}

Outcome ac8() {
  std::vector<double> pct;
  for (std::size_t n = 3; n <= 6; ++n) {
    EnsembleSpec spec = ensemble(n, 2, kTrendSamples, 0xAC8 + n);
    spec.schemes = {Scheme::crbn};
    pct.push_back(run_ensemble(spec).at(Scheme::crbn).pct_states_in_attractors);
  }
  bool pass = true;
  std::ostringstream detail;
  detail.precision(4);
  for (std::size_t i = 0; i < pct.size(); ++i) {
    if (i > 0 && !(pct[i] < pct[i - 1])) pass = false;
    detail << "n=" << 3 + i << ":" << pct[i] << "% ";
  }
  return {pass, detail.str()};
}

Outcome ac9() {
  EnsembleSpec spec = ensemble(4, 4, kDivergenceSamples, 0xAC9);
  const DivergenceReport report = sample_divergence(spec, kDivergenceEnsembles);
  bool pass = true;
  std::ostringstream detail;
  detail.precision(3);
  for (const SchemeDivergence& d : report.per_scheme) {
    pass = pass && d.attractors.max_abs_dev_pct < kMaxDivergencePct;
    detail << label(d.scheme) << " mean=" << d.attractors.mean
           << " maxdev=" << d.attractors.max_abs_dev_pct << "%; ";
  }
  return {pass, detail.str()};
}

Outcome ac10() {
  RandomStream rng(0xAC10);
  const SearchParams params;
  std::size_t compared = 0, beyond = 0, disagreements = 0;
  for (std::size_t trial = 0; trial < kOracleNetworks; ++trial) {
    const std::size_t n = 1 + rng.uniform_below(6);
    const std::size_t k = rng.uniform_below(std::min<std::size_t>(n, 4) + 1);
    GenerateOptions opts;
    if (trial % 2) opts.translations = TranslationMode::uniform;
    const Network net = generate_network(n, k, 4, rng, opts);
    for (Scheme scheme : {Scheme::crbn, Scheme::darbn, Scheme::dgarbn}) {
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        const NetState s(n, code);
        const Attractor exact = find_attractor_exact(net, scheme, s);
        const auto found = heuristic_search(net, scheme, s, params);
        if (exact.period() >= params.period_bound(scheme)) {
          ++beyond;
          if (found) ++disagreements;
          continue;
        }
        ++compared;
        if (!found || found->projected_states() != exact.projected_states() ||
            found->period() != exact.period()) {
          ++disagreements;
        }
      }
    }
  }
  return {disagreements == 0, std::to_string(compared) + " searches compared, " +
                                  std::to_string(beyond) + " beyond the bound, " +
                                  std::to_string(disagreements) + " disagreements"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 classical transition table of NET_T2", ac1},
      {"AC2 DARBN/DGARBN mappings of NET_T2", ac2},
      {"AC3 point attractors identical under all schemes", ac3},
      {"AC4 k=0 networks reach one point attractor", ac4},
      {"AC5 possible network counts", ac5},
      {"AC6 scheme ordering of mean attractor counts", ac6},
      {"AC7 linear growth of deterministic attractor counts", ac7},
      {"AC8 CRBN percentage of states in attractors decreases", ac8},
      {"AC9 divergence between independent ensembles", ac9},
      {"AC10 heuristic search agrees with exact search", ac10},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << " ("
              << std::fixed << std::setprecision(1) << secs << "s)" << std::defaultfloat
              << std::endl;
  }
  std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
