// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <boost/math/distributions/binomial.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "maghom/homology.hpp"
#include "maghom/random.hpp"
#include "support.hpp"

using namespace maghom;
using maghom::testing::brute_options;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Exact homology corpus from criteria 1-4, reused by 5, 6 and 13.
struct CorpusEntry {
  Graph graph;
  HomologyTable table;
};
std::vector<CorpusEntry> corpus;
std::size_t bound_checks = 0;
std::vector<std::string> bound_failures;

HomologyTable record(const Graph& g, unsigned lmax, HomologyOptions o) {
  o.per_vertex = true;
  HomologyTable t = compute_homology(g, lmax, o);
  ++bound_checks;
  if (auto v = rank_bound_violation(t, g.max_degree())) {
    bound_failures.push_back(write_graph(g) + " at x=" + std::to_string((*v)[0]) + " (" + std::to_string((*v)[1]) +
                             "," + std::to_string((*v)[2]) + ")");
  }
  corpus.push_back({g, t});
  return t;
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail.clear();
  o.pass = false;
  if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + why;
}

Outcome tree_closed_form() {
  Outcome o;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 1 + s % 30;
    Graph t = maghom::testing::random_tree(n, s);
    HomologyTable tab = record(t, 5, brute_options());
    for (unsigned l = 0; l <= 5; ++l) {
      for (unsigned k = 0; k <= l; ++k) {
        const std::size_t want = l == 0 ? n : (k == l ? 2 * t.edge_count() : 0);
        const HomologyGroup& h = tab.groups[l][k];
        if (h.rank != want || !h.torsion.empty())
          fail(o, "tree seed " + std::to_string(s) + " (" + std::to_string(k) + "," + std::to_string(l) + ")");
      }
    }
  }
  if (o.pass) o.detail = "100 trees, n = 1..30, l <= 5, linear algebra path";
  return o;
}

Outcome diagonal_ranks() {
  Outcome o;
  std::vector<std::pair<std::string, Graph>> graphs{
      {"C5", cycle_graph(5)}, {"C7", cycle_graph(7)}, {"Petersen", petersen_graph()}};
  std::uint64_t trial = 0;
  std::size_t random = 0;
  while (random < 50) {
    const std::size_t n = 6 + trial % 7;
    Graph g = maghom::testing::er_graph(n, 2.6 / static_cast<double>(n), 5150, trial++);
    Extended gi = girth(g);
    if (!gi.is_finite() || gi.value() < 5) continue;
    graphs.emplace_back("er#" + std::to_string(trial - 1), g);
    ++random;
  }
  for (const auto& [name, g] : graphs) {
    // Default Morse policy; tree components still go through linear algebra so chain ranks exist.
    HomologyOptions opts;
    opts.torsion = true;
    opts.shortcut_trees = false;
    HomologyTable t = record(g, 5, opts);
    for (unsigned l = 1; l <= 5; ++l) {
      if (t.rank(l, l) != 2 * g.edge_count()) fail(o, name + " total l=" + std::to_string(l));
      for (VertexId x = 0; x < g.vertex_count(); ++x)
        if ((*t.per_vertex)[x][l][l] != g.degree(x)) fail(o, name + " x=" + std::to_string(x) + " l=" + std::to_string(l));
    }
  }
  if (o.pass) o.detail = "C5, C7, Petersen and 50 G(n,p) graphs with 5 <= girth < inf (n = 6..12, " +
                         std::to_string(trial) + " sampled), l <= 5";
  return o;
}

Outcome optimality_band() {
  Outcome o;
  for (unsigned i = 0; i <= 2; ++i) {
    for (unsigned m : {2 * i + 5, 2 * i + 6}) {
      Graph g = cycle_graph(m);
      HomologyTable t = record(g, 5, brute_options());
      for (unsigned l = 1; l <= 5; ++l)
        for (unsigned j = 1; j <= i && j <= l; ++j)
          if (!t.groups[l][l - j].is_zero())
            fail(o, "C" + std::to_string(m) + " (" + std::to_string(l - j) + "," + std::to_string(l) + ") nonzero");
      const unsigned w = (m + 1) / 2;
      if (t.rank(2, w) < 1) fail(o, "C" + std::to_string(m) + " rank(2," + std::to_string(w) + ") = 0");
    }
  }
  if (o.pass) o.detail = "C5..C10: band vanishes for l <= 5 and rank MH_{2,floor((g+1)/2)} >= 1";
  return o;
}

Outcome morse_oracle() {
  Outcome o;
  std::size_t graphs = 0, total = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const Graph& g : maghom::testing::connected_graphs_up_to_iso(n)) {
      ++total;
      GirthReport gr = girth_report(g);
      bool eligible = false;
      for (const Extended& gx : gr.per_vertex) eligible = eligible || gx >= Extended(5);
      if (!eligible) continue;
      ++graphs;
      HomologyOptions on = brute_options();
      on.morse = MorseMode::On;
      HomologyTable a = record(g, 4, on);
      HomologyTable b = record(g, 4, brute_options());
      if (a.groups != b.groups || a.per_vertex != b.per_vertex) fail(o, write_graph(g));
    }
  }
  if (o.pass)
    o.detail = std::to_string(graphs) + " of " + std::to_string(total) +
               " connected graphs on <= 7 vertices, l <= 4, rank and torsion per vertex";
  return o;
}

Outcome magnitude_oracle() {
  Outcome o;
  for (const auto& [g, t] : corpus) {
    const unsigned top = std::min(4u, t.lmax);
    auto h = magnitude_from_homology(t).coefficients;
    h.resize(top + 1);
    if (magnitude_from_metric(g, top).coefficients != h) fail(o, write_graph(g));
  }
  if (o.pass) o.detail = std::to_string(corpus.size()) + " tables, l <= 4";
  return o;
}

Outcome euler_identity() {
  Outcome o;
  for (const auto& [g, t] : corpus) {
    if (!t.chain_ranks) {
      fail(o, "missing chain ranks");
      continue;
    }
    const auto oracle_counts = chain_group_ranks(g, t.lmax);
    for (unsigned l = 0; l <= t.lmax; ++l) {
      long long lhs = 0, rhs = 0;
      for (unsigned k = 0; k <= l; ++k) {
        const long long sign = k % 2 ? -1 : 1;
        lhs += sign * static_cast<long long>((*t.chain_ranks)[l][k]);
        rhs += sign * static_cast<long long>(t.rank(k, l));
      }
      if (lhs != rhs) fail(o, write_graph(g) + " l=" + std::to_string(l));
    }
    if (*t.chain_ranks != oracle_counts) fail(o, "chain count oracle " + write_graph(g));
  }
  if (o.pass) o.detail = std::to_string(corpus.size()) + " tables; chain ranks also match the counting oracle";
  return o;
}

Outcome phase_transition() {
  Outcome o;
  std::string rows;
  for (double c : {0.3, 0.5, 0.7, 0.9}) {
    ErConfig cfg = ErConfig::from_c(1000, c);
    cfg.trials = 2000;
    cfg.seed = 1;
    DiagonalityResult r = run_diagonality_experiment(cfg);
    const double limit = *r.limit;
    const std::size_t resolved = r.diagonal + r.nondiagonal;
    boost::math::binomial_distribution<double> b(static_cast<double>(resolved), limit);
    const double lo = boost::math::quantile(b, 0.005) / static_cast<double>(resolved);
    const double hi = boost::math::quantile(boost::math::complement(b, 0.005)) / static_cast<double>(resolved);
    const double emp = r.nondiag ? r.nondiag->estimate : 0.0;
    const bool ok = lo <= emp && emp <= hi && r.unresolved_fraction < 0.01;
    rows += (rows.empty() ? "" : "; ") + std::string("c=") + fmt(c, 2) + " emp=" + fmt(emp) + " limit=" + fmt(limit) +
            " 99%[" + fmt(lo) + "," + fmt(hi) + "] unresolved=" + fmt(r.unresolved_fraction) + (ok ? "" : " OUT");
    o.pass = o.pass && ok;
  }
  o.detail = rows;
  return o;
}

Outcome supercritical() {
  ErConfig cfg = ErConfig::from_c(500, 2.0);
  cfg.trials = 500;
  cfg.seed = 2;
  DiagonalityResult r = run_diagonality_experiment(cfg);
  const double f = static_cast<double>(r.nondiagonal) / 500.0;
  return {f >= 0.99, "non-diagonal " + std::to_string(r.nondiagonal) + "/500, unresolved " + std::to_string(r.unresolved)};
}

Outcome subcritical() {
  ErConfig cfg;
  cfg.n = 1000;
  cfg.p = 0.1 / 1000;
  cfg.trials = 1000;
  cfg.seed = 3;
  DiagonalityResult r = run_diagonality_experiment(cfg);
  const double f = static_cast<double>(r.diagonal) / 1000.0;
  return {f >= 0.99, "diagonal " + std::to_string(r.diagonal) + "/1000"};
}

Outcome poisson_cycles() {
  Outcome o;
  ErConfig cfg = ErConfig::from_c(1000, 1.0);
  cfg.trials = 2000;
  cfg.seed = 4;
  CycleResult r = run_cycle_experiment(cfg, 6);
  std::string rows;
  for (const CycleStat& s : r.per_length) {
    const bool ok = s.count.within(s.poisson_mean, 3.0);
    o.pass = o.pass && ok;
    rows += "C" + std::to_string(s.length) + "=" + fmt(s.count.mean) + " vs " + fmt(s.poisson_mean) + (ok ? "; " : " OUT; ");
  }
  const Proportion& z = *r.no_long_cycles;
  const double want = *r.no_long_cycles_predicted;
  const double se = std::sqrt(z.estimate * (1 - z.estimate) / static_cast<double>(z.total));
  const bool ok = std::abs(z.estimate - want) <= 3 * se;
  o.pass = o.pass && ok;
  o.detail = rows + "P(C5=C6=0)=" + fmt(z.estimate) + " vs " + fmt(want) + (ok ? "" : " OUT");
  return o;
}

Outcome wlln() {
  Outcome o;
  ErConfig cfg = ErConfig::from_c(2000, 0.5);
  cfg.trials = 200;
  cfg.seed = 5;
  cfg.lmax = 3;
  WllnResult r = run_wlln_experiment(cfg, {{1, 1}, {2, 2}, {1, 2}, {2, 3}});
  std::string rows;
  for (const WllnStat& s : r.pairs) {
    const bool ok = std::abs(s.rank_over_n.mean - s.expected) <= 0.02;
    o.pass = o.pass && ok;
    rows += "(" + std::to_string(s.k) + "," + std::to_string(s.l) + ")=" + fmt(s.rank_over_n.mean) + (ok ? "; " : " OUT; ");
  }
  for (const ChiStat& s : r.chi) {
    if (s.l > 2) continue;
    const bool ok = std::abs(s.chi_over_n.mean - s.expected) <= 0.02;
    o.pass = o.pass && ok;
    rows += "chi" + std::to_string(s.l) + "=" + fmt(s.chi_over_n.mean) + (ok ? "; " : " OUT; ");
  }
  if (r.budget_exceeded) o.pass = false;
  o.detail = rows + "budget exceeded in " + std::to_string(r.budget_exceeded) + " trials";
  return o;
}

Outcome dense_pawful() {
  Outcome o;
  for (std::size_t n : {200, 500}) {
    ErConfig cfg;
    cfg.n = n;
    cfg.p = dense_probability(n, 0.5);
    cfg.trials = 100;
    cfg.seed = 6;
    PawfulExperiment r = run_pawful_experiment(cfg);
    const bool ok = r.pawful.estimate >= 0.95;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " p=" + fmt(cfg.p) +
                " pawful " + std::to_string(r.pawful.successes) + "/100";
  }
  return o;
}

Outcome rank_bound() {
  Outcome o;
  o.pass = bound_failures.empty();
  o.detail = std::to_string(bound_checks) + " per-vertex tables checked explicitly";
  for (const auto& f : bound_failures) fail(o, f);
  if (o.pass) o.detail += "; every other computation in the run enforces the bound internally and none threw";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "tree closed form", tree_closed_form},
      {2, "diagonal ranks under girth >= 5", diagonal_ranks},
      {3, "cycle optimality band", optimality_band},
      {4, "Morse reduction vs brute force", morse_oracle},
      {5, "magnitude cross-oracle", magnitude_oracle},
      {6, "Euler characteristic identity", euler_identity},
      {7, "phase transition vs limit formula", phase_transition},
      {8, "supercritical non-diagonality", supercritical},
      {9, "subcritical diagonality", subcritical},
      {10, "Poisson cycle counts", poisson_cycles},
      {11, "weak law for ranks and chi", wlln},
      {12, "dense-regime pawful certificate", dense_pawful},
      {13, "rank upper bound", rank_bound},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
      if (std::string(e.what()).find("rank bound") != std::string::npos) bound_failures.push_back(e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
              << fmt(secs, 3) << " s]" << std::endl;
    failures += !o.pass;
  }
  std::cout << 13 - failures << "/13 criteria pass" << std::endl;
  return failures ? 1 : 0;
}
