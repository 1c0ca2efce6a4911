#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "maghom/graph.hpp"
#include "maghom/homology.hpp"
#include "maghom/random.hpp"

namespace maghom::cli {

namespace {

// Carries an exit code out of a subcommand handler.
struct Exit {
  int code;
  std::string message;
};

Graph load(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw Exit{kNoInput, "cannot open " + path};
  try {
    return read_graph_file(path);
  } catch (const ParseError& e) {
    throw Exit{kDataError, path + ": " + e.what()};
  } catch (const GraphError& e) {
    throw Exit{kDataError, path + ": " + e.what()};
  }
}

// "a:b:s" (inclusive) or "x,y,z"; several tokens are concatenated.
std::vector<double> parse_grid(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  auto number = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Exit{kUsage, "invalid grid value '" + s + "'"};
    }
    if (used != s.size()) throw Exit{kUsage, "invalid grid value '" + s + "'"};
    return v;
  };
  for (const auto& tok : tokens) {
    if (tok.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(tok);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
      if (parts.size() != 3) throw Exit{kUsage, "grid range must be start:stop:step"};
      const double a = number(parts[0]), b = number(parts[1]), s = number(parts[2]);
      if (!(s > 0) || b < a) throw Exit{kUsage, "grid range needs step > 0 and stop >= start"};
      const auto steps = static_cast<long>(std::floor((b - a) / s + 1e-9));
      for (long i = 0; i <= steps; ++i) out.push_back(a + static_cast<double>(i) * s);
    } else {
      std::stringstream ss(tok);
      for (std::string p; std::getline(ss, p, ',');)
        if (!p.empty()) out.push_back(number(p));
    }
  }
  if (out.empty()) throw Exit{kUsage, "empty grid"};
  return out;
}

std::vector<std::pair<unsigned, unsigned>> parse_pairs(const std::vector<std::string>& tokens) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (const auto& tok : tokens) {
    unsigned k = 0, l = 0;
    char comma = 0;
    std::istringstream is(tok);
    if (!(is >> k >> comma >> l) || comma != ',' || !is.eof()) throw Exit{kUsage, "pair must be k,l: '" + tok + "'"};
    if (k > l) throw Exit{kUsage, "pair needs k <= l: '" + tok + "'"};
    out.emplace_back(k, l);
  }
  if (out.empty()) throw Exit{kUsage, "no pairs given"};
  return out;
}

// Output sink: file when a path is given, otherwise the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Exit{kCantCreate, "cannot create " + path};
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

struct Common {
  unsigned workers = 0;
  std::string format = "csv";
};

struct ErArgs {
  std::vector<std::size_t> n{1000};
  std::vector<std::string> c;
  std::vector<std::string> p;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  unsigned lmax = 5;
  unsigned m = 6;
  double eps = 0.5;
  double confidence = 0.95;
  std::vector<std::string> pairs{"1,1", "1,2", "2,2"};
  std::string out;
  std::string trials_out;
};

std::vector<ErConfig> er_grid(const ErArgs& a, unsigned workers, bool allow_empty) {
  std::vector<ErConfig> cfgs;
  if (!a.c.empty() && !a.p.empty()) throw Exit{kUsage, "--c and --p are mutually exclusive"};
  if (a.c.empty() && a.p.empty()) {
    if (!allow_empty) throw Exit{kUsage, "one of --c or --p is required"};
    return cfgs;
  }
  const bool by_c = !a.c.empty();
  for (std::size_t n : a.n) {
    for (double v : parse_grid(by_c ? a.c : a.p)) {
      ErConfig cfg;
      if (by_c) {
        if (v < 0) throw Exit{kUsage, "c must be non-negative"};
        cfg = ErConfig::from_c(n, v);
      } else {
        cfg.n = n;
        cfg.p = v;
      }
      cfg.trials = a.trials;
      cfg.seed = a.seed;
      cfg.lmax = a.lmax;
      cfg.max_cycle = a.m;
      cfg.confidence = a.confidence;
      cfg.workers = workers;
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw Exit{kUsage, e.what()};
      }
      cfgs.push_back(cfg);
    }
  }
  return cfgs;
}

void write_trial_dump(const ErArgs& a, std::ostream& fallback, const std::vector<TrialRecord>& all) {
  if (a.trials_out.empty()) return;
  Sink s(a.trials_out, fallback);
  write_trials_csv(*s, all, a.m);
}

void girth_csv(std::ostream& os, const Graph& g) {
  const GirthReport r = girth_report(g);
  os << kCsvHeader << '\n' << "scope,id,girth\n";
  os << "graph,," << r.global << '\n';
  for (std::size_t x = 0; x < r.per_vertex.size(); ++x) os << "vertex," << x << ',' << r.per_vertex[x] << '\n';
  for (std::size_t i = 0; i < r.per_edge.size(); ++i)
    os << "edge," << g.edges()[i].u << '-' << g.edges()[i].v << ',' << r.per_edge[i] << '\n';
}

void report_text(std::ostream& os, const TheoremReport& r) {
  for (const auto& i : r.instances) {
    if (i.pass) continue;
    os << "FAIL " << i.theorem << ' ' << i.where << ": expected " << i.expected << ", observed " << i.observed << '\n';
  }
  os << r.instances.size() - r.failures() << '/' << r.instances.size() << " theorem instances pass\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Magnitude homology of graphs and random-graph experiments", "maghom"};
  app.require_subcommand(1);
  // Lets --workers appear after the subcommand name; inherited by subcommands.
  app.fallthrough();
  Common common;
  app.add_option("--workers", common.workers, "Worker threads (0 = all available)")->envname("MAGHOM_WORKERS");

  // compute
  std::string graph_path;
  unsigned lmax = 5;
  bool per_vertex = false, torsion = false, no_morse = false, no_shortcut = false;
  std::size_t budget = HomologyOptions{}.budget;
  auto* compute = app.add_subcommand("compute", "Magnitude homology table");
  compute->add_option("graph", graph_path, "Edge-list file")->required();
  compute->add_option("--lmax", lmax, "Largest length");
  compute->add_flag("--per-vertex", per_vertex, "Add the per-start-vertex breakdown");
  compute->add_flag("--torsion", torsion, "Compute torsion via Smith normal form");
  compute->add_flag("--no-morse", no_morse, "Brute-force boundaries only");
  compute->add_flag("--no-tree-shortcut", no_shortcut, "Run linear algebra on tree components too");
  compute->add_option("--budget", budget, "Generator cap per start vertex and length");
  compute->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* girth_cmd = app.add_subcommand("girth", "Global, per-vertex and per-edge girth");
  girth_cmd->add_option("graph", graph_path, "Edge-list file")->required();

  auto* diagonal = app.add_subcommand("diagonal", "Diagonality verdict with certificate");
  diagonal->add_option("graph", graph_path, "Edge-list file")->required();
  diagonal->add_option("--lmax", lmax, "Largest length for the homology fallback")->check(CLI::Range(2u, 64u));
  diagonal->add_option("--budget", budget, "Generator cap per start vertex and length");
  diagonal->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"csv", "text", "json"}));

  bool oracle = false;
  auto* magnitude = app.add_subcommand("magnitude", "Magnitude series coefficients");
  magnitude->add_option("graph", graph_path, "Edge-list file")->required();
  magnitude->add_option("--lmax", lmax, "Largest length");
  magnitude->add_flag("--oracle", oracle, "Cross-check against the distance-matrix inverse");

  ErArgs er_args;
  auto* er = app.add_subcommand("er", "Erdos-Renyi experiments");
  er->require_subcommand(1);
  auto add_er_common = [&](CLI::App* s) {
    s->add_option("--n", er_args.n, "Vertex counts");
    s->add_option("--c", er_args.c, "Mean-degree grid: start:stop:step or comma list");
    s->add_option("--p", er_args.p, "Edge-probability grid");
    s->add_option("--trials", er_args.trials, "Trials per grid point")->check(CLI::PositiveNumber);
    s->add_option("--seed", er_args.seed, "Base seed");
    s->add_option("--confidence", er_args.confidence, "Confidence level for intervals");
    s->add_option("--out", er_args.out, "Summary CSV path (default stdout)");
    s->add_option("--trials-out", er_args.trials_out, "Per-trial CSV path");
  };
  auto* er_sim = er->add_subcommand("sim", "Non-diagonal frequency against the limit formula");
  add_er_common(er_sim);
  er_sim->add_option("--lmax", er_args.lmax, "Largest length for the homology fallback")->check(CLI::Range(2u, 64u));
  auto* er_cycles = er->add_subcommand("cycles", "Cycle counts against Poisson means");
  add_er_common(er_cycles);
  er_cycles->add_option("--m", er_args.m, "Longest cycle counted")->check(CLI::Range(3u, 64u));
  auto* er_wlln = er->add_subcommand("wlln", "Mean rank(MH_{k,l})/n and chi_l/n");
  add_er_common(er_wlln);
  er_wlln->add_option("--pairs", er_args.pairs, "Bidegrees as k,l");
  auto* er_pawful = er->add_subcommand("pawful", "Pawful frequency in the dense regime");
  add_er_common(er_pawful);
  er_pawful->add_option("--eps", er_args.eps, "p = ((3+eps) ln n / n)^(1/3) when --p is absent");

  std::size_t random_n = 0, random_trials = 50;
  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "Check the girth theorems against computed homology");
  verify->add_option("graph", graph_path, "Edge-list file");
  verify->add_option("--random", random_n, "Sample subcubic girth >= 5 graphs on this many vertices");
  verify->add_option("--trials", random_trials, "Random graphs to check")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "Base seed for --random");
  verify->add_option("--lmax", lmax, "Largest length");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const unsigned workers = common.workers == 0 ? static_cast<unsigned>(omp_get_max_threads()) : common.workers;
  try {
    if (*compute) {
      Graph g = load(graph_path);
      HomologyOptions o;
      o.per_vertex = per_vertex;
      o.torsion = torsion;
      o.morse = no_morse ? MorseMode::Off : MorseMode::Auto;
      o.shortcut_trees = !no_shortcut;
      o.budget = budget;
      o.workers = workers;
      HomologyTable t = compute_homology(g, lmax, o);
      if (common.format == "json") {
        write_table_json(out, t);
      } else {
        write_table_csv(out, t);
      }
      if (t.budget_exceeded) {
        err << "budget exceeded; complete through l = "
            << (t.complete_through ? std::to_string(*t.complete_through) : std::string("none")) << '\n';
        return kInconclusive;
      }
      return kOk;
    }
    if (*girth_cmd) {
      girth_csv(out, load(graph_path));
      return kOk;
    }
    if (*diagonal) {
      Graph g = load(graph_path);
      DiagonalityOptions o;
      o.homology.workers = workers;
      o.homology.budget = budget;
      DiagonalityVerdict v = decide_diagonality(g, lmax, o);
      if (common.format == "json") {
        write_verdict_json(out, v);
      } else {
        out << describe(v) << '\n';
      }
      switch (v.verdict) {
        case Verdict::Diagonal:
          return kOk;
        case Verdict::NonDiagonal:
          return kFail;
        case Verdict::DiagonalUpTo:
          return kInconclusive;
      }
    }
    if (*magnitude) {
      Graph g = load(graph_path);
      HomologyOptions o;
      o.workers = workers;
      HomologyTable t = compute_homology(g, lmax, o);
      if (!t.has(lmax)) throw Exit{kInconclusive, "budget exceeded before l = " + std::to_string(lmax)};
      MagnitudeSeries m = magnitude_from_homology(t);
      write_magnitude_csv(out, m);
      if (oracle && !(magnitude_from_metric(g, lmax) == m)) {
        err << "magnitude oracle mismatch\n";
        return kFail;
      }
      return kOk;
    }
    if (*er) {
      Sink sink(er_args.out, out);
      std::vector<TrialRecord> all;
      auto keep = [&](const std::vector<TrialRecord>& rs) {
        if (!er_args.trials_out.empty()) all.insert(all.end(), rs.begin(), rs.end());
      };
      if (*er_sim) {
        std::vector<DiagonalityResult> rows;
        for (const auto& cfg : er_grid(er_args, workers, false)) {
          rows.push_back(run_diagonality_experiment(cfg));
          keep(rows.back().records);
        }
        write_diagonality_curve(*sink, rows);
      } else if (*er_cycles) {
        std::vector<CycleResult> rows;
        for (const auto& cfg : er_grid(er_args, workers, false)) {
          rows.push_back(run_cycle_experiment(cfg, er_args.m));
          keep(rows.back().records);
        }
        write_cycle_csv(*sink, rows);
      } else if (*er_wlln) {
        auto pairs = parse_pairs(er_args.pairs);
        unsigned top = 0;
        for (auto [k, l] : pairs) top = std::max(top, l);
        er_args.lmax = top;
        std::vector<WllnResult> rows;
        for (const auto& cfg : er_grid(er_args, workers, false)) {
          rows.push_back(run_wlln_experiment(cfg, pairs));
          keep(rows.back().records);
        }
        write_wlln_csv(*sink, rows);
      } else if (*er_pawful) {
        std::vector<ErConfig> cfgs = er_grid(er_args, workers, true);
        if (cfgs.empty()) {
          for (std::size_t n : er_args.n) {
            ErConfig cfg;
            cfg.n = n;
            try {
              cfg.p = dense_probability(n, er_args.eps);
            } catch (const std::invalid_argument& e) {
              throw Exit{kUsage, e.what()};
            }
            cfg.trials = er_args.trials;
            cfg.seed = er_args.seed;
            cfg.confidence = er_args.confidence;
            cfg.workers = workers;
            cfgs.push_back(cfg);
          }
        }
        std::vector<PawfulExperiment> rows;
        for (const auto& cfg : cfgs) {
          rows.push_back(run_pawful_experiment(cfg));
          keep(rows.back().records);
        }
        write_pawful_csv(*sink, rows);
      }
      write_trial_dump(er_args, out, all);
      return kOk;
    }
    if (*verify) {
      if (graph_path.empty() == (random_n == 0)) throw Exit{kUsage, "give exactly one of a graph file or --random"};
      HomologyOptions o;
      o.morse = MorseMode::Off;
      o.shortcut_trees = false;
      o.torsion = true;
      o.workers = workers;
      std::size_t failures = 0;
      if (!graph_path.empty()) {
        TheoremReport r = verify_theorems(load(graph_path), lmax, o);
        report_text(out, r);
        failures = r.failures();
      } else {
        for (std::size_t t = 0; t < random_trials; ++t) {
          auto rng = trial_rng(verify_seed, t);
          Graph g = random_girth_graph(random_n, 5, 3, rng);
          TheoremReport r = verify_theorems(g, lmax, o);
          out << "trial " << t << ": ";
          report_text(out, r);
          failures += r.failures();
        }
      }
      return failures ? kFail : kOk;
    }
  } catch (const Exit& e) {
    if (!e.message.empty()) err << "maghom: " << e.message << '\n';
    return e.code;
  } catch (const BudgetExceeded& e) {
    err << "maghom: " << e.what() << '\n';
    return kInconclusive;
  } catch (const std::exception& e) {
    err << "maghom: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace maghom::cli
