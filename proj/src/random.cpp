#include "maghom/random.hpp"

#include <omp.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace maghom {

ErConfig ErConfig::from_c(std::size_t n, double c) {
  ErConfig cfg;
  cfg.n = n;
  cfg.c = c;
  cfg.p = n == 0 ? 0.0 : c / static_cast<double>(n);
  return cfg;
}

double ErConfig::mean_degree() const noexcept { return c ? *c : p * static_cast<double>(n); }

void ErConfig::validate() const {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Graph sample_er(std::size_t n, double p, std::mt19937_64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  if (p == 1.0) return complete_graph(n);
  std::vector<Edge> edges;
  if (p > 0.0 && n >= 2) {
    // Pairs (v, w), w < v, in row order; the skip between hits is geometric.
    const double log_q = std::log1p(-p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      const double skip = std::floor(std::log1p(-uniform01(rng)) / log_q);
      if (skip > static_cast<double>(nn) * static_cast<double>(nn)) break;
      w += 1 + static_cast<std::int64_t>(skip);
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.push_back(Edge::make(static_cast<VertexId>(w), static_cast<VertexId>(v)));
    }
  }
  return Graph(n, edges);
}

Graph random_girth_graph(std::size_t n, unsigned min_girth, unsigned max_degree, std::mt19937_64& rng) {
  if (min_girth < 3) throw std::invalid_argument("min_girth must be at least 3");
  std::vector<Edge> pairs;
  for (VertexId v = 1; v < n; ++v)
    for (VertexId u = 0; u < v; ++u) pairs.push_back(Edge{u, v});
  // Fisher-Yates on our own uniform draw keeps replay independent of the stdlib.
  for (std::size_t i = pairs.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
    std::swap(pairs[i - 1], pairs[std::min(j, i - 1)]);
  }
  std::vector<Edge> kept;
  std::vector<unsigned> deg(n, 0);
  for (const Edge& e : pairs) {
    if (deg[e.u] >= max_degree || deg[e.v] >= max_degree) continue;
    Graph cur(n, kept);
    auto d = bfs_distances(cur, e.u)[e.v];
    if (d && *d + 1 < min_girth) continue;
    kept.push_back(e);
    ++deg[e.u];
    ++deg[e.v];
  }
  return Graph(n, kept);
}

double limiting_nondiag_prob(double c) {
  if (!(c > 0.0)) throw std::domain_error("c must be positive");
  if (c == 1.0) throw std::domain_error("no limit is known at c = 1");
  if (c > 1.0) return 1.0;
  const double e = c / 2 + c * c / 4 + c * c * c / 6 + c * c * c * c / 8;
  return 1.0 - std::sqrt(1.0 - c) * std::exp(e);
}

SeriesValue u_of_c(double c, unsigned terms) {
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  if (terms == 0) throw std::invalid_argument("terms must be positive");
  const double log_x = std::log(c) - c;
  auto log_term = [&](double i) { return (i - 2) * std::log(i) - std::lgamma(i + 1) + i * log_x; };
  double sum = 0.0;
  for (unsigned i = 1; i <= terms; ++i) sum += std::exp(log_term(i));
  // Consecutive ratios (1 + 1/i)^{i-2} x increase to e x.
  const double rho = std::exp(1.0 + log_x);
  SeriesValue out;
  out.value = sum / c;
  out.remainder_bound =
      rho < 1.0 ? std::exp(log_term(terms + 1.0)) / (1.0 - rho) / c : std::numeric_limits<double>::infinity();
  return out;
}

double dense_probability(std::size_t n, double eps) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  const double x = (3.0 + eps) * std::log(static_cast<double>(n)) / static_cast<double>(n);
  return std::min(1.0, std::cbrt(x));
}

Proportion proportion(std::size_t successes, std::size_t total, double level) {
  if (total == 0) throw std::invalid_argument("proportion of zero trials");
  if (successes > total) throw std::invalid_argument("more successes than trials");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + level / 2);
  const double nt = static_cast<double>(total);
  const double ph = static_cast<double>(successes) / nt;
  const double denom = 1 + z * z / nt;
  const double centre = (ph + z * z / (2 * nt)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / nt + z * z / (4 * nt * nt)) / denom;
  Proportion out;
  out.successes = successes;
  out.total = total;
  out.estimate = ph;
  // Clamp so the interval always contains the estimate despite rounding.
  out.ci.lo = std::min(ph, std::max(0.0, centre - half));
  out.ci.hi = std::max(ph, std::min(1.0, centre + half));
  return out;
}

double MeanStat::std_error() const noexcept {
  return count == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(count));
}

bool MeanStat::within(double v, double z) const noexcept { return std::abs(mean - v) <= z * std_error(); }

MeanStat summarize(const std::vector<double>& values) {
  MeanStat s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(values.size() - 1);
  }
  return s;
}

namespace {

void fill_structure(TrialRecord& r, const Graph& g) {
  r.edges = g.edge_count();
  r.components = components(g).count();
  r.circuit_rank = circuit_rank(g);
  r.tree_vertices = tree_vertex_count(g);
  if (r.circuit_rank + g.vertex_count() != r.edges + r.components)
    throw std::logic_error("circuit rank identity failed in trial " + std::to_string(r.trial));
}

// Runs body(trial, record) for every trial, in parallel unless workers == 1.
template <class Body>
std::vector<TrialRecord> run_trials(const ErConfig& cfg, Body body) {
  cfg.validate();
  std::vector<TrialRecord> records(cfg.trials);
  std::vector<std::exception_ptr> errors(cfg.trials);
  auto one = [&](std::size_t t) {
    try {
      auto rng = trial_rng(cfg.seed, t);
      Graph g = sample_er(cfg.n, cfg.p, rng);
      records[t].trial = t;
      fill_structure(records[t], g);
      body(g, records[t]);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  const int workers = cfg.workers == 0 ? omp_get_max_threads() : static_cast<int>(cfg.workers);
  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) one(t);
  } else {
    const auto count = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t t = 0; t < count; ++t) one(static_cast<std::size_t>(t));
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return records;
}

DiagonalityOptions trial_diagonality_options(const ErConfig& cfg) {
  DiagonalityOptions o;
  o.homology.workers = 1;
  o.homology.budget = cfg.budget;
  return o;
}

}  // namespace

DiagonalityResult run_diagonality_experiment(const ErConfig& cfg) {
  if (cfg.lmax < 2) throw std::invalid_argument("diagonality experiment needs lmax >= 2");
  const DiagonalityOptions opts = trial_diagonality_options(cfg);
  DiagonalityResult out;
  out.config = cfg;
  out.records = run_trials(cfg, [&](const Graph& g, TrialRecord& r) {
    DiagonalityVerdict v = decide_diagonality(g, cfg.lmax, opts);
    r.verdict = v.verdict;
    r.certificate = v.certificate.kind;
    if (v.certificate.kind == CertificateKind::GirthWitness) {
      const Extended ge = girth_edge(g, *v.certificate.edge);
      if (!ge.is_finite() || ge.value() < 5) throw std::logic_error("girth witness failed to recheck");
    }
  });
  for (const auto& r : out.records) {
    switch (*r.verdict) {
      case Verdict::Diagonal:
        ++out.diagonal;
        break;
      case Verdict::NonDiagonal:
        ++out.nondiagonal;
        break;
      case Verdict::DiagonalUpTo:
        ++out.unresolved;
        break;
    }
  }
  const std::size_t resolved = out.diagonal + out.nondiagonal;
  if (resolved > 0) out.nondiag = proportion(out.nondiagonal, resolved, cfg.confidence);
  out.unresolved_fraction = static_cast<double>(out.unresolved) / static_cast<double>(cfg.trials);
  const double c = cfg.mean_degree();
  if (c > 0.0 && c != 1.0) out.limit = limiting_nondiag_prob(c);
  return out;
}

CycleResult run_cycle_experiment(const ErConfig& cfg, unsigned m) {
  if (m < 3) throw std::invalid_argument("cycle experiment needs m >= 3");
  CycleResult out;
  out.config = cfg;
  out.config.max_cycle = m;
  out.records = run_trials(cfg, [&](const Graph& g, TrialRecord& r) { r.cycles = count_cycles_up_to(g, m); });
  const double c = cfg.mean_degree();
  for (unsigned i = 3; i <= m; ++i) {
    std::vector<double> xs;
    xs.reserve(out.records.size());
    for (const auto& r : out.records) xs.push_back(static_cast<double>(r.cycles.at(i)));
    out.per_length.push_back(CycleStat{i, summarize(xs), std::pow(c, i) / (2.0 * i)});
  }
  if (m >= 5) {
    std::size_t zero = 0;
    for (const auto& r : out.records) {
      bool none = true;
      for (unsigned i = 5; i <= m; ++i) none = none && r.cycles.at(i) == 0;
      zero += none;
    }
    out.no_long_cycles = proportion(zero, out.records.size(), cfg.confidence);
    double s = 0.0;
    for (unsigned i = 5; i <= m; ++i) s += std::pow(c, i) / i;
    out.no_long_cycles_predicted = std::exp(-0.5 * s);
  }
  return out;
}

WllnResult run_wlln_experiment(const ErConfig& cfg, const std::vector<std::pair<unsigned, unsigned>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("no (k, l) pairs requested");
  unsigned top = 0;
  for (auto [k, l] : pairs) {
    if (k > l || l > cfg.lmax) throw std::invalid_argument("pair (" + std::to_string(k) + "," + std::to_string(l) +
                                                           ") outside 0 <= k <= l <= lmax");
    top = std::max(top, l);
  }
  HomologyOptions ho;
  ho.workers = 1;
  ho.budget = cfg.budget;
  WllnResult out;
  out.config = cfg;
  out.records = run_trials(cfg, [&](const Graph& g, TrialRecord& r) {
    HomologyTable t = compute_homology(g, top, ho);
    if (!t.has(top)) {
      r.verdict = Verdict::DiagonalUpTo;
      return;
    }
    for (unsigned l = 0; l <= top; ++l)
      for (unsigned k = 0; k <= l; ++k) r.ranks[{k, l}] = t.rank(k, l);
  });
  const auto n = static_cast<double>(cfg.n);
  const double c = cfg.mean_degree();
  std::vector<const TrialRecord*> complete;
  for (const auto& r : out.records) {
    if (r.ranks.empty()) {
      ++out.budget_exceeded;
    } else {
      complete.push_back(&r);
    }
  }
  for (auto [k, l] : pairs) {
    std::vector<double> xs;
    for (const auto* r : complete) xs.push_back(static_cast<double>(r->ranks.at({k, l})) / n);
    out.pairs.push_back(WllnStat{k, l, summarize(xs), k == l ? c : 0.0});
  }
  for (unsigned l = 1; l <= top; ++l) {
    std::vector<double> xs;
    for (const auto* r : complete) {
      double chi = 0.0;
      for (unsigned k = 0; k <= l; ++k) chi += (k % 2 ? -1.0 : 1.0) * static_cast<double>(r->ranks.at({k, l}));
      xs.push_back(chi / n);
    }
    out.chi.push_back(ChiStat{l, summarize(xs), (l % 2 ? -1.0 : 1.0) * c});
  }
  return out;
}

PawfulExperiment run_pawful_experiment(const ErConfig& cfg) {
  PawfulExperiment out;
  out.config = cfg;
  out.records = run_trials(cfg, [](const Graph& g, TrialRecord& r) { r.pawful = is_pawful(g).pawful; });
  std::size_t hits = 0;
  for (const auto& r : out.records) hits += *r.pawful;
  out.pawful = proportion(hits, out.records.size(), cfg.confidence);
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {
std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string opt_c(const ErConfig& cfg) { return cfg.c ? num(*cfg.c) : ""; }
}  // namespace

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records, unsigned max_cycle) {
  os << kCsvHeader << '\n';
  os << "trial,verdict,certificate,edges,components,circuit_rank,tree_vertices,pawful";
  for (unsigned i = 3; i <= max_cycle; ++i) os << ",C" << i;
  os << '\n';
  for (const auto& r : records) {
    os << r.trial << ',' << (r.verdict ? to_string(*r.verdict) : "") << ','
       << (r.certificate ? to_string(*r.certificate) : "") << ',' << r.edges << ',' << r.components << ','
       << r.circuit_rank << ',' << r.tree_vertices << ',' << (r.pawful ? (*r.pawful ? "1" : "0") : "");
    for (unsigned i = 3; i <= max_cycle; ++i) {
      os << ',';
      if (auto it = r.cycles.find(i); it != r.cycles.end()) os << it->second;
    }
    os << '\n';
  }
}

void write_diagonality_curve(std::ostream& os, const std::vector<DiagonalityResult>& rows) {
  os << kCsvHeader << '\n';
  os << "n,c,p,trials,empirical,ci_lo,ci_hi,limit_formula,unresolved_fraction,diagonal,nondiagonal,unresolved\n";
  for (const auto& r : rows) {
    os << r.config.n << ',' << opt_c(r.config) << ',' << r.config.p << ',' << r.config.trials << ',';
    if (r.nondiag) {
      os << r.nondiag->estimate << ',' << r.nondiag->ci.lo << ',' << r.nondiag->ci.hi;
    } else {
      os << ",,";
    }
    os << ',' << (r.limit ? num(*r.limit) : "") << ',' << r.unresolved_fraction << ',' << r.diagonal << ','
       << r.nondiagonal << ',' << r.unresolved << '\n';
  }
}

void write_cycle_csv(std::ostream& os, const std::vector<CycleResult>& rows) {
  os << kCsvHeader << '\n';
  os << "n,c,p,trials,statistic,i,empirical,std_error,predicted\n";
  for (const auto& r : rows) {
    const std::string prefix = std::to_string(r.config.n) + ',' + opt_c(r.config) + ',';
    for (const auto& s : r.per_length) {
      os << prefix << r.config.p << ',' << r.config.trials << ",mean," << s.length << ',' << s.count.mean << ','
         << s.count.std_error() << ',' << s.poisson_mean << '\n';
    }
    if (r.no_long_cycles) {
      const double ph = r.no_long_cycles->estimate;
      const double se = std::sqrt(ph * (1 - ph) / static_cast<double>(r.no_long_cycles->total));
      os << prefix << r.config.p << ',' << r.config.trials << ",p_no_long_cycles,5.." << r.config.max_cycle << ','
         << ph << ',' << se << ',' << *r.no_long_cycles_predicted << '\n';
    }
  }
}

void write_wlln_csv(std::ostream& os, const std::vector<WllnResult>& rows) {
  os << kCsvHeader << '\n';
  os << "n,c,p,trials,statistic,k,l,mean,std_error,expected\n";
  for (const auto& r : rows) {
    const std::string prefix = std::to_string(r.config.n) + ',' + opt_c(r.config) + ',';
    for (const auto& s : r.pairs) {
      os << prefix << r.config.p << ',' << r.config.trials << ",rank_over_n," << s.k << ',' << s.l << ','
         << s.rank_over_n.mean << ',' << s.rank_over_n.std_error() << ',' << s.expected << '\n';
    }
    for (const auto& s : r.chi) {
      os << prefix << r.config.p << ',' << r.config.trials << ",chi_over_n,," << s.l << ',' << s.chi_over_n.mean << ','
         << s.chi_over_n.std_error() << ',' << s.expected << '\n';
    }
  }
}

void write_pawful_csv(std::ostream& os, const std::vector<PawfulExperiment>& rows) {
  os << kCsvHeader << '\n';
  os << "n,p,trials,pawful_frequency,ci_lo,ci_hi\n";
  for (const auto& r : rows) {
    os << r.config.n << ',' << r.config.p << ',' << r.config.trials << ',' << r.pawful.estimate << ','
       << r.pawful.ci.lo << ',' << r.pawful.ci.hi << '\n';
  }
}

}  // namespace maghom
