#include "maghom/homology.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <sstream>

#include "json.hpp"
#include "maghom/morse.hpp"

namespace maghom {

namespace {

// Below this many generators the matchings cost more than they save.
constexpr std::size_t kAutoMorseThreshold = 256;

std::size_t total_size(const ChainComplex& c) {
  std::size_t s = 0;
  for (auto v : c.sizes) s += v;
  return s;
}

// Homology from degree `from` upward, using the complex truncated so that
// degree `from` still sees its incoming and outgoing maps.
std::vector<HomologyGroup> homology_range(const ChainComplex& c, unsigned lo, unsigned hi,
                                          const HomologyOptions& options) {
  const unsigned top = std::min(hi + 1, c.max_degree());
  ChainComplex t = truncate(c, lo == c.min_degree ? lo : lo - 1, top);
  auto groups = complex_homology(t, options.torsion, options.rank);
  std::vector<HomologyGroup> out;
  for (unsigned k = lo; k <= hi; ++k) out.push_back(std::move(groups.at(k - t.min_degree)));
  return out;
}

}  // namespace

std::vector<HomologyGroup> vertex_homology(const ChainContext& ctx, VertexId x, unsigned l,
                                           const HomologyOptions& options, std::vector<std::uint64_t>* chain_sizes) {
  TupleComplex c = build_complex(ctx, l, Restriction{x, std::nullopt}, options.budget);
  if (chain_sizes) chain_sizes->assign(c.algebra.sizes.begin(), c.algebra.sizes.end());
  if (l == 0) return complex_homology(c.algebra, options.torsion, options.rank);

  const Extended gx = girth_vertex(ctx.graph(), x);
  const bool morse = options.morse != MorseMode::Off && gx >= Extended(5) &&
                     (options.morse == MorseMode::On || total_size(c.algebra) >= kAutoMorseThreshold);
  if (!morse) return complex_homology(c.algebra, options.torsion, options.rank);

  MorseMatching f = build_f_matching(ctx, c, l - 1);
  ReducedComplex rf = reduce(c.algebra, f);
  const unsigned i = *h_depth(gx, l);
  if (i == 0) return complex_homology(rf.algebra, options.torsion, options.rank);

  // Degrees l-i..l come from the h-reduction of the truncation l-i-1..l.
  ChainComplex d = truncate(rf.algebra, l - i - 1, l);
  MorseMatching h = build_h_matching(ctx, c, rf, d, i);
  ReducedComplex rh = reduce(d, h);
  std::vector<HomologyGroup> out = homology_range(rf.algebra, 0, l - i - 1, options);
  auto upper = complex_homology(rh.algebra, options.torsion, options.rank);
  for (unsigned k = l - i; k <= l; ++k) out.push_back(std::move(upper.at(k - rh.algebra.min_degree)));
  return out;
}

Integer rank_upper_bound(unsigned k, unsigned l, std::size_t max_degree) {
  if (k < 1 || l < 1) throw std::invalid_argument("rank bound needs k, l >= 1");
  if (k > l) return Integer(0);
  // binom(l-1, k-1) by the multiplicative formula; every prefix is integral.
  Integer b(1);
  for (unsigned j = 1; j <= k - 1; ++j) {
    b *= Integer(static_cast<long long>(l - k + j));
    b = b.divexact(Integer(static_cast<long long>(j)));
  }
  Integer p(1);
  for (unsigned j = 0; j < l; ++j) p *= Integer(static_cast<long long>(max_degree));
  return b * p;
}

std::size_t HomologyTable::rank(unsigned k, unsigned l) const {
  if (k > l) return 0;
  return groups.at(l).at(k).rank;
}

const std::vector<Integer>& HomologyTable::torsion(unsigned k, unsigned l) const { return groups.at(l).at(k).torsion; }

namespace {

struct WorkItem {
  std::size_t component;
  VertexId local;
  VertexId global;
};

struct WorkResult {
  // [l][k]; only l <= last computed
  std::vector<std::vector<HomologyGroup>> groups;
  std::vector<std::vector<std::uint64_t>> chains;
  bool budget_exceeded = false;
  std::exception_ptr error;
};

void check_bound(const std::vector<HomologyGroup>& groups, unsigned l, std::size_t max_degree, VertexId x) {
  for (unsigned k = 1; k <= l && l >= 1; ++k) {
    if (Integer(static_cast<long long>(groups[k].rank)) > rank_upper_bound(k, l, max_degree)) {
      throw std::logic_error("rank bound violated at vertex " + std::to_string(x) + " (" + std::to_string(k) + "," +
                             std::to_string(l) + ")");
    }
  }
}

void run_item(const ChainContext& ctx, const WorkItem& item, unsigned lmax, const HomologyOptions& options,
              WorkResult& out) {
  try {
    const std::size_t dmax = ctx.graph().max_degree();
    for (unsigned l = 0; l <= lmax; ++l) {
      std::vector<std::uint64_t> sizes;
      std::vector<HomologyGroup> g;
      try {
        g = vertex_homology(ctx, item.local, l, options, &sizes);
      } catch (const BudgetExceeded&) {
        out.budget_exceeded = true;
        return;
      }
      check_bound(g, l, dmax, item.global);
      out.groups.push_back(std::move(g));
      out.chains.push_back(std::move(sizes));
    }
  } catch (...) {
    out.error = std::current_exception();
  }
}

unsigned resolve_workers(unsigned requested) {
  if (requested == 0) return static_cast<unsigned>(std::max(1, omp_get_max_threads()));
  return requested;
}

}  // namespace

HomologyTable compute_homology(const Graph& g, unsigned lmax, const HomologyOptions& options) {
  HomologyTable t;
  t.lmax = lmax;
  t.vertex_count = g.vertex_count();
  t.torsion_computed = options.torsion;
  t.groups.resize(lmax + 1);
  for (unsigned l = 0; l <= lmax; ++l) t.groups[l].resize(l + 1);
  std::vector<std::vector<std::uint64_t>> chains(lmax + 1);
  for (unsigned l = 0; l <= lmax; ++l) chains[l].assign(l + 1, 0);
  bool chains_known = true;
  if (options.per_vertex) {
    t.per_vertex.emplace(g.vertex_count());
    for (auto& pv : *t.per_vertex) {
      pv.resize(lmax + 1);
      for (unsigned l = 0; l <= lmax; ++l) pv[l].assign(l + 1, 0);
    }
  }

  const ComponentDecomposition dec = components(g);
  std::vector<std::optional<ChainContext>> contexts(dec.count());
  std::vector<WorkItem> items;
  for (std::size_t ci = 0; ci < dec.count(); ++ci) {
    const Component& comp = dec.components[ci];
    if (comp.circuit_rank() == 0 && options.shortcut_trees) {
      // Trees: MH^x_{0,0} = Z, MH^x_{l,l} = Z^{deg x}, nothing else.
      chains_known = false;
      for (VertexId x : comp.vertices) {
        t.groups[0][0].rank += 1;
        for (unsigned l = 1; l <= lmax; ++l) t.groups[l][l].rank += g.degree(x);
        if (t.per_vertex) {
          (*t.per_vertex)[x][0][0] = 1;
          for (unsigned l = 1; l <= lmax; ++l) (*t.per_vertex)[x][l][l] = g.degree(x);
        }
      }
      continue;
    }
    contexts[ci].emplace(g.induced(comp.vertices), lmax);
    for (std::size_t i = 0; i < comp.vertices.size(); ++i)
      items.push_back(WorkItem{ci, static_cast<VertexId>(i), comp.vertices[i]});
  }

  std::vector<WorkResult> results(items.size());
  const unsigned workers = resolve_workers(options.workers);
  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i)
      run_item(*contexts[items[i].component], items[i], lmax, options, results[i]);
  } else {
    const auto count = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(workers))
    for (std::int64_t i = 0; i < count; ++i)
      run_item(*contexts[items[i].component], items[i], lmax, options, results[i]);
  }

  // Merge in item order so the table never depends on scheduling.
  std::optional<unsigned> complete = lmax;
  std::vector<std::vector<std::vector<Integer>>> torsion(lmax + 1);
  for (unsigned l = 0; l <= lmax; ++l) torsion[l].resize(l + 1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const WorkResult& r = results[i];
    if (r.error) std::rethrow_exception(r.error);
    if (r.budget_exceeded) {
      t.budget_exceeded = true;
      if (r.groups.empty()) {
        complete.reset();
      } else if (complete) {
        complete = std::min(*complete, static_cast<unsigned>(r.groups.size() - 1));
      }
    }
    for (unsigned l = 0; l < r.groups.size(); ++l) {
      for (unsigned k = 0; k <= l; ++k) {
        t.groups[l][k].rank += r.groups[l][k].rank;
        for (const auto& f : r.groups[l][k].torsion) torsion[l][k].push_back(f);
        chains[l][k] += r.chains[l][k];
        if (t.per_vertex) (*t.per_vertex)[items[i].global][l][k] = r.groups[l][k].rank;
      }
    }
  }
  for (unsigned l = 0; l <= lmax; ++l) {
    for (unsigned k = 0; k <= l; ++k) {
      std::sort(torsion[l][k].begin(), torsion[l][k].end());
      t.groups[l][k].torsion = std::move(torsion[l][k]);
    }
  }
  t.complete_through = complete;
  if (chains_known) t.chain_ranks = std::move(chains);
  return t;
}

HomologyGroup compute_homology_at(const Graph& g, VertexId x, unsigned k, unsigned l, const HomologyOptions& options) {
  if (x >= g.vertex_count()) throw std::out_of_range("vertex out of range");
  if (k > l) return {};
  ComponentDecomposition dec = components(g);
  const Component& comp = dec.components[dec.component_of[x]];
  if (comp.circuit_rank() == 0 && options.shortcut_trees) {
    HomologyGroup h;
    if (k == l) h.rank = l == 0 ? 1 : g.degree(x);
    return h;
  }
  ChainContext ctx(g.induced(comp.vertices), l);
  auto local = static_cast<VertexId>(std::lower_bound(comp.vertices.begin(), comp.vertices.end(), x) -
                                     comp.vertices.begin());
  auto groups = vertex_homology(ctx, local, l, options);
  check_bound(groups, l, ctx.graph().max_degree(), x);
  return groups.at(k);
}

std::optional<std::array<unsigned, 3>> rank_bound_violation(const HomologyTable& t, std::size_t max_degree) {
  if (!t.per_vertex) throw std::invalid_argument("rank bound check needs per-vertex data");
  for (std::size_t x = 0; x < t.per_vertex->size(); ++x) {
    const auto& pv = (*t.per_vertex)[x];
    for (unsigned l = 1; l < pv.size(); ++l) {
      if (!t.has(l)) break;
      for (unsigned k = 1; k <= l; ++k) {
        if (Integer(static_cast<long long>(pv[l][k])) > rank_upper_bound(k, l, max_degree)) {
          return std::array<unsigned, 3>{static_cast<unsigned>(x), k, l};
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Diagonality

namespace {

ComponentVerdict classify_component(const Graph& g, const Component& comp, unsigned lmax,
                                    const DiagonalityOptions& options) {
  ComponentVerdict cv;
  cv.component_id = comp.id;
  cv.vertex_count = comp.vertices.size();
  cv.up_to = lmax;
  auto diagonal = [&](CertificateKind k) {
    cv.verdict = Verdict::Diagonal;
    cv.certificate.kind = k;
    return cv;
  };
  if (comp.circuit_rank() == 0) return diagonal(CertificateKind::Tree);
  Graph sub = g.induced(comp.vertices);
  if (comp.circuit_rank() == 1) {
    Extended cyc = girth(sub);
    if (cyc == Extended(3) || cyc == Extended(4)) {
      cv.certificate.cycle_length = static_cast<unsigned>(cyc.value());
      return diagonal(CertificateKind::UnicyclicShortCycles);
    }
  }
  if (is_complete(sub)) return diagonal(CertificateKind::CompleteGraph);
  if (is_pawful(sub).pawful) return diagonal(CertificateKind::Pawful);
  for (const Edge& e : sub.edges()) {
    Extended ge = girth_edge(sub, e);
    if (ge.is_finite() && ge.value() >= 5) {
      cv.verdict = Verdict::NonDiagonal;
      cv.certificate.kind = CertificateKind::GirthWitness;
      cv.certificate.edge = Edge::make(comp.vertices[e.u], comp.vertices[e.v]);
      cv.certificate.edge_girth = ge.value();
      cv.certificate.bidegree = std::array<unsigned, 2>{2, static_cast<unsigned>((ge.value() + 1) / 2)};
      return cv;
    }
  }
  HomologyOptions ho = options.homology;
  ho.per_vertex = false;
  HomologyTable t = compute_homology(sub, lmax, ho);
  const unsigned reached = t.complete_through.value_or(0);
  for (unsigned l = 1; l <= lmax && t.has(l); ++l) {
    for (unsigned k = 0; k < l; ++k) {
      if (!t.groups[l][k].is_zero()) {
        cv.verdict = Verdict::NonDiagonal;
        cv.certificate.kind = CertificateKind::OffDiagonalRank;
        cv.certificate.bidegree = std::array<unsigned, 2>{k, l};
        return cv;
      }
    }
  }
  cv.verdict = Verdict::DiagonalUpTo;
  cv.up_to = t.complete_through ? reached : 0;
  cv.certificate.kind = t.budget_exceeded ? CertificateKind::BudgetExceeded : CertificateKind::ExhaustedToLmax;
  return cv;
}

}  // namespace

DiagonalityVerdict decide_diagonality(const Graph& g, unsigned lmax, const DiagonalityOptions& options) {
  if (lmax < 2) throw std::invalid_argument("decide_diagonality needs lmax >= 2");
  DiagonalityVerdict out;
  const ComponentDecomposition dec = components(g);
  bool all_forest = true;
  const ComponentVerdict* first_nondiag = nullptr;
  const ComponentVerdict* first_unresolved = nullptr;
  const ComponentVerdict* first_cyclic = nullptr;
  out.components.reserve(dec.count());
  for (const Component& comp : dec.components) out.components.push_back(classify_component(g, comp, lmax, options));
  for (const auto& cv : out.components) {
    if (cv.certificate.kind != CertificateKind::Tree) {
      all_forest = false;
      if (!first_cyclic) first_cyclic = &cv;
    }
    if (cv.verdict == Verdict::NonDiagonal && !first_nondiag) first_nondiag = &cv;
    if (cv.verdict == Verdict::DiagonalUpTo && !first_unresolved) first_unresolved = &cv;
  }
  if (first_nondiag) {
    out.verdict = Verdict::NonDiagonal;
    out.certificate = first_nondiag->certificate;
  } else if (first_unresolved) {
    out.verdict = Verdict::DiagonalUpTo;
    out.up_to = lmax;
    for (const auto& cv : out.components)
      if (cv.verdict == Verdict::DiagonalUpTo) out.up_to = std::min(out.up_to, cv.up_to);
    out.certificate = first_unresolved->certificate;
  } else {
    out.verdict = Verdict::Diagonal;
    out.certificate = all_forest ? Certificate{} : first_cyclic->certificate;
  }
  return out;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Diagonal:
      return "Diagonal";
    case Verdict::NonDiagonal:
      return "NonDiagonal";
    case Verdict::DiagonalUpTo:
      return "DiagonalUpTo";
  }
  return "?";
}

const char* to_string(CertificateKind k) noexcept {
  switch (k) {
    case CertificateKind::AllComponentsForest:
      return "AllComponentsForest";
    case CertificateKind::Tree:
      return "Tree";
    case CertificateKind::UnicyclicShortCycles:
      return "UnicyclicShortCycles";
    case CertificateKind::CompleteGraph:
      return "CompleteGraph";
    case CertificateKind::Pawful:
      return "Pawful";
    case CertificateKind::GirthWitness:
      return "GirthWitness";
    case CertificateKind::OffDiagonalRank:
      return "OffDiagonalRank";
    case CertificateKind::ExhaustedToLmax:
      return "ExhaustedToLmax";
    case CertificateKind::BudgetExceeded:
      return "BudgetExceeded";
  }
  return "?";
}

namespace {
std::string describe_certificate(const Certificate& c) {
  std::ostringstream os;
  os << to_string(c.kind);
  if (c.edge) os << " edge=" << c.edge->u << "-" << c.edge->v;
  if (c.edge_girth) os << " girth=" << *c.edge_girth;
  if (c.cycle_length) os << " cycle=" << *c.cycle_length;
  if (c.bidegree) os << " bidegree=(" << (*c.bidegree)[0] << "," << (*c.bidegree)[1] << ")";
  return os.str();
}
}  // namespace

std::string describe(const DiagonalityVerdict& v) {
  std::ostringstream os;
  os << to_string(v.verdict);
  if (v.verdict == Verdict::DiagonalUpTo) os << "(" << v.up_to << ")";
  os << ' ' << describe_certificate(v.certificate);
  return os.str();
}

// ---------------------------------------------------------------------------
// Magnitude

MagnitudeSeries magnitude_from_homology(const HomologyTable& t) {
  MagnitudeSeries m;
  const unsigned top = t.complete_through.value_or(0);
  if (!t.complete_through) return m;
  for (unsigned l = 0; l <= top; ++l) {
    Integer chi;
    for (unsigned k = 0; k <= l; ++k) {
      Integer r(static_cast<long long>(t.groups[l][k].rank));
      if (k % 2) {
        chi -= r;
      } else {
        chi += r;
      }
    }
    m.coefficients.push_back(std::move(chi));
  }
  return m;
}

MagnitudeSeries magnitude_from_metric(const Graph& g, unsigned lmax) {
  MagnitudeSeries m;
  m.coefficients.assign(lmax + 1, Integer());
  for (const Component& comp : components(g).components) {
    Graph sub = g.induced(comp.vertices);
    DistanceMatrix d(sub);
    const std::size_t n = sub.vertex_count();
    // w = Z^{-1} 1 with Z = I + N and N divisible by q, so coefficient c of w
    // only needs lower coefficients: w_c = [c = 0] - (N w)_c.
    std::vector<std::vector<Integer>> w(n, std::vector<Integer>(lmax + 1));
    for (unsigned c = 0; c <= lmax; ++c) {
      for (std::size_t x = 0; x < n; ++x) {
        Integer acc(c == 0 ? 1 : 0);
        for (std::size_t y = 0; y < n; ++y) {
          if (y == x) continue;
          const std::uint32_t dxy = d.hops(static_cast<VertexId>(x), static_cast<VertexId>(y));
          if (dxy <= c) acc -= w[y][c - dxy];
        }
        w[x][c] = std::move(acc);
      }
    }
    for (std::size_t x = 0; x < n; ++x)
      for (unsigned c = 0; c <= lmax; ++c) m.coefficients[c] += w[x][c];
  }
  return m;
}

std::vector<std::vector<std::uint64_t>> chain_group_ranks(const Graph& g, unsigned lmax) {
  std::vector<std::vector<std::uint64_t>> out(lmax + 1);
  for (unsigned l = 0; l <= lmax; ++l) out[l].assign(l + 1, 0);
  auto add = [](std::uint64_t& a, std::uint64_t b) {
    if (__builtin_add_overflow(a, b, &a)) throw std::overflow_error("chain group rank exceeds 64 bits");
  };
  for (const Component& comp : components(g).components) {
    Graph sub = g.induced(comp.vertices);
    ChainContext ctx(sub, lmax);
    const DistanceMatrix& d = ctx.distances();
    const std::size_t n = sub.vertex_count();
    // cnt[k][L][v]: tuples of degree k and length L ending at v.
    std::vector<std::vector<std::vector<std::uint64_t>>> cnt(
        lmax + 1, std::vector<std::vector<std::uint64_t>>(lmax + 1, std::vector<std::uint64_t>(n, 0)));
    for (std::size_t v = 0; v < n; ++v) cnt[0][0][v] = 1;
    for (unsigned k = 1; k <= lmax; ++k) {
      for (unsigned L = k; L <= lmax; ++L) {
        for (std::size_t v = 0; v < n; ++v) {
          std::uint64_t s = 0;
          for (VertexId u : ctx.ball(static_cast<VertexId>(v))) {
            const std::uint32_t step = d.hops(u, static_cast<VertexId>(v));
            if (step <= L) add(s, cnt[k - 1][L - step][u]);
          }
          cnt[k][L][v] = s;
        }
      }
    }
    for (unsigned l = 0; l <= lmax; ++l)
      for (unsigned k = 0; k <= l; ++k)
        for (std::size_t v = 0; v < n; ++v) add(out[l][k], cnt[k][l][v]);
  }
  return out;
}

MagnitudeSeries magnitude_from_chains(const Graph& g, unsigned lmax) {
  auto ranks = chain_group_ranks(g, lmax);
  MagnitudeSeries m;
  for (unsigned l = 0; l <= lmax; ++l) {
    Integer chi;
    for (unsigned k = 0; k <= l; ++k) {
      Integer r(static_cast<long long>(ranks[l][k]));
      if (k % 2) {
        chi -= r;
      } else {
        chi += r;
      }
    }
    m.coefficients.push_back(std::move(chi));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Theorem checks

bool TheoremReport::all_pass() const noexcept { return failures() == 0; }

std::size_t TheoremReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(), [](const TheoremInstance& i) { return !i.pass; }));
}

namespace {
std::string bideg(unsigned k, unsigned l) { return "(" + std::to_string(k) + "," + std::to_string(l) + ")"; }

std::string group_text(const HomologyGroup& h) {
  std::string s = "rank " + std::to_string(h.rank);
  if (!h.torsion.empty()) {
    s += " torsion";
    for (const auto& f : h.torsion) s += " " + f.to_string();
  }
  return s;
}
}  // namespace

TheoremReport check_theorems(const Graph& g, const HomologyTable& t) {
  if (!t.per_vertex) throw std::invalid_argument("theorem checks need per-vertex data");
  TheoremReport rep;
  const GirthReport gr = girth_report(g);
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (VertexId x = 0; x < n; ++x) {
    const Extended gx = gr.per_vertex[x];
    if (gx < Extended(5)) continue;
    const auto& pv = (*t.per_vertex)[x];
    for (unsigned l = 1; l <= t.lmax && t.has(l); ++l) {
      rep.instances.push_back({"diagonal-rank", "x=" + std::to_string(x) + " " + bideg(l, l),
                               std::to_string(g.degree(x)), std::to_string(pv[l][l]), pv[l][l] == g.degree(x)});
      const unsigned band =
          gx.is_infinite() ? l : static_cast<unsigned>(std::min<std::uint64_t>((gx.value() - 5) / 2, l));
      for (unsigned j = 1; j <= band; ++j) {
        rep.instances.push_back({"vanishing-band", "x=" + std::to_string(x) + " " + bideg(l - j, l), "0",
                                 std::to_string(pv[l][l - j]), pv[l][l - j] == 0});
      }
    }
  }
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    const Extended ge = gr.per_edge[ei];
    if (!ge.is_finite() || ge.value() < 5) continue;
    const auto l = static_cast<unsigned>((ge.value() + 1) / 2);
    if (l > t.lmax || !t.has(l)) continue;
    const HomologyGroup& h = t.groups[l][2];
    const Edge& e = g.edges()[ei];
    rep.instances.push_back({"girth-witness",
                             "e=" + std::to_string(e.u) + "-" + std::to_string(e.v) + " gir_e=" + ge.to_string() + " " +
                                 bideg(2, l),
                             "nonzero", group_text(h), !h.is_zero()});
  }
  if (gr.global >= Extended(5)) {
    for (unsigned l = 1; l <= t.lmax && t.has(l); ++l) {
      const HomologyGroup& h = t.groups[l][l];
      const std::size_t want = 2 * g.edge_count();
      rep.instances.push_back({"diagonal-total", "graph " + bideg(l, l), "rank " + std::to_string(want), group_text(h),
                               h.rank == want && (!t.torsion_computed || h.torsion.empty())});
      const unsigned band = gr.global.is_infinite()
                                ? l
                                : static_cast<unsigned>(std::min<std::uint64_t>((gr.global.value() - 5) / 2, l));
      for (unsigned j = 1; j <= band; ++j) {
        const HomologyGroup& z = t.groups[l][l - j];
        rep.instances.push_back({"vanishing-total", "graph " + bideg(l - j, l), "0", group_text(z), z.is_zero()});
      }
    }
  }
  return rep;
}

TheoremReport verify_theorems(const Graph& g, unsigned lmax, const HomologyOptions& options) {
  HomologyOptions o = options;
  o.per_vertex = true;
  return check_theorems(g, compute_homology(g, lmax, o));
}

TheoremReport verify_theorems(const Graph& g, unsigned lmax) {
  HomologyOptions o;
  o.morse = MorseMode::Off;
  o.shortcut_trees = false;
  o.torsion = true;
  return verify_theorems(g, lmax, o);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string torsion_text(const std::vector<Integer>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ";" : "") + t[i].to_string();
  return s;
}

nlohmann::json integer_json(const Integer& v) {
  if (v.is_small()) return v.small_value();
  return v.to_string();
}

}  // namespace

void write_table_csv(std::ostream& os, const HomologyTable& t) {
  os << kCsvHeader << '\n';
  os << "vertex,k,l,rank,torsion\n";
  const unsigned top = t.complete_through.value_or(0);
  if (!t.complete_through) return;
  for (unsigned l = 0; l <= top; ++l)
    for (unsigned k = 0; k <= l; ++k)
      os << "all," << k << ',' << l << ',' << t.groups[l][k].rank << ',' << torsion_text(t.groups[l][k].torsion)
         << '\n';
  if (t.per_vertex) {
    for (std::size_t x = 0; x < t.per_vertex->size(); ++x)
      for (unsigned l = 0; l <= top; ++l)
        for (unsigned k = 0; k <= l; ++k) os << x << ',' << k << ',' << l << ',' << (*t.per_vertex)[x][l][k] << ",\n";
  }
}

void write_table_json(std::ostream& os, const HomologyTable& t) {
  nlohmann::json j;
  j["format"] = "maghom-table v1";
  j["lmax"] = t.lmax;
  j["vertex_count"] = t.vertex_count;
  j["complete_through"] = t.complete_through ? nlohmann::json(*t.complete_through) : nlohmann::json(nullptr);
  j["budget_exceeded"] = t.budget_exceeded;
  j["torsion_computed"] = t.torsion_computed;
  nlohmann::json groups = nlohmann::json::array();
  const unsigned top = t.complete_through.value_or(0);
  for (unsigned l = 0; t.complete_through && l <= top; ++l) {
    for (unsigned k = 0; k <= l; ++k) {
      nlohmann::json tor = nlohmann::json::array();
      for (const auto& f : t.groups[l][k].torsion) tor.push_back(integer_json(f));
      groups.push_back({{"k", k}, {"l", l}, {"rank", t.groups[l][k].rank}, {"torsion", tor}});
    }
  }
  j["groups"] = groups;
  if (t.chain_ranks) j["chain_ranks"] = *t.chain_ranks;
  if (t.per_vertex) j["per_vertex"] = *t.per_vertex;
  os << j.dump(2) << '\n';
}

void write_magnitude_csv(std::ostream& os, const MagnitudeSeries& m) {
  os << kCsvHeader << '\n';
  os << "l,chi\n";
  for (std::size_t l = 0; l < m.coefficients.size(); ++l) os << l << ',' << m.coefficients[l] << '\n';
}

void write_verdict_json(std::ostream& os, const DiagonalityVerdict& v) {
  auto cert = [](const Certificate& c) {
    nlohmann::json j;
    j["kind"] = to_string(c.kind);
    if (c.edge) j["edge"] = {c.edge->u, c.edge->v};
    if (c.edge_girth) j["edge_girth"] = *c.edge_girth;
    if (c.cycle_length) j["cycle_length"] = *c.cycle_length;
    if (c.bidegree) j["bidegree"] = {(*c.bidegree)[0], (*c.bidegree)[1]};
    return j;
  };
  nlohmann::json j;
  j["verdict"] = to_string(v.verdict);
  if (v.verdict == Verdict::DiagonalUpTo) j["up_to"] = v.up_to;
  j["certificate"] = cert(v.certificate);
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : v.components) {
    nlohmann::json cj{{"id", c.component_id}, {"vertices", c.vertex_count}, {"verdict", to_string(c.verdict)}};
    if (c.verdict == Verdict::DiagonalUpTo) cj["up_to"] = c.up_to;
    cj["certificate"] = cert(c.certificate);
    comps.push_back(cj);
  }
  j["components"] = comps;
  os << j.dump(2) << '\n';
}

}  // namespace maghom
