#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "maghom/chain.hpp"
#include "maghom/graph.hpp"
#include "maghom/linalg.hpp"

namespace maghom {

enum class MorseMode {
  Auto,  ///< girth matchings where gir_x >= 5 and the complex is not tiny
  On,    ///< girth matchings wherever gir_x >= 5
  Off,   ///< brute-force boundaries only
};

struct HomologyOptions {
  bool per_vertex = false;
  bool torsion = false;
  MorseMode morse = MorseMode::Auto;
  /// Closed form for tree components instead of linear algebra.
  bool shortcut_trees = true;
  /// Generator cap per (start vertex, length) complex.
  std::size_t budget = 20'000'000;
  /// 0 means "all available threads"; 1 forces the serial path.
  unsigned workers = 0;
  RankOptions rank;
};

/// Ranks (and optionally torsion) of MH_{k,l} for 0 <= k <= l <= lmax.
struct HomologyTable {
  unsigned lmax = 0;
  std::size_t vertex_count = 0;
  /// Largest l fully computed; lower than lmax only when the budget ran out.
  std::optional<unsigned> complete_through;
  bool budget_exceeded = false;
  bool torsion_computed = false;

  /// groups[l][k], k <= l.
  std::vector<std::vector<HomologyGroup>> groups;
  /// chain_ranks[l][k] = rank MC_{k,l}; absent where a closed form was used.
  std::optional<std::vector<std::vector<std::uint64_t>>> chain_ranks;
  /// per_vertex[x][l][k] = rank MH^x_{k,l}.
  std::optional<std::vector<std::vector<std::vector<std::size_t>>>> per_vertex;

  std::size_t rank(unsigned k, unsigned l) const;
  const std::vector<Integer>& torsion(unsigned k, unsigned l) const;
  bool has(unsigned l) const noexcept { return complete_through && l <= *complete_through; }
};

/// Homology of every component and start vertex, summed. Torsion entries are
/// the cyclic factors of the summands, sorted; they are not merged into a
/// single invariant-factor chain.
HomologyTable compute_homology(const Graph& g, unsigned lmax, const HomologyOptions& options = {});

/// Single bidegree restricted to start vertex x.
HomologyGroup compute_homology_at(const Graph& g, VertexId x, unsigned k, unsigned l,
                                  const HomologyOptions& options = {});

/// MH^x_{*,l} for one start vertex of a prepared context, degrees 0..l.
/// `chain_sizes` receives rank MC^x_{k,l} when non-null.
std::vector<HomologyGroup> vertex_homology(const ChainContext& ctx, VertexId x, unsigned l,
                                           const HomologyOptions& options,
                                           std::vector<std::uint64_t>* chain_sizes = nullptr);

/// binom(l-1, k-1) * max_degree^l; zero for k > l. Requires k, l >= 1.
Integer rank_upper_bound(unsigned k, unsigned l, std::size_t max_degree);

/// First (x, k, l) with a per-vertex rank above rank_upper_bound, if any.
/// Requires a table with per_vertex data.
std::optional<std::array<unsigned, 3>> rank_bound_violation(const HomologyTable& t, std::size_t max_degree);

// ---------------------------------------------------------------------------
// Diagonality

enum class Verdict { Diagonal, NonDiagonal, DiagonalUpTo };

enum class CertificateKind {
  AllComponentsForest,
  Tree,
  UnicyclicShortCycles,
  CompleteGraph,
  Pawful,
  GirthWitness,
  OffDiagonalRank,
  ExhaustedToLmax,
  BudgetExceeded,
};

struct Certificate {
  CertificateKind kind = CertificateKind::AllComponentsForest;
  std::optional<Edge> edge;                   ///< GirthWitness
  std::optional<std::uint64_t> edge_girth;    ///< GirthWitness
  std::optional<std::array<unsigned, 2>> bidegree;  ///< (k, l) of the witness or off-diagonal group
  std::optional<unsigned> cycle_length;       ///< UnicyclicShortCycles
};

struct ComponentVerdict {
  VertexId component_id = 0;
  std::size_t vertex_count = 0;
  Verdict verdict = Verdict::Diagonal;
  unsigned up_to = 0;  ///< meaningful for DiagonalUpTo
  Certificate certificate;
};

struct DiagonalityVerdict {
  Verdict verdict = Verdict::Diagonal;
  unsigned up_to = 0;
  Certificate certificate;
  std::vector<ComponentVerdict> components;
};

struct DiagonalityOptions {
  HomologyOptions homology = [] {
    HomologyOptions o;
    o.torsion = true;
    return o;
  }();
};

/// Requires lmax >= 2.
DiagonalityVerdict decide_diagonality(const Graph& g, unsigned lmax, const DiagonalityOptions& options = {});

const char* to_string(Verdict v) noexcept;
const char* to_string(CertificateKind k) noexcept;
std::string describe(const DiagonalityVerdict& v);

// ---------------------------------------------------------------------------
// Magnitude

struct MagnitudeSeries {
  std::vector<Integer> coefficients;  ///< chi_0 .. chi_lmax
  friend bool operator==(const MagnitudeSeries&, const MagnitudeSeries&) = default;
};

MagnitudeSeries magnitude_from_homology(const HomologyTable& t);
/// Sum of the entries of Z^{-1}, Z[x][y] = q^{d(x,y)}, per component, as a
/// power series truncated after q^lmax.
MagnitudeSeries magnitude_from_metric(const Graph& g, unsigned lmax);
/// Alternating sum of chain-group ranks, counted without enumerating tuples.
MagnitudeSeries magnitude_from_chains(const Graph& g, unsigned lmax);
/// rank MC_{k,l} for 0 <= k <= l <= lmax by dynamic programming over lengths.
std::vector<std::vector<std::uint64_t>> chain_group_ranks(const Graph& g, unsigned lmax);

// ---------------------------------------------------------------------------
// Theorem checks

struct TheoremInstance {
  std::string theorem;  ///< "diagonal-rank", "vanishing-band", "girth-witness", "diagonal-total"
  std::string where;    ///< vertex, edge or "graph" plus bidegree
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct TheoremReport {
  std::vector<TheoremInstance> instances;
  bool all_pass() const noexcept;
  std::size_t failures() const noexcept;
};

/// Compares computed homology with the girth theorems wherever their
/// hypotheses hold. Default homology options use brute force.
TheoremReport verify_theorems(const Graph& g, unsigned lmax);
TheoremReport verify_theorems(const Graph& g, unsigned lmax, const HomologyOptions& options);
/// Checks an existing table; lets tests feed a corrupted one.
TheoremReport check_theorems(const Graph& g, const HomologyTable& t);

// ---------------------------------------------------------------------------
// Serialization ("inf" is the only spelling of Infinity)

inline constexpr const char* kCsvHeader = "# maghom-csv v1";

void write_table_csv(std::ostream& os, const HomologyTable& t);
void write_table_json(std::ostream& os, const HomologyTable& t);
void write_magnitude_csv(std::ostream& os, const MagnitudeSeries& m);
void write_verdict_json(std::ostream& os, const DiagonalityVerdict& v);

}  // namespace maghom
