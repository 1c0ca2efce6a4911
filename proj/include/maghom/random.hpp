#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "maghom/graph.hpp"
#include "maghom/homology.hpp"

namespace maghom {

struct ErConfig {
  std::size_t n = 0;
  double p = 0.0;
  /// Set when p was derived as c / n; carried into outputs.
  std::optional<double> c;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  unsigned lmax = 5;
  unsigned max_cycle = 8;
  double confidence = 0.95;
  /// Trial-level parallelism; 0 means all available threads.
  unsigned workers = 0;
  /// Generator cap handed to the homology fallback.
  std::size_t budget = 2'000'000;

  static ErConfig from_c(std::size_t n, double c);
  /// c if set, otherwise p * n.
  double mean_degree() const noexcept;
  /// Throws std::invalid_argument on p outside [0,1], n = 0 or trials = 0.
  void validate() const;
};

/// Independent stream per trial: replaying (seed, trial) reproduces the graph.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);

/// G(n, p). Skips geometrically over the pair sequence; p = 1 gives K_n.
Graph sample_er(std::size_t n, double p, std::mt19937_64& rng);

/// Random graph with max degree <= max_degree and girth >= min_girth: candidate
/// pairs in random order, each kept when both ends have spare degree and the
/// edge would close no cycle shorter than min_girth.
Graph random_girth_graph(std::size_t n, unsigned min_girth, unsigned max_degree, std::mt19937_64& rng);

/// Limit of P(G(n, c/n) non-diagonal). Throws std::domain_error for c <= 0 or c = 1.
double limiting_nondiag_prob(double c);

struct SeriesValue {
  double value = 0.0;
  /// Bound on the omitted tail; infinite when the ratio test gives none.
  double remainder_bound = 0.0;
};

/// Partial sum of (1/c) sum_i i^{i-2}/i! (c e^{-c})^i over the first `terms` terms.
SeriesValue u_of_c(double c, unsigned terms);

/// p = ((3 + eps) ln n / n)^{1/3}, the dense regime.
double dense_probability(std::size_t n, double eps);

// ---------------------------------------------------------------------------
// Statistics

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

struct Proportion {
  std::size_t successes = 0;
  std::size_t total = 0;
  double estimate = 0.0;
  Interval ci;  ///< Wilson score interval
};

/// Throws std::invalid_argument for total = 0 or level outside (0,1).
Proportion proportion(std::size_t successes, std::size_t total, double level);

struct MeanStat {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< sample variance
  double std_error() const noexcept;
  /// |mean - v| <= z standard errors.
  bool within(double v, double z) const noexcept;
};

MeanStat summarize(const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Trials

struct TrialRecord {
  std::size_t trial = 0;
  std::optional<Verdict> verdict;
  std::optional<CertificateKind> certificate;
  std::map<unsigned, std::uint64_t> cycles;  ///< C_3..C_m when counted
  std::size_t edges = 0;
  std::size_t components = 0;
  std::size_t circuit_rank = 0;
  std::size_t tree_vertices = 0;
  /// (k, l) -> rank MH_{k,l} when homology was computed.
  std::map<std::pair<unsigned, unsigned>, std::size_t> ranks;
  std::optional<bool> pawful;
};

struct DiagonalityResult {
  ErConfig config;
  std::vector<TrialRecord> records;
  std::size_t diagonal = 0;
  std::size_t nondiagonal = 0;
  std::size_t unresolved = 0;
  /// Non-diagonal frequency among resolved trials; total = 0 leaves it empty.
  std::optional<Proportion> nondiag;
  double unresolved_fraction = 0.0;
  /// limiting_nondiag_prob(c), absent at c = 1 or c = 0.
  std::optional<double> limit;
};

DiagonalityResult run_diagonality_experiment(const ErConfig& cfg);

struct CycleStat {
  unsigned length = 0;
  MeanStat count;
  double poisson_mean = 0.0;  ///< c^i / (2i)
};

struct CycleResult {
  ErConfig config;
  std::vector<TrialRecord> records;
  std::vector<CycleStat> per_length;  ///< i = 3..m
  /// Empirical and predicted P(C_5 = ... = C_m = 0); absent for m < 5.
  std::optional<Proportion> no_long_cycles;
  std::optional<double> no_long_cycles_predicted;
};

/// Requires m >= 3.
CycleResult run_cycle_experiment(const ErConfig& cfg, unsigned m);

struct WllnStat {
  unsigned k = 0;
  unsigned l = 0;
  MeanStat rank_over_n;
  double expected = 0.0;  ///< c delta_{k,l}
};

struct ChiStat {
  unsigned l = 0;
  MeanStat chi_over_n;
  double expected = 0.0;  ///< (-1)^l c
};

struct WllnResult {
  ErConfig config;
  std::vector<TrialRecord> records;
  std::vector<WllnStat> pairs;
  std::vector<ChiStat> chi;  ///< l = 1..max l among pairs
  std::size_t budget_exceeded = 0;
};

/// Requires k <= l <= cfg.lmax for every pair.
WllnResult run_wlln_experiment(const ErConfig& cfg, const std::vector<std::pair<unsigned, unsigned>>& pairs);

struct PawfulExperiment {
  ErConfig config;
  std::vector<TrialRecord> records;
  Proportion pawful;
};

PawfulExperiment run_pawful_experiment(const ErConfig& cfg);

// ---------------------------------------------------------------------------
// CSV (first line is kCsvHeader)

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records, unsigned max_cycle);

/// One row per configuration: c, empirical, ci_lo, ci_hi, limit_formula, unresolved_fraction, plus counts.
void write_diagonality_curve(std::ostream& os, const std::vector<DiagonalityResult>& rows);
void write_cycle_csv(std::ostream& os, const std::vector<CycleResult>& rows);
void write_wlln_csv(std::ostream& os, const std::vector<WllnResult>& rows);
void write_pawful_csv(std::ostream& os, const std::vector<PawfulExperiment>& rows);

}  // namespace maghom
