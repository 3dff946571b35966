#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphmean/frechet.hpp"
#include "graphmean/graph.hpp"
#include "graphmean/random_graphs.hpp"

namespace graphmean {

/// Exact rational arithmetic for the integer-valued inequality checks.
using Rat = boost::rational<long long>;

double to_double(const Rat& r);

/// Exact edge statistics of a sample: ebar = sum/N and
/// sigma2 = (N*sum_sq - sum^2)/N^2, both as rationals.
struct ExactStats {
  EdgeTotals totals;
  Rat ebar;
  Rat sigma2;
};

ExactStats exact_edge_stats(const GraphSample& sample);

/// One evaluated inequality with both sides materialized. pass is
/// lhs <= rhs + tol (tol = 0 for integer/rational comparisons, 1e-6 for
/// checks that consume eigensolver output); strict records lhs < rhs.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool strict = false;
  bool pass = false;
  double tol = 0.0;
};

/// Builds a check from floating-point sides. Throws std::logic_error if a
/// pass would contradict lhs <= rhs + tol.
BoundCheck make_check(std::string name, double lhs, double rhs, double tol);

/// Builds a check whose verdict was decided in exact arithmetic; the double
/// sides are carried for reporting only.
BoundCheck make_check_exact(std::string name, double lhs, double rhs, bool pass, bool strict);

struct ReportMeta {
  int n = 0;
  std::size_t sample_size = 0;
  std::string metric;
  std::string method;
  bool exact = true;
  std::uint64_t seed = 0;
  std::optional<std::string> suite;
  std::optional<std::size_t> trials;
  std::optional<double> spectral_tol;
  std::optional<double> spectral_edge_ratio;  // max observed e / ebar over spectral minimizers
  std::optional<double> tightness_ratio;
};

struct BoundReport {
  ReportMeta meta;
  std::vector<BoundCheck> checks;
  bool all_pass = true;

  void add(BoundCheck check);
};

std::string to_json_string(const BoundReport& report, int indent = 2);

/// How minimizers are obtained for the inequality checks.
enum class SolverPolicy {
  ExhaustiveExact,  // full argmin sets for every metric/order; needs n <= cap
  MajorityOnly,     // Hamming median via majority rule only; any n
};

/// Edge-count bounds for mean and median minimizers under both metrics:
/// e(mean_H) <= 2 ebar + sigma/sqrt(2), e(median_H) <= 2 ebar,
/// e(mean_s) <= 9 ebar, e(median_s) <= 9 ebar, each taken over every
/// minimizer returned by the solver.
BoundReport verify_theorem1(const GraphSample& sample, SolverPolicy policy,
                            int cap = kDefaultExhaustiveCap,
                            const CandidateSpectra* spectra = nullptr,
                            std::uint64_t seed = 0);

/// The supporting inequality chain, every side materialized:
///  (a) |e(A) - e(B)| <= d_H(A, B) over all sample pairs,
///  (b) (e(mean_H) - ebar)^2 <= F_2(mean_H),
///  (c) F_2(median_H) <= 2 ebar^2 + sigma^2,
///  (d) the two Hamming bounds of verify_theorem1 (identical records),
///  (e) min_k ||lambda(A^(k))|| <= sqrt(2 ebar) (a sample-spectrum witness),
///  (f) 0.5 ||mean spectrum||^2 <= ebar,
///  (g) ||lambda(mean_s)|| <= 3 sqrt(2 ebar),
///  (h) ||lambda(median_s)|| <= 3 sqrt(2 ebar),
///  (i) max(e(mean_s), e(median_s)) <= 9 ebar.
/// Under MajorityOnly, the checks needing exhaustive argmin sets are skipped.
BoundReport verify_lemma_chain(const GraphSample& sample, SolverPolicy policy,
                               int cap = kDefaultExhaustiveCap,
                               const CandidateSpectra* spectra = nullptr,
                               std::uint64_t seed = 0);

/// Extremal sample of 2N graphs (N+1 complete, N-1 empty) whose majority-rule
/// median is the complete graph. ratio = e(median)/ebar = 2N/(N+1) exactly,
/// and ebar = e/2 + e/(2N) is asserted in rational arithmetic.
struct TightnessResult {
  Rat ratio;
  double ratio_value = 0.0;
  Rat ebar;
  std::size_t median_edges = 0;
  BoundReport report;
};

TightnessResult tightness_experiment(int n, long long N);

/// One sample of a growth sequence, with volumes normalized by n^2.
struct SparsityRow {
  int n = 0;
  std::size_t sample_size = 0;
  double ebar = 0.0;
  std::size_t median_edges = 0;
  std::optional<std::size_t> mean_edges;
  bool mean_exact = false;
  double input_density = 0.0;
  double median_density = 0.0;
  std::optional<double> mean_density;
  double bound2_density = 0.0;
  double bound9_density = 0.0;
};

struct SparsityResult {
  std::vector<SparsityRow> rows;
  bool sparse_input = false;  // input densities strictly decreasing along the sequence
  BoundReport report;
};

/// Density transfer along a sequence of samples of growing n: records median
/// (exact) and mean (exhaustive under the cap, otherwise local-search)
/// densities next to the 2*ebar and 9*ebar reference levels, checks
/// e(median) <= 2 ebar per sample, and, when the input is sparse, that the
/// median density is non-increasing.
SparsityResult verify_corollary_sparsity(const std::vector<GraphSample>& sequence,
                                         std::uint64_t seed = 0, bool include_mean = true,
                                         int cap = kDefaultExhaustiveCap);

/// Randomized verification campaign behind the `verify` CLI subcommand.
/// Suites: theorem1 | lemmas | tightness | sparsity | all. Trials are
/// distributed over `jobs` workers and merged by trial index, so the output
/// is byte-identical for any worker count.
struct CampaignConfig {
  std::string suite = "all";
  std::size_t trials = 100;
  int n = 4;
  std::size_t sample_size = 5;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  int cap = kDefaultExhaustiveCap;
};

struct VerifyOutput {
  BoundReport report;
  bool has_rows = false;
  std::vector<SparsityRow> sparsity_rows;
};

VerifyOutput run_verify_campaign(const CampaignConfig& config);

std::string to_json_string(const VerifyOutput& output, int indent = 2);

}  // namespace graphmean
