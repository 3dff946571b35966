#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphmean/graph.hpp"
#include "graphmean/metrics.hpp"
#include "graphmean/rng.hpp"

namespace graphmean {

enum class MetricKind { Hamming, SpectralAdjacency };

/// Order of the dispersion function: q = 1 selects the median, q = 2 the mean.
enum class FrechetOrder : int { Median = 1, Mean = 2 };

enum class SolveMethod { MajorityRule, Exhaustive, LocalSearch };

const char* to_string(MetricKind metric);
const char* to_string(SolveMethod method);

/// Result of a Fréchet mean/median solve. `exact` is true only when global
/// optimality is guaranteed (majority rule for the Hamming median, or full
/// enumeration); minimizers are listed in ascending bit-vector order and all
/// attain f_value within 1e-9 relative.
struct SolverReport {
  std::vector<Graph> minimizers;
  double f_value = 0.0;
  SolveMethod method = SolveMethod::Exhaustive;
  std::uint64_t evaluations = 0;
  bool exact = false;
};

/// Thrown when exhaustive enumeration is requested above the vertex cap.
class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(int n, int cap)
      : std::runtime_error("exhaustive search supports at most " + std::to_string(cap) +
                           " vertices, got " + std::to_string(n)),
        n_(n),
        cap_(cap) {}
  int n() const noexcept { return n_; }
  int cap() const noexcept { return cap_; }

 private:
  int n_;
  int cap_;
};

/// Dispersion (1/N) sum_k d(candidate, G^(k))^q.
double frechet_function(const Graph& candidate, const GraphSample& sample,
                        MetricKind metric, FrechetOrder order);

/// Integer numerator of the Hamming dispersion: sum_k d_H^q. Exact, so solver
/// comparisons on Hamming inputs never touch floating point.
unsigned long long hamming_frechet_total(const Graph& candidate, const GraphSample& sample,
                                         FrechetOrder order);

/// Closed-form Hamming median: edge (i, j) is present iff at least half of
/// the sample contains it (a tie at exactly N/2 keeps the edge).
SolverReport median_majority_rule(const GraphSample& sample);

inline constexpr int kDefaultExhaustiveCap = 6;

/// Sorted adjacency spectra of every graph on n vertices, indexed by the
/// adjacency bit vector. Lets repeated spectral solves at one vertex count
/// skip the eigensolver entirely.
class CandidateSpectra {
 public:
  explicit CandidateSpectra(int n);

  int n() const noexcept { return n_; }
  std::uint64_t count() const noexcept { return count_; }
  std::span<const double> spectrum(std::uint64_t bits) const {
    return {values_.data() + bits * static_cast<std::uint64_t>(n_),
            static_cast<std::size_t>(n_)};
  }

 private:
  int n_;
  std::uint64_t count_;
  std::vector<double> values_;
};

/// Global minimization of the dispersion by enumerating all 2^(n(n-1)/2)
/// graphs. Returns the full argmin set. Throws CapExceededError when
/// sample.n() > cap. `spectra` (optional) must match sample.n().
SolverReport exhaustive_frechet(const GraphSample& sample, MetricKind metric,
                                FrechetOrder order, int cap = kDefaultExhaustiveCap,
                                const CandidateSpectra* spectra = nullptr);

struct LocalSearchConfig {
  int restarts = 8;
  int max_iters = 1000;
  std::uint64_t seed = kDefaultSeed;
};

/// Steepest-descent over single-edge flips, restarted from the majority-rule
/// graph, the best sample member, and `restarts` random graphs (restart r
/// draws from an engine seeded with seed + r). Strict improvement only, so
/// every start terminates; the result is a local optimum and f_value is an
/// upper bound on the global minimum.
SolverReport local_search_frechet(const GraphSample& sample, MetricKind metric,
                                  FrechetOrder order, const LocalSearchConfig& config = {});

}  // namespace graphmean
