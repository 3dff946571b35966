#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "graphmean/graph.hpp"
#include "graphmean/rng.hpp"

namespace graphmean {

/// Per-pair Bernoulli edge probabilities for the inhomogeneous Erdős–Rényi
/// model, stored over the strict upper triangle like Graph.
class EdgeProbabilityMatrix {
 public:
  explicit EdgeProbabilityMatrix(int n, double default_p = 0.0);

  int n() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return p_.size(); }

  double probability(int i, int j) const { return p_[Graph::pair_index(n_, i, j)]; }
  double probability_at(std::size_t index) const { return p_[index]; }
  void set_probability(int i, int j, double p);
  void set_probability_at(std::size_t index, double p);

 private:
  int n_;
  std::vector<double> p_;
};

/// Model format: {"n": <int>, "p": [[i, j, p_ij], ...], "default_p": <real>}.
/// Pairs are 1-based with i < j; unlisted pairs take default_p (0 when the
/// field is absent).
EdgeProbabilityMatrix parse_probability_matrix(std::string_view text);

/// One draw from the model. Pair t is present iff the uniform variate of
/// substream t of `seed` (see split_stream) falls below p_t, so draws are
/// reproducible edge-by-edge regardless of evaluation order or threading.
Graph sample_ier(const EdgeProbabilityMatrix& model, std::uint64_t seed);

/// Population Fréchet mean/median graph of the model: edge iff p_ij > 1/2
/// (strict, so a fair coin contributes no edge).
Graph population_mean_graph(const EdgeProbabilityMatrix& model);

/// Population dispersion of order 2 at g:
/// [sum p - sum_{(i,j) in E(g)} (2p - 1)]^2 + sum p(1 - p).
double population_frechet_f2(const EdgeProbabilityMatrix& model, const Graph& g);

/// Upper bound (E[e])^2 + Var(e) on the population dispersion at the
/// population mean graph.
double population_f2_bound(const EdgeProbabilityMatrix& model);

}  // namespace graphmean
