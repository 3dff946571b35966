#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "graphmean/graph.hpp"

namespace graphmean {

/// Adjacency eigenvalues sorted descending (lambda_1 >= ... >= lambda_n).
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  std::span<const double> span() const noexcept { return values; }
};

/// Cyclic Jacobi sweep parameters. Convergence is declared when the
/// off-diagonal Frobenius norm drops below tol_per_n * n.
struct JacobiOptions {
  int max_sweeps = 100;
  double tol_per_n = 1e-12;
  double symmetry_tol = 1e-12;
};

/// Thrown when the Jacobi iteration fails to converge within the sweep cap;
/// carries the remaining off-diagonal residual.
class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& message, double residual)
      : std::runtime_error(message), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Eigenvalues of a dense symmetric matrix (row-major, n*n entries) by the
/// cyclic Jacobi rotation method. The input is copied; entries must satisfy
/// |m[i][j] - m[j][i]| <= symmetry_tol or std::invalid_argument is thrown.
Spectrum symmetric_eigenvalues(std::span<const double> matrix, int n,
                               const JacobiOptions& options = {});

/// Spectrum of the (densified) adjacency matrix of g.
Spectrum adjacency_spectrum(const Graph& g);

/// Number of edge disagreements between two graphs on the same vertex set.
/// Throws DimensionError when the vertex counts differ.
std::size_t hamming_distance(const Graph& a, const Graph& b);

/// l2 distance between two descending-sorted spectra of equal length.
double spectral_distance(const Spectrum& a, const Spectrum& b);

/// Adjacency spectral pseudometric: l2 distance between the sorted adjacency
/// spectra. Vanishes on isospectral graphs, so this is not a metric.
double spectral_distance(const Graph& a, const Graph& b);

/// Edge count recovered from a spectrum: ||s||^2 / 2.
double edges_from_spectrum(const Spectrum& s);

/// l2 norm of a spectrum (or any coefficient vector).
double l2_norm(std::span<const double> values);

}  // namespace graphmean
