#include "graphmean/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <functional>

namespace graphmean {

namespace {

double off_diagonal_norm(const std::vector<double>& a, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) sum += a[static_cast<std::size_t>(i) * n + j] * a[static_cast<std::size_t>(i) * n + j];
  return std::sqrt(sum);
}

}  // namespace

Spectrum symmetric_eigenvalues(std::span<const double> matrix, int n,
                               const JacobiOptions& options) {
  if (n < 1) throw std::invalid_argument("symmetric_eigenvalues: n must be >= 1");
  const auto nn = static_cast<std::size_t>(n);
  if (matrix.size() != nn * nn)
    throw std::invalid_argument("symmetric_eigenvalues: matrix must hold n*n entries");

  std::vector<double> a(matrix.begin(), matrix.end());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(a[i * nn + j] - a[j * nn + i]) > options.symmetry_tol)
        throw std::invalid_argument("symmetric_eigenvalues: input is not symmetric");

  const double tol = options.tol_per_n * n;
  double off = off_diagonal_norm(a, n);
  int sweep = 0;
  while (off > tol) {
    if (sweep++ >= options.max_sweeps)
      throw EigensolverError("Jacobi iteration did not converge within the sweep cap", off);
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * nn + q];
        if (apq == 0.0) continue;
        const double tau = (a[q * nn + q] - a[p * nn + p]) / (2.0 * apq);
        // hypot keeps the shift stable for large |tau|.
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double app = a[p * nn + p];
        const double aqq = a[q * nn + q];
        a[p * nn + p] = app - t * apq;
        a[q * nn + q] = aqq + t * apq;
        a[p * nn + q] = 0.0;
        a[q * nn + p] = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a[i * nn + p];
          const double aiq = a[i * nn + q];
          a[i * nn + p] = c * aip - s * aiq;
          a[p * nn + i] = a[i * nn + p];
          a[i * nn + q] = s * aip + c * aiq;
          a[q * nn + i] = a[i * nn + q];
        }
      }
    }
    off = off_diagonal_norm(a, n);
  }

  Spectrum spectrum;
  spectrum.values.resize(nn);
  for (int i = 0; i < n; ++i) spectrum.values[i] = a[i * nn + i];
  std::sort(spectrum.values.begin(), spectrum.values.end(), std::greater<>());
  return spectrum;
}

Spectrum adjacency_spectrum(const Graph& g) {
  const int n = g.n();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> dense(nn * nn, 0.0);
  for (const auto& [i, j] : g.edges()) {
    dense[static_cast<std::size_t>(i) * nn + j] = 1.0;
    dense[static_cast<std::size_t>(j) * nn + i] = 1.0;
  }
  return symmetric_eigenvalues(dense, n);
}

std::size_t hamming_distance(const Graph& a, const Graph& b) {
  if (a.n() != b.n())
    throw DimensionError("hamming_distance: graphs must share one vertex count");
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t w = 0; w < wa.size(); ++w)
    total += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
  return total;
}

double l2_norm(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

double spectral_distance(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size())
    throw DimensionError("spectral_distance: spectra must have equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double spectral_distance(const Graph& a, const Graph& b) {
  if (a.n() != b.n())
    throw DimensionError("spectral_distance: graphs must share one vertex count");
  return spectral_distance(adjacency_spectrum(a), adjacency_spectrum(b));
}

double edges_from_spectrum(const Spectrum& s) {
  double sum = 0.0;
  for (double v : s.values) sum += v * v;
  return sum / 2.0;
}

}  // namespace graphmean
