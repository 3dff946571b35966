#include "graphmean/frechet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

namespace graphmean {

namespace {

double squared_diff(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

// Shared by every spectral evaluation path so that cached and uncached
// solves produce bit-identical dispersion values. Terms are accumulated in
// sorted order, which makes the value independent of the sample ordering.
double spectral_dispersion_total(std::span<const double> candidate,
                                 const std::vector<Spectrum>& sample_spectra,
                                 FrechetOrder order) {
  std::vector<double> terms;
  terms.reserve(sample_spectra.size());
  for (const Spectrum& s : sample_spectra) {
    const double d2 = squared_diff(candidate, s.span());
    terms.push_back(order == FrechetOrder::Mean ? d2 : std::sqrt(d2));
  }
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double term : terms) total += term;
  return total;
}

std::vector<Spectrum> sample_spectra_of(const GraphSample& sample) {
  std::vector<Spectrum> spectra;
  spectra.reserve(sample.size());
  for (const Graph& g : sample) spectra.push_back(adjacency_spectrum(g));
  return spectra;
}

void require_same_n(const Graph& candidate, const GraphSample& sample, const char* where) {
  if (candidate.n() != sample.n())
    throw DimensionError(std::string(where) + ": candidate and sample vertex counts differ");
}

// Enumeration is only feasible while the bit vector fits a word with room to
// spare; beyond ~2^25 candidates the argmin set alone could exhaust memory.
constexpr std::size_t kMaxExhaustivePairBits = 25;

int largest_enumerable_n() {
  int n = 1;
  while (static_cast<std::size_t>(n + 1) * n / 2 <= kMaxExhaustivePairBits) ++n;
  return n;
}

}  // namespace

const char* to_string(MetricKind metric) {
  return metric == MetricKind::Hamming ? "hamming" : "spectral";
}

const char* to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::MajorityRule: return "majority_rule";
    case SolveMethod::Exhaustive: return "exhaustive";
    case SolveMethod::LocalSearch: return "local_search";
  }
  return "unknown";
}

unsigned long long hamming_frechet_total(const Graph& candidate, const GraphSample& sample,
                                         FrechetOrder order) {
  require_same_n(candidate, sample, "hamming_frechet_total");
  unsigned long long total = 0;
  for (const Graph& g : sample) {
    const auto d = static_cast<unsigned long long>(hamming_distance(candidate, g));
    total += order == FrechetOrder::Mean ? d * d : d;
  }
  return total;
}

double frechet_function(const Graph& candidate, const GraphSample& sample,
                        MetricKind metric, FrechetOrder order) {
  require_same_n(candidate, sample, "frechet_function");
  const auto count = static_cast<double>(sample.size());
  if (metric == MetricKind::Hamming)
    return static_cast<double>(hamming_frechet_total(candidate, sample, order)) / count;
  const Spectrum candidate_spectrum = adjacency_spectrum(candidate);
  const std::vector<Spectrum> spectra = sample_spectra_of(sample);
  return spectral_dispersion_total(candidate_spectrum.span(), spectra, order) / count;
}

SolverReport median_majority_rule(const GraphSample& sample) {
  const std::size_t half_threshold = sample.size();  // compare 2*count >= N
  Graph median(sample.n());
  for (std::size_t bit = 0; bit < median.pair_count(); ++bit) {
    std::size_t count = 0;
    for (const Graph& g : sample) count += g.test_bit(bit);
    median.set_bit(bit, 2 * count >= half_threshold);
  }
  SolverReport report;
  report.f_value = frechet_function(median, sample, MetricKind::Hamming, FrechetOrder::Median);
  report.minimizers.push_back(std::move(median));
  report.method = SolveMethod::MajorityRule;
  report.evaluations = 1;
  report.exact = true;
  return report;
}

CandidateSpectra::CandidateSpectra(int n) : n_(n) {
  const Graph probe(n);
  if (probe.pair_count() > kMaxExhaustivePairBits)
    throw CapExceededError(n, largest_enumerable_n());
  count_ = std::uint64_t{1} << probe.pair_count();
  values_.resize(count_ * static_cast<std::uint64_t>(n));
  for (std::uint64_t bits = 0; bits < count_; ++bits) {
    const Spectrum s = adjacency_spectrum(Graph::from_bits(n, bits));
    std::copy(s.values.begin(), s.values.end(),
              values_.begin() + static_cast<std::ptrdiff_t>(bits * static_cast<std::uint64_t>(n)));
  }
}

SolverReport exhaustive_frechet(const GraphSample& sample, MetricKind metric,
                                FrechetOrder order, int cap,
                                const CandidateSpectra* spectra) {
  const int n = sample.n();
  if (n > cap) throw CapExceededError(n, cap);
  const Graph probe(n);
  if (probe.pair_count() > kMaxExhaustivePairBits)
    throw CapExceededError(n, largest_enumerable_n());
  const std::uint64_t count = std::uint64_t{1} << probe.pair_count();

  SolverReport report;
  report.method = SolveMethod::Exhaustive;
  report.exact = true;
  report.evaluations = count;

  if (metric == MetricKind::Hamming) {
    std::vector<std::uint64_t> masks;
    masks.reserve(sample.size());
    for (const Graph& g : sample) masks.push_back(g.low_bits());

    unsigned long long best = ~0ull;
    std::vector<std::uint64_t> argmin;
    for (std::uint64_t bits = 0; bits < count; ++bits) {
      unsigned long long total = 0;
      for (std::uint64_t m : masks) {
        const auto d = static_cast<unsigned long long>(std::popcount(bits ^ m));
        total += order == FrechetOrder::Mean ? d * d : d;
      }
      if (total < best) {
        best = total;
        argmin.clear();
      }
      if (total == best) argmin.push_back(bits);
    }
    report.f_value = static_cast<double>(best) / static_cast<double>(sample.size());
    report.minimizers.reserve(argmin.size());
    for (std::uint64_t bits : argmin) report.minimizers.push_back(Graph::from_bits(n, bits));
    return report;
  }

  const CandidateSpectra* table = spectra;
  std::unique_ptr<CandidateSpectra> owned;
  if (table == nullptr) {
    owned = std::make_unique<CandidateSpectra>(n);
    table = owned.get();
  } else if (table->n() != n) {
    throw DimensionError("exhaustive_frechet: spectrum table built for a different n");
  }

  const std::vector<Spectrum> sample_spectra = sample_spectra_of(sample);
  std::vector<double> dispersion(count);
  const auto weight = static_cast<double>(sample.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    dispersion[bits] =
        spectral_dispersion_total(table->spectrum(bits), sample_spectra, order) / weight;
    best = std::min(best, dispersion[bits]);
  }
  // Membership uses relative tolerance 1e-9 with an absolute floor of the
  // same size, so eigensolver noise at best == 0 cannot split an
  // isospectral class.
  const double admit = best + 1e-9 * std::max(1.0, best);
  for (std::uint64_t bits = 0; bits < count; ++bits)
    if (dispersion[bits] <= admit) report.minimizers.push_back(Graph::from_bits(n, bits));
  report.f_value = best;
  return report;
}

namespace {

struct SearchOutcome {
  Graph graph;
  unsigned long long hamming_total = 0;
  double spectral_value = 0.0;
};

}  // namespace

SolverReport local_search_frechet(const GraphSample& sample, MetricKind metric,
                                  FrechetOrder order, const LocalSearchConfig& config) {
  const int n = sample.n();
  const std::size_t pairs = Graph(n).pair_count();
  const bool hamming = metric == MetricKind::Hamming;
  std::uint64_t evaluations = 0;

  std::vector<Spectrum> sample_spectra;
  if (!hamming) sample_spectra = sample_spectra_of(sample);

  const auto eval_hamming = [&](const Graph& g) {
    ++evaluations;
    return hamming_frechet_total(g, sample, order);
  };
  const auto eval_spectral = [&](const Graph& g) {
    ++evaluations;
    return spectral_dispersion_total(adjacency_spectrum(g).span(), sample_spectra, order) /
           static_cast<double>(sample.size());
  };

  // Steepest descent: move to the best strictly improving single-edge flip.
  const auto descend = [&](Graph g) {
    SearchOutcome out{g, 0, 0.0};
    if (hamming)
      out.hamming_total = eval_hamming(g);
    else
      out.spectral_value = eval_spectral(g);
    for (int iter = 0; iter < config.max_iters; ++iter) {
      bool improved = false;
      std::size_t best_bit = 0;
      unsigned long long best_total = out.hamming_total;
      double best_value = out.spectral_value;
      for (std::size_t bit = 0; bit < pairs; ++bit) {
        out.graph.flip_bit(bit);
        if (hamming) {
          const auto total = eval_hamming(out.graph);
          if (total < best_total) {
            best_total = total;
            best_bit = bit;
            improved = true;
          }
        } else {
          const double value = eval_spectral(out.graph);
          if (value < best_value) {
            best_value = value;
            best_bit = bit;
            improved = true;
          }
        }
        out.graph.flip_bit(bit);
      }
      if (!improved) break;
      out.graph.flip_bit(best_bit);
      out.hamming_total = best_total;
      out.spectral_value = best_value;
    }
    return out;
  };

  std::vector<Graph> starts;
  starts.push_back(median_majority_rule(sample).minimizers.front());
  {
    std::size_t best_k = 0;
    if (hamming) {
      unsigned long long best = eval_hamming(sample[0]);
      for (std::size_t k = 1; k < sample.size(); ++k)
        if (const auto t = eval_hamming(sample[k]); t < best) {
          best = t;
          best_k = k;
        }
    } else {
      double best = eval_spectral(sample[0]);
      for (std::size_t k = 1; k < sample.size(); ++k)
        if (const double v = eval_spectral(sample[k]); v < best) {
          best = v;
          best_k = k;
        }
    }
    starts.push_back(sample[best_k]);
  }
  for (int r = 0; r < config.restarts; ++r) {
    std::mt19937_64 engine(config.seed + static_cast<std::uint64_t>(r));
    Graph g(n);
    for (std::size_t bit = 0; bit < pairs; ++bit) g.set_bit(bit, engine() & 1u);
    starts.push_back(std::move(g));
  }

  std::vector<SearchOutcome> outcomes;
  outcomes.reserve(starts.size());
  for (const Graph& start : starts) outcomes.push_back(descend(start));

  const auto better = [&](const SearchOutcome& a, const SearchOutcome& b) {
    if (hamming) return a.hamming_total < b.hamming_total;
    return a.spectral_value < b.spectral_value;
  };
  const SearchOutcome* best = &outcomes.front();
  for (const SearchOutcome& o : outcomes)
    if (better(o, *best)) best = &o;

  SolverReport report;
  report.method = SolveMethod::LocalSearch;
  report.exact = false;
  report.evaluations = evaluations;
  report.f_value = hamming ? static_cast<double>(best->hamming_total) /
                                 static_cast<double>(sample.size())
                           : best->spectral_value;
  for (const SearchOutcome& o : outcomes) {
    const bool tie = hamming ? o.hamming_total == best->hamming_total
                             : o.spectral_value == best->spectral_value;
    if (tie) report.minimizers.push_back(o.graph);
  }
  std::sort(report.minimizers.begin(), report.minimizers.end());
  report.minimizers.erase(std::unique(report.minimizers.begin(), report.minimizers.end()),
                          report.minimizers.end());
  return report;
}

}  // namespace graphmean
