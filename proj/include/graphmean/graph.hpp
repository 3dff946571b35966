#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphmean {

/// Thrown when two graphs (or a graph and a sample) disagree on vertex count.
class DimensionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a statistic or solver is asked for an empty sample.
class EmptySampleError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Structured failure for the JSON graph / sample / edge-probability formats.
class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    MalformedJson,    // not JSON, wrong types, or wrong shape
    BadVertexIndex,   // vertex outside [1, n] or endpoints not i < j
    SelfLoop,         // edge [i, i]
    DuplicateEdge,    // same pair listed twice
    BadProbability,   // probability outside [0, 1]
  };

  ParseError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Labeled simple undirected graph on n >= 1 vertices.
///
/// Only the strict upper triangle of the adjacency matrix is stored, as a
/// packed bit vector of length n(n-1)/2, so symmetry and the zero diagonal
/// hold structurally. Pair (i, j) with 0 <= i < j < n lives at bit
/// i*(2n-i-1)/2 + (j-i-1); bit order is therefore the lexicographic order of
/// the pairs. Vertices are 0-based in this API and 1-based in the JSON
/// format.
class Graph {
 public:
  /// Graph with no edges.
  explicit Graph(int n);

  /// Graph whose lowest pair_count() bits are taken from `bits`.
  /// Requires pair_count() <= 64.
  static Graph from_bits(int n, std::uint64_t bits);

  int n() const noexcept { return n_; }

  /// Number of vertex pairs, n(n-1)/2 == length of the bit vector.
  std::size_t pair_count() const noexcept { return pair_count_; }

  /// Bit index of the pair (i, j); the endpoints may be given in any order.
  static std::size_t pair_index(int n, int i, int j);

  bool has_edge(int i, int j) const;
  void set_edge(int i, int j, bool present);
  void flip_edge(int i, int j);

  bool test_bit(std::size_t index) const;
  void set_bit(std::size_t index, bool value);
  void flip_bit(std::size_t index);

  /// Number of edges (popcount of the bit vector).
  std::size_t edge_count() const noexcept;

  /// Packed bit vector, least significant word first.
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// First storage word; the whole graph when pair_count() <= 64.
  std::uint64_t low_bits() const noexcept { return words_.empty() ? 0 : words_[0]; }

  /// Edges as 0-based (i, j) pairs in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

  /// Orders by n, then by the bit vector read as an unsigned integer.
  friend std::strong_ordering operator<=>(const Graph& a, const Graph& b);

 private:
  int n_ = 1;
  std::size_t pair_count_ = 0;
  std::vector<std::uint64_t> words_;
};

Graph complete_graph(int n);
Graph empty_graph(int n);

inline std::size_t edge_count(const Graph& g) noexcept { return g.edge_count(); }

/// Ordered, nonempty collection of graphs on one shared vertex set.
class GraphSample {
 public:
  /// Throws EmptySampleError when `graphs` is empty and DimensionError when
  /// the vertex counts are not all equal.
  explicit GraphSample(std::vector<Graph> graphs);

  std::size_t size() const noexcept { return graphs_.size(); }
  int n() const noexcept { return graphs_.front().n(); }
  const Graph& operator[](std::size_t k) const { return graphs_[k]; }
  const std::vector<Graph>& graphs() const noexcept { return graphs_; }

  auto begin() const noexcept { return graphs_.begin(); }
  auto end() const noexcept { return graphs_.end(); }

 private:
  std::vector<Graph> graphs_;
};

/// Exact integer accumulations of edge counts over a sample.
struct EdgeTotals {
  unsigned long long sum = 0;     // sum of e(A^(k))
  unsigned long long sum_sq = 0;  // sum of e(A^(k))^2
  std::size_t count = 0;          // N
};

EdgeTotals sample_edge_totals(const GraphSample& sample);

/// Sample mean and variance of the edge counts. Derived from EdgeTotals, so
/// the only floating-point steps are the final divisions.
struct EdgeStats {
  double e_bar = 0.0;
  double sigma2 = 0.0;
  double sigma = 0.0;
};

EdgeStats sample_edge_stats(const GraphSample& sample);

/// JSON graph format: {"n": <int>, "edges": [[i, j], ...]} with
/// 1 <= i < j <= n, no duplicates. The canonical serialization lists edges
/// in lexicographic order and is byte-stable.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

/// Sample format: {"graphs": [<graph>, ...]}; unknown keys are ignored.
GraphSample parse_sample(std::string_view text);
std::string serialize_sample(const GraphSample& sample);

}  // namespace graphmean
