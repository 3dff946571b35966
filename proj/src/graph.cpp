#include "graphmean/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "json.hpp"

namespace graphmean {

namespace {

std::size_t pairs_of(int n) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

}  // namespace

Graph::Graph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Graph: vertex count must be >= 1");
  pair_count_ = pairs_of(n);
  words_.assign((pair_count_ + 63) / 64, 0);
}

Graph Graph::from_bits(int n, std::uint64_t bits) {
  Graph g(n);
  if (g.pair_count() > 64)
    throw std::invalid_argument("Graph::from_bits: more than 64 vertex pairs");
  if (g.pair_count() < 64) bits &= (std::uint64_t{1} << g.pair_count()) - 1;
  if (!g.words_.empty()) g.words_[0] = bits;
  return g;
}

std::size_t Graph::pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n || i == j)
    throw std::invalid_argument("Graph: vertex pair out of range");
  const auto iu = static_cast<std::size_t>(i);
  return iu * (2 * static_cast<std::size_t>(n) - iu - 1) / 2 +
         static_cast<std::size_t>(j - i - 1);
}

bool Graph::has_edge(int i, int j) const { return test_bit(pair_index(n_, i, j)); }

void Graph::set_edge(int i, int j, bool present) { set_bit(pair_index(n_, i, j), present); }

void Graph::flip_edge(int i, int j) { flip_bit(pair_index(n_, i, j)); }

bool Graph::test_bit(std::size_t index) const {
  return (words_[index >> 6] >> (index & 63)) & 1u;
}

void Graph::set_bit(std::size_t index, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (index & 63);
  if (value)
    words_[index >> 6] |= mask;
  else
    words_[index >> 6] &= ~mask;
}

void Graph::flip_bit(std::size_t index) {
  words_[index >> 6] ^= std::uint64_t{1} << (index & 63);
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> result;
  std::size_t index = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j, ++index)
      if (test_bit(index)) result.emplace_back(i, j);
  return result;
}

std::strong_ordering operator<=>(const Graph& a, const Graph& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  // Most significant word first, so the order matches the integer value of
  // the bit vector.
  for (std::size_t w = a.words_.size(); w-- > 0;)
    if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
  return std::strong_ordering::equal;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (std::size_t b = 0; b < g.pair_count(); ++b) g.set_bit(b, true);
  return g;
}

Graph empty_graph(int n) { return Graph(n); }

GraphSample::GraphSample(std::vector<Graph> graphs) : graphs_(std::move(graphs)) {
  if (graphs_.empty()) throw EmptySampleError("GraphSample: sample must be nonempty");
  for (const Graph& g : graphs_)
    if (g.n() != graphs_.front().n())
      throw DimensionError("GraphSample: all graphs must share one vertex count");
}

EdgeTotals sample_edge_totals(const GraphSample& sample) {
  EdgeTotals t;
  t.count = sample.size();
  for (const Graph& g : sample) {
    const auto e = static_cast<unsigned long long>(g.edge_count());
    t.sum += e;
    t.sum_sq += e * e;
  }
  return t;
}

EdgeStats sample_edge_stats(const GraphSample& sample) {
  const EdgeTotals t = sample_edge_totals(sample);
  const auto count = static_cast<double>(t.count);
  EdgeStats stats;
  stats.e_bar = static_cast<double>(t.sum) / count;
  // N*sum_sq - sum^2 >= 0 exactly (Cauchy-Schwarz on integers).
  const auto spread = static_cast<unsigned __int128>(t.count) * t.sum_sq -
                      static_cast<unsigned __int128>(t.sum) * t.sum;
  stats.sigma2 = static_cast<double>(spread) / (count * count);
  stats.sigma = std::sqrt(stats.sigma2);
  return stats;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json_or_throw(std::string_view text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw ParseError(ParseError::Kind::MalformedJson, "input is not valid JSON");
  return doc;
}

int read_vertex_count(const ordered_json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError(ParseError::Kind::MalformedJson,
                     "graph object must carry an integer field \"n\"");
  const auto n = doc["n"].get<long long>();
  if (n < 1)
    throw ParseError(ParseError::Kind::MalformedJson, "vertex count must be >= 1");
  if (n > (1 << 20))
    throw ParseError(ParseError::Kind::MalformedJson, "vertex count is implausibly large");
  return static_cast<int>(n);
}

Graph graph_from_json(const ordered_json& doc) {
  const int n = read_vertex_count(doc);
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw ParseError(ParseError::Kind::MalformedJson,
                     "graph object must carry an array field \"edges\"");
  Graph g(n);
  for (const auto& entry : doc["edges"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer())
      throw ParseError(ParseError::Kind::MalformedJson,
                       "each edge must be a pair of integers");
    const auto i = entry[0].get<long long>();
    const auto j = entry[1].get<long long>();
    if (i == j)
      throw ParseError(ParseError::Kind::SelfLoop,
                       "self-loop [" + std::to_string(i) + ", " + std::to_string(j) + "]");
    if (i < 1 || j < 1 || i > n || j > n)
      throw ParseError(ParseError::Kind::BadVertexIndex,
                       "vertex index outside [1, " + std::to_string(n) + "]");
    if (i > j)
      throw ParseError(ParseError::Kind::BadVertexIndex,
                       "edge endpoints must satisfy i < j");
    if (g.has_edge(static_cast<int>(i) - 1, static_cast<int>(j) - 1))
      throw ParseError(ParseError::Kind::DuplicateEdge,
                       "duplicate edge [" + std::to_string(i) + ", " + std::to_string(j) + "]");
    g.set_edge(static_cast<int>(i) - 1, static_cast<int>(j) - 1, true);
  }
  return g;
}

ordered_json graph_to_json(const Graph& g) {
  ordered_json doc;
  doc["n"] = g.n();
  auto edges = ordered_json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i + 1, j + 1});
  doc["edges"] = std::move(edges);
  return doc;
}

}  // namespace

Graph parse_graph(std::string_view text) { return graph_from_json(parse_json_or_throw(text)); }

std::string serialize_graph(const Graph& g) { return graph_to_json(g).dump(); }

GraphSample parse_sample(std::string_view text) {
  const ordered_json doc = parse_json_or_throw(text);
  if (!doc.is_object() || !doc.contains("graphs") || !doc["graphs"].is_array())
    throw ParseError(ParseError::Kind::MalformedJson,
                     "sample object must carry an array field \"graphs\"");
  std::vector<Graph> graphs;
  graphs.reserve(doc["graphs"].size());
  for (const auto& entry : doc["graphs"]) graphs.push_back(graph_from_json(entry));
  if (graphs.empty()) throw EmptySampleError("sample must contain at least one graph");
  return GraphSample(std::move(graphs));
}

std::string serialize_sample(const GraphSample& sample) {
  ordered_json doc;
  auto graphs = ordered_json::array();
  for (const Graph& g : sample) graphs.push_back(graph_to_json(g));
  doc["graphs"] = std::move(graphs);
  return doc.dump();
}

}  // namespace graphmean
