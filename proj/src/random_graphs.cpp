#include "graphmean/random_graphs.hpp"

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace graphmean {

namespace {

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("edge probability must lie in [0, 1]");
}

}  // namespace

EdgeProbabilityMatrix::EdgeProbabilityMatrix(int n, double default_p) : n_(n) {
  if (n < 1) throw std::invalid_argument("EdgeProbabilityMatrix: vertex count must be >= 1");
  require_probability(default_p);
  p_.assign(Graph(n).pair_count(), default_p);
}

void EdgeProbabilityMatrix::set_probability(int i, int j, double p) {
  set_probability_at(Graph::pair_index(n_, i, j), p);
}

void EdgeProbabilityMatrix::set_probability_at(std::size_t index, double p) {
  require_probability(p);
  p_[index] = p;
}

EdgeProbabilityMatrix parse_probability_matrix(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw ParseError(ParseError::Kind::MalformedJson, "input is not valid JSON");
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError(ParseError::Kind::MalformedJson,
                     "model object must carry an integer field \"n\"");
  const auto n = doc["n"].get<long long>();
  if (n < 1 || n > (1 << 20))
    throw ParseError(ParseError::Kind::MalformedJson, "vertex count out of range");

  double default_p = 0.0;
  if (doc.contains("default_p")) {
    if (!doc["default_p"].is_number())
      throw ParseError(ParseError::Kind::MalformedJson, "\"default_p\" must be a number");
    default_p = doc["default_p"].get<double>();
    if (!(default_p >= 0.0 && default_p <= 1.0))
      throw ParseError(ParseError::Kind::BadProbability, "\"default_p\" outside [0, 1]");
  }

  EdgeProbabilityMatrix model(static_cast<int>(n), default_p);
  if (!doc.contains("p")) return model;
  if (!doc["p"].is_array())
    throw ParseError(ParseError::Kind::MalformedJson, "\"p\" must be an array of triples");

  std::vector<bool> seen(model.pair_count(), false);
  for (const auto& entry : doc["p"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer() || !entry[2].is_number())
      throw ParseError(ParseError::Kind::MalformedJson,
                       "each probability entry must be [i, j, p]");
    const auto i = entry[0].get<long long>();
    const auto j = entry[1].get<long long>();
    const double p = entry[2].get<double>();
    if (i == j)
      throw ParseError(ParseError::Kind::SelfLoop, "self-loop probability entry");
    if (i < 1 || j < 1 || i > n || j > n)
      throw ParseError(ParseError::Kind::BadVertexIndex,
                       "vertex index outside [1, " + std::to_string(n) + "]");
    if (i > j)
      throw ParseError(ParseError::Kind::BadVertexIndex,
                       "probability entry endpoints must satisfy i < j");
    if (!(p >= 0.0 && p <= 1.0))
      throw ParseError(ParseError::Kind::BadProbability, "probability outside [0, 1]");
    const std::size_t index =
        Graph::pair_index(static_cast<int>(n), static_cast<int>(i) - 1, static_cast<int>(j) - 1);
    if (seen[index])
      throw ParseError(ParseError::Kind::DuplicateEdge,
                       "duplicate probability entry [" + std::to_string(i) + ", " +
                           std::to_string(j) + "]");
    seen[index] = true;
    model.set_probability_at(index, p);
  }
  return model;
}

Graph sample_ier(const EdgeProbabilityMatrix& model, std::uint64_t seed) {
  Graph g(model.n());
  for (std::size_t t = 0; t < model.pair_count(); ++t)
    g.set_bit(t, unit_from_bits(split_stream(seed, t)) < model.probability_at(t));
  return g;
}

Graph population_mean_graph(const EdgeProbabilityMatrix& model) {
  Graph g(model.n());
  for (std::size_t t = 0; t < model.pair_count(); ++t)
    g.set_bit(t, model.probability_at(t) > 0.5);
  return g;
}

double population_frechet_f2(const EdgeProbabilityMatrix& model, const Graph& g) {
  if (g.n() != model.n())
    throw DimensionError("population_frechet_f2: graph and model vertex counts differ");
  double sum_p = 0.0;
  double variance = 0.0;
  double edge_term = 0.0;
  for (std::size_t t = 0; t < model.pair_count(); ++t) {
    const double p = model.probability_at(t);
    sum_p += p;
    variance += p * (1.0 - p);
    if (g.test_bit(t)) edge_term += 2.0 * p - 1.0;
  }
  const double first = sum_p - edge_term;
  return first * first + variance;
}

double population_f2_bound(const EdgeProbabilityMatrix& model) {
  double sum_p = 0.0;
  double variance = 0.0;
  for (std::size_t t = 0; t < model.pair_count(); ++t) {
    const double p = model.probability_at(t);
    sum_p += p;
    variance += p * (1.0 - p);
  }
  return sum_p * sum_p + variance;
}

}  // namespace graphmean
