#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"

#include "graphmean/bounds.hpp"
#include "test_util.hpp"

using namespace graphmean;

namespace {

const BoundCheck* find_check(const BoundReport& report, std::string_view name) {
  for (const BoundCheck& check : report.checks)
    if (check.name == name) return &check;
  return nullptr;
}

}  // namespace

TEST_CASE("exact_edge_stats produces exact rationals") {
  const GraphSample sample({complete_graph(3), empty_graph(3), testutil::path3()});
  const ExactStats stats = exact_edge_stats(sample);
  CHECK(stats.ebar == Rat(5, 3));
  CHECK(stats.sigma2 == Rat(14, 9));
  CHECK(to_double(stats.ebar) == 5.0 / 3.0);
}

TEST_CASE("the check builder rejects an inconsistent pass") {
  CHECK_THROWS_AS(make_check_exact("bogus", 2.0, 1.0, true, false), std::logic_error);
  const BoundCheck ok = make_check("fine", 1.0, 2.0, 0.0);
  CHECK(ok.pass);
  CHECK(ok.strict);
  CHECK(ok.slack == 1.0);
  const BoundCheck fail = make_check("over", 3.0, 2.0, 0.0);
  CHECK_FALSE(fail.pass);
}

TEST_CASE("verify_theorem1 on the toy sample") {
  const GraphSample sample({complete_graph(3), complete_graph(3), empty_graph(3)});
  const BoundReport report = verify_theorem1(sample, SolverPolicy::ExhaustiveExact);
  CHECK(report.all_pass);

  const BoundCheck* median = find_check(report, "theorem1.hamming.median_edges");
  REQUIRE(median != nullptr);
  CHECK(median->lhs == 3.0);
  CHECK(median->rhs == 4.0);
  CHECK(median->pass);
  CHECK(median->strict);

  CHECK(find_check(report, "theorem1.hamming.mean_edges") != nullptr);
  CHECK(find_check(report, "theorem1.spectral.mean_edges") != nullptr);
  CHECK(find_check(report, "theorem1.spectral.median_edges") != nullptr);
  CHECK(report.meta.spectral_tol == 1e-6);
}

TEST_CASE("verify_theorem1 on a singleton sample degenerates to e <= 2e and e <= 9e") {
  std::mt19937_64 rng(5);
  const Graph g = testutil::random_graph(4, rng);
  const BoundReport report =
      verify_theorem1(GraphSample({g}), SolverPolicy::ExhaustiveExact);
  CHECK(report.all_pass);
  const BoundCheck* median = find_check(report, "theorem1.hamming.median_edges");
  REQUIRE(median != nullptr);
  CHECK(median->lhs == static_cast<double>(g.edge_count()));
  CHECK(median->rhs == 2.0 * static_cast<double>(g.edge_count()));
}

TEST_CASE("verify_theorem1 majority-only policy works above the cap") {
  std::mt19937_64 rng(9);
  const GraphSample sample = testutil::random_sample(12, 7, rng);
  const BoundReport report = verify_theorem1(sample, SolverPolicy::MajorityOnly);
  CHECK(report.all_pass);
  CHECK(find_check(report, "theorem1.hamming.median_edges") != nullptr);
  CHECK(find_check(report, "theorem1.hamming.mean_edges") == nullptr);
  CHECK(report.meta.method == "majority_rule");
}

TEST_CASE("verify_theorem1 refuses exhaustive policy above the cap") {
  std::mt19937_64 rng(10);
  const GraphSample sample = testutil::random_sample(7, 3, rng);
  CHECK_THROWS_AS(verify_theorem1(sample, SolverPolicy::ExhaustiveExact), CapExceededError);
}

TEST_CASE("verify_lemma_chain hand-computed spectra on {K3, empty}") {
  const GraphSample sample({complete_graph(3), empty_graph(3)});
  const BoundReport report = verify_lemma_chain(sample, SolverPolicy::ExhaustiveExact);
  CHECK(report.all_pass);

  // Mean spectrum is ((2,-1,-1) + (0,0,0))/2, so half its squared norm is
  // 0.75 against ebar = 1.5.
  const BoundCheck* energy = find_check(report, "lemma.mean_spectrum_energy");
  REQUIRE(energy != nullptr);
  CHECK(energy->lhs == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(energy->rhs == doctest::Approx(1.5).epsilon(1e-12));

  for (const char* name :
       {"lemma.edge_gap_vs_hamming", "lemma.mean_edge_deviation_sq", "lemma.f2_at_median",
        "theorem1.hamming.mean_edges", "theorem1.hamming.median_edges",
        "lemma.spectrum_center_of_mass", "lemma.spectral_mean_norm",
        "lemma.spectral_median_norm", "lemma.spectral_edge_bound"})
    CHECK(find_check(report, name) != nullptr);
}

TEST_CASE("verify_lemma_chain: identical graphs give equality in the spectrum witness") {
  const GraphSample sample({testutil::path3(), testutil::path3(), testutil::path3()});
  const BoundReport report = verify_lemma_chain(sample, SolverPolicy::ExhaustiveExact);
  CHECK(report.all_pass);
  // Every member has ebar edges, so min_k ||lambda_k|| equals sqrt(2 ebar)
  // up to eigensolver noise.
  const BoundCheck* com = find_check(report, "lemma.spectrum_center_of_mass");
  REQUIRE(com != nullptr);
  CHECK(com->pass);
  CHECK(std::abs(com->lhs - com->rhs) <= 1e-9);
}

TEST_CASE("theorem1 and the lemma chain agree on their shared inequalities") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const GraphSample sample = testutil::random_sample(4, 1 + rng() % 6, rng);
    const BoundReport t1 = verify_theorem1(sample, SolverPolicy::ExhaustiveExact);
    const BoundReport chain = verify_lemma_chain(sample, SolverPolicy::ExhaustiveExact);
    for (const char* name : {"theorem1.hamming.mean_edges", "theorem1.hamming.median_edges"}) {
      const BoundCheck* a = find_check(t1, name);
      const BoundCheck* b = find_check(chain, name);
      REQUIRE(a != nullptr);
      REQUIRE(b != nullptr);
      CHECK(a->lhs == b->lhs);
      CHECK(a->rhs == b->rhs);
      CHECK(a->pass == b->pass);
      CHECK(a->strict == b->strict);
    }
  }
}

TEST_CASE("randomized smoke campaign: no bound fails") {
  std::mt19937_64 rng(100);
  const CandidateSpectra table(4);
  for (int trial = 0; trial < 50; ++trial) {
    const GraphSample sample = testutil::random_sample(4, 1 + rng() % 7, rng);
    const BoundReport t1 =
        verify_theorem1(sample, SolverPolicy::ExhaustiveExact, kDefaultExhaustiveCap, &table);
    CHECK(t1.all_pass);
    const BoundReport chain =
        verify_lemma_chain(sample, SolverPolicy::ExhaustiveExact, kDefaultExhaustiveCap, &table);
    CHECK(chain.all_pass);
  }
}

TEST_CASE("tightness_experiment instances") {
  SUBCASE("n=3, N=2") {
    const TightnessResult result = tightness_experiment(3, 2);
    CHECK(result.ratio == Rat(4, 3));
    CHECK(result.median_edges == 3);
    CHECK(result.ebar == Rat(9, 4));
    CHECK(result.report.all_pass);
  }
  SUBCASE("n=10, N=1000") {
    const TightnessResult result = tightness_experiment(10, 1000);
    CHECK(result.ratio == Rat(2000, 1001));
    CHECK(result.ratio_value == doctest::Approx(1.998002).epsilon(1e-6));
    CHECK(result.report.all_pass);
  }
  SUBCASE("n=2, N=1 degenerates to a homogeneous sample") {
    const TightnessResult result = tightness_experiment(2, 1);
    CHECK(result.ratio == Rat(1));
    CHECK(result.median_edges == 1);
    CHECK(result.report.all_pass);
  }
  SUBCASE("the ratio increases in N toward 2") {
    Rat previous(0);
    for (long long N = 1; N <= 20; ++N) {
      const TightnessResult result = tightness_experiment(4, N);
      CHECK(result.ratio == Rat(2 * N, N + 1));
      CHECK(result.ratio > previous);
      CHECK(result.ratio < Rat(2));
      previous = result.ratio;
    }
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(tightness_experiment(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(tightness_experiment(3, 0), std::invalid_argument);
  }
}

TEST_CASE("verify_corollary_sparsity on decreasing-density input") {
  std::vector<GraphSample> sequence;
  for (const int n : {8, 16, 32}) {
    const EdgeProbabilityMatrix model(n, std::pow(n, -0.5));
    std::vector<Graph> graphs;
    for (std::uint64_t k = 0; k < 6; ++k)
      graphs.push_back(sample_ier(model, split_stream(900 + static_cast<std::uint64_t>(n), k)));
    sequence.emplace_back(std::move(graphs));
  }
  const SparsityResult result = verify_corollary_sparsity(sequence, 900);
  REQUIRE(result.rows.size() == 3);
  CHECK(result.report.all_pass);
  for (const SparsityRow& row : result.rows) {
    CHECK(row.median_density <= row.bound2_density + 1e-12);
    CHECK(row.mean_edges.has_value());
  }
}

TEST_CASE("verify_corollary_sparsity flags non-sparse input") {
  std::vector<GraphSample> sequence;
  for (const int n : {4, 6, 8})
    sequence.emplace_back(std::vector<Graph>{complete_graph(n), complete_graph(n)});
  const SparsityResult result = verify_corollary_sparsity(sequence, 0);
  CHECK_FALSE(result.sparse_input);
  CHECK(result.report.all_pass);  // the volume bound itself still holds
  for (const SparsityRow& row : result.rows) {
    CHECK(row.median_density == doctest::Approx(row.input_density));
    CHECK(row.input_density > 0.35);  // density n(n-1)/(2n^2) stays ~1/2
  }
  // No trend checks are emitted for non-sparse input.
  for (const BoundCheck& check : result.report.checks)
    CHECK(check.name.find("density_step") == std::string::npos);
}

TEST_CASE("verify_corollary_sparsity on empty-graph samples") {
  std::vector<GraphSample> sequence;
  for (const int n : {4, 8})
    sequence.emplace_back(std::vector<Graph>{empty_graph(n), empty_graph(n)});
  const SparsityResult result = verify_corollary_sparsity(sequence, 0);
  CHECK(result.report.all_pass);
  for (const SparsityRow& row : result.rows) {
    CHECK(row.median_density == 0.0);
    CHECK(row.input_density == 0.0);
  }
}

TEST_CASE("report JSON has the documented shape") {
  const GraphSample sample({complete_graph(3), empty_graph(3)});
  const BoundReport report = verify_theorem1(sample, SolverPolicy::ExhaustiveExact,
                                             kDefaultExhaustiveCap, nullptr, 77);
  const auto doc = nlohmann::json::parse(to_json_string(report));
  CHECK(doc.contains("meta"));
  CHECK(doc.contains("checks"));
  CHECK(doc.contains("all_pass"));
  CHECK(doc["all_pass"].is_boolean());
  CHECK(doc["meta"]["n"] == 3);
  CHECK(doc["meta"]["N"] == 2);
  CHECK(doc["meta"]["seed"] == 77);
  CHECK(doc["meta"]["spectral_tol"] == 1e-6);
  for (const auto& check : doc["checks"]) {
    CHECK(check.contains("name"));
    CHECK(check.contains("lhs"));
    CHECK(check.contains("rhs"));
    CHECK(check.contains("slack"));
    CHECK(check.contains("strict"));
    CHECK(check.contains("pass"));
    CHECK(check["slack"].get<double>() ==
          doctest::Approx(check["rhs"].get<double>() - check["lhs"].get<double>()));
  }
}

TEST_CASE("verify campaigns are deterministic across worker counts") {
  CampaignConfig config;
  config.suite = "all";
  config.trials = 6;
  config.n = 4;
  config.sample_size = 5;
  config.seed = 7;

  config.jobs = 1;
  const VerifyOutput serial = run_verify_campaign(config);
  CHECK(serial.report.all_pass);

  config.jobs = 4;
  const VerifyOutput threaded = run_verify_campaign(config);
  CHECK(to_json_string(serial) == to_json_string(threaded));
}

TEST_CASE("campaign suite selection") {
  CampaignConfig config;
  config.trials = 2;
  config.n = 3;
  config.sample_size = 4;
  config.seed = 3;

  config.suite = "tightness";
  const VerifyOutput tightness = run_verify_campaign(config);
  CHECK(tightness.report.meta.tightness_ratio.has_value());
  CHECK_FALSE(tightness.report.meta.trials.has_value());

  config.suite = "sparsity";
  const VerifyOutput sparsity = run_verify_campaign(config);
  CHECK(sparsity.has_rows);
  REQUIRE(sparsity.sparsity_rows.size() == 3);
  CHECK(sparsity.sparsity_rows[0].n == 8);
  CHECK(sparsity.sparsity_rows[2].n == 32);

  config.suite = "theorem1";
  const VerifyOutput t1 = run_verify_campaign(config);
  CHECK(t1.report.meta.trials == 2);
  CHECK(find_check(t1.report, "lemma.edge_gap_vs_hamming") == nullptr);

  config.suite = "nonsense";
  CHECK_THROWS_AS(run_verify_campaign(config), std::invalid_argument);
}
