#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "graphmean/frechet.hpp"
#include "graphmean/graph.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "graphmean_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_fixture(const std::string& name, const std::string& content) {
  const fs::path path = work_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path = work_dir() / ("out_" + std::to_string(counter++) + ".txt");
  const std::string command =
      std::string(GRAPHMEAN_CLI_PATH) + " " + args + " > " + out_path.string() + " 2> /dev/null";
  const int raw = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.out = buffer.str();
  return result;
}

const std::string kToySample =
    R"({"graphs":[{"n":3,"edges":[[1,2],[1,3],[2,3]]},{"n":3,"edges":[[1,2],[1,3],[2,3]]},{"n":3,"edges":[]}]})";

}  // namespace

TEST_CASE("cli median --metric hamming uses the majority rule") {
  const std::string sample = write_fixture("toy_sample.json", kToySample);
  const CliResult result = run_cli("median --sample " + sample + " --metric hamming");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["method"] == "majority_rule");
  CHECK(doc["exact"] == true);
  CHECK(doc["f_value"] == 1.0);
  REQUIRE(doc["minimizers"].size() == 1);
  CHECK(doc["minimizers"][0]["edges"].size() == 3);
}

TEST_CASE("cli median --metric spectral on a singleton sample") {
  const std::string sample = write_fixture(
      "single_sample.json", R"({"graphs":[{"n":3,"edges":[[1,2],[2,3]]}]})");
  const CliResult result = run_cli("median --sample " + sample + " --metric spectral");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["method"] == "exhaustive");
  CHECK(doc["f_value"] == 0.0);
  // Every minimizer is isospectral with the 3-path, so it has two edges.
  for (const auto& g : doc["minimizers"]) CHECK(g["edges"].size() == 2);
}

TEST_CASE("cli mean --metric hamming matches the library") {
  const std::string sample = write_fixture("toy_sample2.json", kToySample);
  const CliResult result = run_cli("mean --sample " + sample + " --metric hamming");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  const graphmean::GraphSample parsed = graphmean::parse_sample(kToySample);
  const graphmean::SolverReport report = graphmean::exhaustive_frechet(
      parsed, graphmean::MetricKind::Hamming, graphmean::FrechetOrder::Mean);
  CHECK(doc["f_value"].get<double>() == report.f_value);
  CHECK(doc["minimizers"].size() == report.minimizers.size());
  CHECK(doc["method"] == "exhaustive");
}

TEST_CASE("cli mean --heuristic reports an inexact solve") {
  const std::string sample = write_fixture("toy_sample3.json", kToySample);
  const CliResult result =
      run_cli("mean --sample " + sample + " --metric spectral --heuristic --restarts 4");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["method"] == "local_search");
  CHECK(doc["exact"] == false);
  // On this toy instance the heuristic reaches the exhaustive optimum.
  const graphmean::SolverReport exact = graphmean::exhaustive_frechet(
      graphmean::parse_sample(kToySample), graphmean::MetricKind::SpectralAdjacency,
      graphmean::FrechetOrder::Mean);
  CHECK(doc["f_value"].get<double>() <= exact.f_value + 1e-9);
}

TEST_CASE("cli eval matches in-process evaluation bit for bit") {
  const std::string sample = write_fixture("eval_sample.json",
                                           R"({"graphs":[{"n":3,"edges":[[1,2],[1,3],[2,3]]},)"
                                           R"({"n":3,"edges":[]}]})");
  const std::string graph = write_fixture("eval_graph.json", R"({"n":3,"edges":[[1,2],[2,3]]})");
  const CliResult result =
      run_cli("eval --sample " + sample + " --graph " + graph + " --metric spectral --q 2");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);

  const graphmean::GraphSample s = graphmean::parse_sample(
      R"({"graphs":[{"n":3,"edges":[[1,2],[1,3],[2,3]]},{"n":3,"edges":[]}]})");
  const double expected =
      graphmean::frechet_function(testutil::path3(), s, graphmean::MetricKind::SpectralAdjacency,
                                  graphmean::FrechetOrder::Mean);
  CHECK(doc["f_value"].get<double>() == expected);
}

TEST_CASE("cli eval trivial values") {
  const std::string sample = write_fixture("eval_sample2.json", kToySample);
  const std::string k3 = write_fixture("eval_k3.json", R"({"n":3,"edges":[[1,2],[1,3],[2,3]]})");
  const CliResult median_eval =
      run_cli("eval --sample " + sample + " --graph " + k3 + " --metric hamming --q 1");
  CHECK(json::parse(median_eval.out)["f_value"] == 1.0);

  const std::string single = write_fixture("eval_single.json",
                                           R"({"graphs":[{"n":3,"edges":[[1,2],[1,3],[2,3]]}]})");
  const std::string empty3 = write_fixture("eval_empty.json", R"({"n":3,"edges":[]})");
  const CliResult mean_eval =
      run_cli("eval --sample " + single + " --graph " + empty3 + " --metric hamming --q 2");
  CHECK(json::parse(mean_eval.out)["f_value"] == 9.0);
}

TEST_CASE("cli sample honors degenerate models and is deterministic") {
  const std::string zeros = write_fixture("model_zeros.json", R"({"n":4,"default_p":0})");
  const CliResult empty_run = run_cli("sample --model " + zeros + " --count 3 --seed 5");
  REQUIRE(empty_run.exit_code == 0);
  const json empty_doc = json::parse(empty_run.out);
  REQUIRE(empty_doc["graphs"].size() == 3);
  for (const auto& g : empty_doc["graphs"]) CHECK(g["edges"].empty());

  const std::string ones = write_fixture("model_ones.json", R"({"n":4,"default_p":1})");
  const CliResult full_run = run_cli("sample --model " + ones + " --count 2 --seed 5");
  const json full_doc = json::parse(full_run.out);
  for (const auto& g : full_doc["graphs"]) CHECK(g["edges"].size() == 6);

  const std::string half = write_fixture("model_half.json", R"({"n":6,"default_p":0.5})");
  const CliResult a = run_cli("sample --model " + half + " --count 4 --seed 99");
  const CliResult b = run_cli("sample --model " + half + " --count 4 --seed 99");
  CHECK(a.out == b.out);
  const CliResult c = run_cli("sample --model " + half + " --count 4 --seed 100");
  CHECK(a.out != c.out);
}

TEST_CASE("cli verify tightness reports the closed-form ratio") {
  const CliResult result = run_cli("verify --suite tightness --n 10 --N 1000");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["all_pass"] == true);
  CHECK(doc["meta"]["tightness_ratio"].get<double>() ==
        doctest::Approx(1.998002).epsilon(1e-6));
}

TEST_CASE("cli verify --suite all passes and is byte-stable across runs and job counts") {
  const std::string args = "verify --suite all --trials 5 --n 4 --N 5 --seed 7";
  const CliResult first = run_cli(args + " --jobs 1");
  REQUIRE(first.exit_code == 0);
  const CliResult second = run_cli(args + " --jobs 1");
  const CliResult threaded = run_cli(args + " --jobs 8");
  CHECK(first.out == second.out);
  CHECK(first.out == threaded.out);
  CHECK(json::parse(first.out)["all_pass"] == true);
}

TEST_CASE("cli exit codes") {
  SUBCASE("corrupted sample file exits 2") {
    const std::string bad = write_fixture("bad_sample.json", "{not json");
    CHECK(run_cli("median --sample " + bad + " --metric hamming").exit_code == 2);
  }
  SUBCASE("missing file exits 2") {
    CHECK(run_cli("median --sample /nonexistent.json --metric hamming").exit_code == 2);
  }
  SUBCASE("unknown flag exits 2") {
    CHECK(run_cli("median --sample x.json --metric hamming --bogus").exit_code == 2);
  }
  SUBCASE("cap violation without --heuristic exits 3, with --heuristic succeeds") {
    std::ostringstream sample;
    sample << R"({"graphs":[{"n":7,"edges":[[1,2]]},{"n":7,"edges":[[2,3]]}]})";
    const std::string big = write_fixture("big_sample.json", sample.str());
    CHECK(run_cli("mean --sample " + big + " --metric hamming").exit_code == 3);
    const CliResult heuristic =
        run_cli("mean --sample " + big + " --metric hamming --heuristic");
    CHECK(heuristic.exit_code == 0);
    CHECK(json::parse(heuristic.out)["exact"] == false);
  }
  SUBCASE("sample dimension mismatch exits 2") {
    const std::string mixed = write_fixture(
        "mixed_sample.json", R"({"graphs":[{"n":2,"edges":[]},{"n":3,"edges":[]}]})");
    CHECK(run_cli("median --sample " + mixed + " --metric hamming").exit_code == 2);
  }
}

TEST_CASE("cli table format renders without error") {
  const std::string sample = write_fixture("table_sample.json", kToySample);
  const CliResult result =
      run_cli("median --sample " + sample + " --metric hamming --format table");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("majority_rule") != std::string::npos);
  const CliResult verify = run_cli("verify --suite tightness --n 6 --N 10 --format table");
  REQUIRE(verify.exit_code == 0);
  CHECK(verify.out.find("ALL PASS") != std::string::npos);
}
