// Command-line front end: Fréchet mean/median solvers, inhomogeneous
// Erdős–Rényi sampling, and the edge-count bound verification suites.
//
// Exit codes (stable for CI use):
//   0  success / all verification checks passed
//   1  a verification check failed
//   2  input error (bad flags, malformed files, inconsistent dimensions)
//   3  capability error (exhaustive solver requested above its vertex cap)

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphmean/bounds.hpp"
#include "graphmean/frechet.hpp"
#include "graphmean/graph.hpp"
#include "graphmean/metrics.hpp"
#include "graphmean/random_graphs.hpp"
#include "graphmean/rng.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCapError = 3;
constexpr int kExitInternalError = 4;

struct CommonOpts {
  std::uint64_t seed = graphmean::kDefaultSeed;
  std::string output = "-";
  std::string format = "json";
};

void add_common_options(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--seed", opts.seed, "RNG seed; defaults to 12345 so runs are reproducible");
  sub->add_option("--output", opts.output, "Output path, or '-' for stdout")
      ->default_str("-");
  sub->add_option("--format", opts.format, "Output rendering")
      ->check(CLI::IsMember({"json", "table"}))
      ->default_str("json");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw graphmean::ParseError(graphmean::ParseError::Kind::MalformedJson,
                                       "cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

graphmean::MetricKind metric_from_name(const std::string& name) {
  return name == "hamming" ? graphmean::MetricKind::Hamming
                           : graphmean::MetricKind::SpectralAdjacency;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

ordered_json graph_json(const graphmean::Graph& g) {
  return ordered_json::parse(graphmean::serialize_graph(g));
}

std::string edges_string(const graphmean::Graph& g) {
  std::string text;
  for (const auto& [i, j] : g.edges())
    text += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  return text.empty() ? "-" : text;
}

std::string render_solver_report(const graphmean::SolverReport& report, const ordered_json& meta,
                                 const std::string& format) {
  if (format == "json") {
    ordered_json doc;
    doc["meta"] = meta;
    doc["method"] = graphmean::to_string(report.method);
    doc["exact"] = report.exact;
    doc["f_value"] = report.f_value;
    doc["evaluations"] = report.evaluations;
    auto minimizers = ordered_json::array();
    for (const graphmean::Graph& g : report.minimizers) minimizers.push_back(graph_json(g));
    doc["minimizers"] = std::move(minimizers);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "method       " << graphmean::to_string(report.method) << "\n"
      << "exact        " << (report.exact ? "true" : "false") << "\n"
      << "f_value      " << format_double(report.f_value) << "\n"
      << "evaluations  " << report.evaluations << "\n"
      << "minimizers   " << report.minimizers.size() << "\n";
  for (std::size_t i = 0; i < report.minimizers.size(); ++i) {
    const graphmean::Graph& g = report.minimizers[i];
    out << "  [" << i + 1 << "] n=" << g.n() << " e=" << g.edge_count() << " "
        << edges_string(g) << "\n";
  }
  return out.str();
}

std::string render_verify_output(const graphmean::VerifyOutput& output,
                                 const std::string& format) {
  if (format == "json") return graphmean::to_json_string(output);
  const graphmean::BoundReport& report = output.report;
  std::ostringstream out;
  out << "suite   " << report.meta.suite.value_or("-") << "\n"
      << "n       " << report.meta.n << "\n"
      << "N       " << report.meta.sample_size << "\n"
      << "seed    " << report.meta.seed << "\n";
  if (report.meta.trials) out << "trials  " << *report.meta.trials << "\n";
  if (report.meta.tightness_ratio)
    out << "ratio   " << format_double(*report.meta.tightness_ratio) << "\n";
  if (report.meta.spectral_edge_ratio)
    out << "max e/ebar (spectral)  " << format_double(*report.meta.spectral_edge_ratio) << "\n";
  out << "\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-40s %16s %16s %12s %-7s %s\n", "check", "lhs", "rhs",
                "slack", "strict", "pass");
  out << line;
  for (const graphmean::BoundCheck& check : report.checks) {
    std::snprintf(line, sizeof(line), "%-40s %16.8g %16.8g %12.4g %-7s %s\n", check.name.c_str(),
                  check.lhs, check.rhs, check.slack, check.strict ? "strict" : "eq",
                  check.pass ? "PASS" : "FAIL");
    out << line;
  }
  if (output.has_rows) {
    out << "\n";
    std::snprintf(line, sizeof(line), "%4s %4s %10s %8s %8s %14s %14s %14s\n", "n", "N", "ebar",
                  "e_med", "e_mean", "median/n^2", "mean/n^2", "2ebar/n^2");
    out << line;
    for (const graphmean::SparsityRow& row : output.sparsity_rows) {
      std::snprintf(line, sizeof(line), "%4d %4zu %10.4f %8zu %8s %14.6g %14.6g %14.6g\n", row.n,
                    row.sample_size, row.ebar, row.median_edges,
                    row.mean_edges ? std::to_string(*row.mean_edges).c_str() : "-",
                    row.median_density, row.mean_density.value_or(0.0), row.bound2_density);
      out << line;
    }
  }
  out << "\n" << (report.all_pass ? "ALL PASS" : "FAILED") << "\n";
  return out.str();
}

struct SolveArgs {
  CommonOpts common;
  std::string sample_file;
  std::string metric = "hamming";
  bool heuristic = false;
  int restarts = 8;
  int max_iters = 1000;
};

int run_solver(const SolveArgs& args, graphmean::FrechetOrder order, const char* command) {
  const graphmean::GraphSample sample = graphmean::parse_sample(read_file(args.sample_file));
  const graphmean::MetricKind metric = metric_from_name(args.metric);

  graphmean::SolverReport report;
  if (args.heuristic) {
    graphmean::LocalSearchConfig config;
    config.restarts = args.restarts;
    config.max_iters = args.max_iters;
    config.seed = args.common.seed;
    report = graphmean::local_search_frechet(sample, metric, order, config);
  } else if (metric == graphmean::MetricKind::Hamming &&
             order == graphmean::FrechetOrder::Median) {
    report = graphmean::median_majority_rule(sample);
  } else {
    report = graphmean::exhaustive_frechet(sample, metric, order);
  }

  ordered_json meta;
  meta["command"] = command;
  meta["metric"] = args.metric;
  meta["q"] = static_cast<int>(order);
  meta["n"] = sample.n();
  meta["N"] = sample.size();
  meta["seed"] = args.common.seed;
  write_output(args.common.output, render_solver_report(report, meta, args.common.format));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "graphmean: sample Fréchet mean and median graphs under the Hamming and "
      "adjacency-spectral metrics, with edge-count bound verification"};
  app.require_subcommand(1);

  SolveArgs median_args;
  CLI::App* median = app.add_subcommand("median", "Sample Fréchet median graphs (q = 1)");
  median->add_option("--sample", median_args.sample_file, "Sample JSON file")->required();
  median->add_option("--metric", median_args.metric, "Distance between graphs")
      ->check(CLI::IsMember({"hamming", "spectral"}))
      ->required();
  median->add_flag("--heuristic", median_args.heuristic,
                   "Edge-flip local search instead of an exact solver");
  median->add_option("--restarts", median_args.restarts, "Random restarts for --heuristic");
  median->add_option("--max-iters", median_args.max_iters, "Step cap per restart");
  add_common_options(median, median_args.common);

  SolveArgs mean_args;
  CLI::App* mean = app.add_subcommand("mean", "Sample Fréchet mean graphs (q = 2)");
  mean->add_option("--sample", mean_args.sample_file, "Sample JSON file")->required();
  mean->add_option("--metric", mean_args.metric, "Distance between graphs")
      ->check(CLI::IsMember({"hamming", "spectral"}))
      ->required();
  mean->add_flag("--heuristic", mean_args.heuristic,
                 "Edge-flip local search instead of exhaustive enumeration");
  mean->add_option("--restarts", mean_args.restarts, "Random restarts for --heuristic");
  mean->add_option("--max-iters", mean_args.max_iters, "Step cap per restart");
  add_common_options(mean, mean_args.common);

  CommonOpts eval_common;
  std::string eval_sample_file;
  std::string eval_graph_file;
  std::string eval_metric = "hamming";
  int eval_q = 1;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate the Fréchet function at a graph");
  eval->add_option("--sample", eval_sample_file, "Sample JSON file")->required();
  eval->add_option("--graph", eval_graph_file, "Candidate graph JSON file")->required();
  eval->add_option("--metric", eval_metric, "Distance between graphs")
      ->check(CLI::IsMember({"hamming", "spectral"}))
      ->required();
  eval->add_option("--q", eval_q, "Dispersion order: 1 = median, 2 = mean")
      ->check(CLI::IsMember({1, 2}))
      ->required();
  add_common_options(eval, eval_common);

  CommonOpts sample_common;
  std::string model_file;
  std::size_t sample_count = 1;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Draw graphs from an inhomogeneous Erdős–Rényi model");
  sample_cmd->add_option("--model", model_file, "Edge-probability JSON file")->required();
  sample_cmd->add_option("--count", sample_count, "Number of graphs to draw")
      ->check(CLI::PositiveNumber)
      ->required();
  add_common_options(sample_cmd, sample_common);

  graphmean::CampaignConfig verify_config;
  CommonOpts verify_common;
  CLI::App* verify = app.add_subcommand("verify", "Run the edge-count bound suites");
  verify->add_option("--suite", verify_config.suite, "Which inequalities to check")
      ->check(CLI::IsMember({"theorem1", "lemmas", "tightness", "sparsity", "all"}))
      ->default_str("all");
  verify->add_option("--trials", verify_config.trials, "Random samples per randomized suite");
  verify->add_option("--n", verify_config.n, "Vertex count for randomized trials");
  verify->add_option("--N", verify_config.sample_size, "Graphs per sample");
  verify->add_option("--jobs", verify_config.jobs, "Worker threads for randomized trials")
      ->check(CLI::PositiveNumber);
  add_common_options(verify, verify_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (median->parsed()) return run_solver(median_args, graphmean::FrechetOrder::Median, "median");
    if (mean->parsed()) return run_solver(mean_args, graphmean::FrechetOrder::Mean, "mean");

    if (eval->parsed()) {
      const graphmean::GraphSample s = graphmean::parse_sample(read_file(eval_sample_file));
      const graphmean::Graph g = graphmean::parse_graph(read_file(eval_graph_file));
      const double value = graphmean::frechet_function(
          g, s, metric_from_name(eval_metric),
          eval_q == 1 ? graphmean::FrechetOrder::Median : graphmean::FrechetOrder::Mean);
      if (eval_common.format == "json") {
        ordered_json doc;
        doc["meta"] = {{"command", "eval"}, {"metric", eval_metric}, {"q", eval_q},
                       {"n", s.n()},        {"N", s.size()},         {"seed", eval_common.seed}};
        doc["f_value"] = value;
        write_output(eval_common.output, doc.dump(2) + "\n");
      } else {
        write_output(eval_common.output, format_double(value) + "\n");
      }
      return kExitOk;
    }

    if (sample_cmd->parsed()) {
      const graphmean::EdgeProbabilityMatrix model =
          graphmean::parse_probability_matrix(read_file(model_file));
      std::vector<graphmean::Graph> graphs;
      graphs.reserve(sample_count);
      for (std::size_t k = 0; k < sample_count; ++k)
        graphs.push_back(graphmean::sample_ier(model, graphmean::split_stream(sample_common.seed, k)));
      const graphmean::GraphSample drawn(std::move(graphs));
      if (sample_common.format == "json") {
        ordered_json doc;
        doc["meta"] = {{"command", "sample"},
                       {"n", model.n()},
                       {"count", sample_count},
                       {"seed", sample_common.seed}};
        doc["graphs"] = ordered_json::parse(graphmean::serialize_sample(drawn))["graphs"];
        write_output(sample_common.output, doc.dump(2) + "\n");
      } else {
        std::ostringstream out;
        for (std::size_t k = 0; k < drawn.size(); ++k)
          out << "[" << k + 1 << "] n=" << drawn[k].n() << " e=" << drawn[k].edge_count() << " "
              << edges_string(drawn[k]) << "\n";
        write_output(sample_common.output, out.str());
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      verify_config.seed = verify_common.seed;
      const graphmean::VerifyOutput output = graphmean::run_verify_campaign(verify_config);
      write_output(verify_common.output, render_verify_output(output, verify_common.format));
      return output.report.all_pass ? kExitOk : kExitVerifyFailed;
    }
  } catch (const graphmean::CapExceededError& e) {
    std::cerr << "error: " << e.what() << " (pass --heuristic for an inexact solve)\n";
    return kExitCapError;
  } catch (const graphmean::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const graphmean::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const graphmean::EmptySampleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitOk;
}
