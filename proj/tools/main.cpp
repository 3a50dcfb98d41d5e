#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tseval/report.hpp"
#include "tseval/rng.hpp"
#include "tseval/scenarios.hpp"
#include "tseval/version.hpp"

namespace {

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-series event detection evaluation"};
  app.set_version_flag("--version", std::string(tseval::kToolName) + " " +
                                        std::string(tseval::kToolVersion) + " (rng " +
                                        std::string(tseval::kRngId) + ")");
  app.require_subcommand(1);

  // evaluate
  std::string input;
  std::string format = "csv";
  double delta = 0.5;
  std::vector<std::string> window_args{"10s", "30s", "1min", "5min", "20min", "60min"};
  std::string window_kind = "radius";
  std::vector<double> k_values{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> betas{0.5, 1.0, 2.0};
  double alpha = 0.05;
  std::uint64_t seed = 0;
  double rate = 4.0;
  std::string out_path;
  std::string output_format = "json";
  std::string plot_path;
  std::string dataset_label;
  std::uint64_t stat_cap = 10000;

  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate a dataset file");
  evaluate->add_option("--input", input, "Input dataset file")->required();
  evaluate->add_option("--format", format, "Input format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  evaluate->add_option("--delta", delta,
                       "Probability threshold; yhat = 1 when p >= delta");
  evaluate->add_option("--window", window_args,
                       "Window duration (e.g. 10s, 5min); repeatable");
  evaluate->add_option("--window-kind", window_kind,
                       "Window interpretation: radius (+/- w) or span (total width)")
      ->check(CLI::IsMember({"radius", "span"}));
  evaluate->add_option("--k", k_values, "pa%K thresholds in [0, 1]; repeatable");
  evaluate->add_option("--beta", betas, "F-beta weights; repeatable");
  evaluate->add_option("--alpha", alpha, "Significance level");
  evaluate->add_option("--seed", seed, "Global seed for baselines and resampling");
  evaluate->add_option("--rate", rate, "Sampling rate in Hz");
  evaluate->add_option("--out", out_path, "Report file (stdout when omitted)");
  evaluate->add_option("--output-format", output_format, "json, markdown or csv")
      ->check(CLI::IsMember({"json", "markdown", "csv"}));
  evaluate->add_option("--emit-plot", plot_path, "Write plot-data CSV to this path");
  evaluate->add_option("--dataset", dataset_label,
                       "Dataset label in reports (default: input file stem)");
  evaluate->add_option("--stat-cap", stat_cap,
                       "Cap on permutation/bootstrap replicates");

  // scenarios
  std::string scenario_out;
  std::size_t window_steps = 10;
  std::size_t scenario_length = tseval::kScenarioDefaultLength;
  std::uint64_t scenario_seed = tseval::kScenarioDefaultSeed;

  CLI::App* scenarios =
      app.add_subcommand("scenarios", "Run the built-in synthetic scenario suite");
  scenarios->add_option("--out", scenario_out, "Report file (stdout when omitted)");
  scenarios->add_option("--window-steps", window_steps, "Window size in time steps");
  scenarios->add_option("--length", scenario_length, "Series length in samples");
  scenarios->add_option("--seed", scenario_seed, "Seed for the random scenario");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*evaluate) {
      tseval::EvalConfig config;
      config.input = input;
      config.format = tseval::input_format_from_name(format);
      config.delta = delta;
      config.windows.clear();
      const tseval::WindowKind kind = tseval::window_kind_from_name(window_kind);
      for (const std::string& w : window_args) {
        config.windows.push_back({tseval::parse_duration_seconds(w), kind});
      }
      config.k_values = k_values;
      config.betas = betas;
      config.alpha = alpha;
      config.seed = seed;
      config.rate = rate;
      config.output = tseval::output_format_from_name(output_format);
      config.dataset_label = dataset_label;
      config.stat_cap = stat_cap;

      const tseval::EvaluationReport report = tseval::run_evaluation(config);
      write_output(tseval::render_report(report, config.output), out_path);
      if (!plot_path.empty()) tseval::emit_plot_data(report, plot_path);
    } else if (*scenarios) {
      const tseval::SuiteReport report =
          tseval::run_scenario_suite(window_steps, {0.5, 2.0}, {0.0, 0.5},
                                     scenario_length, scenario_seed);
      write_output(tseval::render_scenario_report_json(report), scenario_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
