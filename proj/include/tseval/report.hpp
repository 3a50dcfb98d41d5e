#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tseval/dataset.hpp"
#include "tseval/metrics.hpp"
#include "tseval/scenarios.hpp"
#include "tseval/stats.hpp"

namespace tseval {

enum class OutputFormat { json, markdown, csv };

std::string_view output_format_name(OutputFormat format) noexcept;
OutputFormat output_format_from_name(std::string_view name);

std::vector<WindowSpec> default_windows();

/// Full evaluation configuration. Defaults mirror the standard grids:
/// windows 10s/30s/1min/5min/20min/60min, K in {0,...,1}, beta in {0.5,1,2}.
struct EvalConfig {
  std::filesystem::path input;
  InputFormat format = InputFormat::csv;
  double delta = 0.5;
  std::vector<WindowSpec> windows = default_windows();
  std::vector<double> k_values{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> betas{0.5, 1.0, 2.0};
  double alpha = 0.05;
  std::uint64_t seed = 0;
  double rate = 4.0;
  OutputFormat output = OutputFormat::json;
  std::string dataset_label;
  std::uint64_t stat_cap = 10000;

  void validate() const;
};

/// Metric specs implied by a config: one pointwise spec per beta, one pa
/// spec per K (beta 1), one windowed spec per window (beta 1).
std::vector<MetricSpec> build_metric_specs(const EvalConfig& config);

struct SubjectMetricRow {
  std::string subject_id;
  MetricResult model;
  MetricResult random_baseline;
};

struct MetricReport {
  MetricSpec spec;
  std::string name;
  std::string display_name;
  MetricResult pooled_model;
  MetricResult pooled_random;
  std::vector<SubjectMetricRow> per_subject;
  SignificanceCell significance;
};

struct EvaluationReport {
  int schema_version = 0;
  std::string tool_name;
  std::string tool_version;
  std::string rng_id;
  std::uint64_t seed = 0;
  std::string dataset;
  EvalConfig config;
  std::vector<std::string> subjects;
  std::vector<MetricReport> metrics;
};

/// Loads config.input and evaluates it.
EvaluationReport run_evaluation(const EvalConfig& config);

/// Same pipeline over in-memory records. Subjects are reordered by id;
/// pooled scores are derived from counts summed across subjects.
EvaluationReport evaluate_records(std::vector<SubjectRecord> records,
                                  const EvalConfig& config);

std::string render_report(const EvaluationReport& report, OutputFormat format);

/// Plot-ready CSV rows (dataset, metric, model|random, pooled f-score).
/// Values are printed with the same formatter as the JSON report.
std::string render_plot_csv(const EvaluationReport& report);
void emit_plot_data(const EvaluationReport& report, const std::filesystem::path& path);

std::string render_scenario_report_json(const SuiteReport& report);

}  // namespace tseval
