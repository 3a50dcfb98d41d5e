#include "tseval/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "tseval/baselines.hpp"
#include "tseval/rng.hpp"
#include "tseval/version.hpp"

namespace tseval {

namespace {

using ordered_json = nlohmann::ordered_json;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Shared number formatter so CSV outputs match the JSON report byte for byte.
std::string json_number(double v) { return ordered_json(v).dump(); }

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string metric_param_string(const MetricSpec& spec) {
  switch (spec.family) {
    case CountRegime::pointwise:
      return "beta=" + fmt("%g", spec.beta);
    case CountRegime::pa_k:
      return "K=" + fmt("%g", *spec.k);
    case CountRegime::windowed:
      return "w=" + format_duration_seconds(spec.window->seconds);
  }
  return "";
}

struct SubjectEval {
  std::vector<MetricResult> model;
  std::vector<MetricResult> random_baseline;
};

SubjectEval evaluate_one(const SubjectRecord& record, const std::vector<MetricSpec>& specs,
                         const EvalConfig& config) {
  SubjectEval eval;
  eval.model = evaluate_subject(record, specs, config.delta);
  const ProbabilitySeries random_probs =
      random_baseline(record.truth().size(), record.truth().rate(),
                      subject_stream(config.seed, record.subject_id()));
  const LabelSeries random_pred = threshold_predictions(random_probs, config.delta);
  eval.random_baseline.reserve(specs.size());
  for (const MetricSpec& spec : specs) {
    eval.random_baseline.push_back(evaluate_metric(record.truth(), random_pred, spec));
  }
  return eval;
}

std::vector<SubjectEval> evaluate_all(const std::vector<SubjectRecord>& records,
                                      const std::vector<MetricSpec>& specs,
                                      const EvalConfig& config) {
  std::vector<SubjectEval> evals(records.size());
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min<std::size_t>(records.size(), hw ? hw : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      evals[i] = evaluate_one(records[i], specs, config);
    }
    return evals;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < records.size(); i = next.fetch_add(1)) {
        try {
          evals[i] = evaluate_one(records[i], specs, config);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return evals;
}

ordered_json result_to_json(const MetricResult& r) {
  ordered_json j;
  j["tp"] = r.counts.tp;
  j["fp"] = r.counts.fp;
  j["fn"] = r.counts.fn;
  j["precision"] = r.precision ? ordered_json(*r.precision) : ordered_json(nullptr);
  j["recall"] = r.recall ? ordered_json(*r.recall) : ordered_json(nullptr);
  j["fdr"] = r.fdr ? ordered_json(*r.fdr) : ordered_json(nullptr);
  j["f_score"] = r.f_score;
  j["degenerate_empty"] = r.degenerate_empty;
  return j;
}

ordered_json config_to_json(const EvalConfig& config) {
  ordered_json j;
  j["input"] = config.input.generic_string();
  j["format"] = std::string(input_format_name(config.format));
  j["delta"] = config.delta;
  j["rate"] = config.rate;
  j["alpha"] = config.alpha;
  j["seed"] = config.seed;
  ordered_json windows = ordered_json::array();
  for (const WindowSpec& w : config.windows) {
    ordered_json entry;
    entry["seconds"] = w.seconds;
    entry["interpretation"] = std::string(window_kind_name(w.kind));
    windows.push_back(std::move(entry));
  }
  j["windows"] = std::move(windows);
  j["k_values"] = config.k_values;
  j["betas"] = config.betas;
  j["stat_cap"] = config.stat_cap;
  j["output_format"] = std::string(output_format_name(config.output));
  return j;
}

ordered_json significance_to_json(const SignificanceCell& cell) {
  ordered_json j;
  j["p_reported"] = cell.p_reported;
  j["p_vs_random"] = cell.p_vs_random;
  j["p_vs_null"] = cell.p_vs_null;
  j["mean_diff_random"] = cell.mean_diff_random;
  j["mean_diff_null"] = cell.mean_diff_null;
  j["stars"] = std::string(star_string(cell.stars));
  j["fail_random"] = cell.fail_random;
  j["fail_null"] = cell.fail_null;
  j["degenerate"] = std::string(degeneracy_name(cell.degenerate));
  ordered_json ci;
  ci["lo"] = cell.ci_vs_random.lo;
  ci["hi"] = cell.ci_vs_random.hi;
  ci["b_used"] = cell.ci_vs_random.b_used;
  j["ci_vs_random"] = std::move(ci);
  ordered_json pr;
  pr["b_used"] = cell.perm_random.b_used;
  pr["exhaustive"] = cell.perm_random.exhaustive;
  j["perm_random"] = std::move(pr);
  ordered_json pn;
  pn["b_used"] = cell.perm_null.b_used;
  pn["exhaustive"] = cell.perm_null.exhaustive;
  j["perm_null"] = std::move(pn);
  return j;
}

std::string render_json(const EvaluationReport& report) {
  ordered_json j;
  j["schema_version"] = report.schema_version;
  ordered_json tool;
  tool["name"] = report.tool_name;
  tool["version"] = report.tool_version;
  tool["rng"] = report.rng_id;
  j["tool"] = std::move(tool);
  j["seed"] = report.seed;
  j["dataset"] = report.dataset;
  j["config"] = config_to_json(report.config);
  j["subjects"] = report.subjects;

  ordered_json metrics = ordered_json::array();
  for (const MetricReport& m : report.metrics) {
    ordered_json entry;
    entry["name"] = m.name;
    entry["display_name"] = m.display_name;
    entry["family"] = std::string(regime_name(m.spec.family));
    entry["beta"] = m.spec.beta;
    if (m.spec.k) entry["k"] = *m.spec.k;
    if (m.spec.window) {
      ordered_json w;
      w["seconds"] = m.spec.window->seconds;
      w["interpretation"] = std::string(window_kind_name(m.spec.window->kind));
      entry["window"] = std::move(w);
    }
    ordered_json pooled;
    pooled["model"] = result_to_json(m.pooled_model);
    pooled["random"] = result_to_json(m.pooled_random);
    entry["pooled"] = std::move(pooled);
    ordered_json rows = ordered_json::array();
    for (const SubjectMetricRow& row : m.per_subject) {
      ordered_json r;
      r["subject_id"] = row.subject_id;
      r["model"] = result_to_json(row.model);
      r["random"] = result_to_json(row.random_baseline);
      rows.push_back(std::move(r));
    }
    entry["per_subject"] = std::move(rows);
    entry["significance"] = significance_to_json(m.significance);
    metrics.push_back(std::move(entry));
  }
  j["metrics"] = std::move(metrics);
  return j.dump(2) + "\n";
}

std::string p_value_display(const SignificanceCell& cell) {
  std::string text = cell.p_reported < 0.001 ? "<0.001" : fmt("%.3f", cell.p_reported);
  if (cell.stars != Stars::none) {
    text += star_string(cell.stars);
    return text;
  }
  std::string markers;
  if (cell.fail_random) markers += "∼R";
  if (cell.fail_null) markers += markers.empty() ? "∼0" : ",∼0";
  if (!markers.empty()) text += "^" + markers;
  return text;
}

std::string ci_display(const SignificanceCell& cell) {
  std::string text =
      "[" + fmt("%.3f", cell.ci_vs_random.lo) + ", " + fmt("%.3f", cell.ci_vs_random.hi) + "]";
  if (cell.degenerate == Degeneracy::all_zero) text += "†";
  if (cell.degenerate == Degeneracy::all_one) text += "‡";
  return text;
}

std::string score_display(const std::optional<double>& v) {
  return v ? fmt("%.4f", *v) : "n/a";
}

void append_score_rows(std::string& out, const MetricReport& m) {
  out += "| " + m.display_name + " | " + fmt("%.4f", m.pooled_model.f_score) + " | " +
         fmt("%.4f", m.pooled_random.f_score) + " |\n";
  out += "| Precision | " + score_display(m.pooled_model.precision) + " | " +
         score_display(m.pooled_random.precision) + " |\n";
  out += "| Recall | " + score_display(m.pooled_model.recall) + " | " +
         score_display(m.pooled_random.recall) + " |\n";
}

std::string render_markdown(const EvaluationReport& report) {
  std::string out;
  out += "# " + report.tool_name + " report\n\n";
  out += "- tool: " + report.tool_name + " " + report.tool_version + "\n";
  out += "- rng: " + report.rng_id + "\n";
  out += "- seed: " + std::to_string(report.seed) + "\n";
  out += "- dataset: " + report.dataset + "\n";
  out += "- subjects: " + std::to_string(report.subjects.size()) + "\n";
  out += "- delta: " + fmt("%g", report.config.delta) + "\n";
  out += "- alpha: " + fmt("%g", report.config.alpha) + "\n";

  out += "\n## Combined significance vs baselines\n\n";
  out += "| Metric | p-value | 95% CI (vs random) |\n";
  out += "|---|---:|---:|\n";
  for (const MetricReport& m : report.metrics) {
    out += "| " + m.display_name + " | " + p_value_display(m.significance) + " | " +
           ci_display(m.significance) + " |\n";
  }
  out += "\nMarkers: *** p<0.001, ** p<0.01, * p<0.05 (model beats both baselines); ";
  out += "∼R not significantly better than random; ";
  out += "∼0 not significantly better than null; ";
  out += "† all subject scores 0; ‡ all subject scores 1.\n";

  out += "\n## Pooled scores\n";
  bool standard_header = false;
  for (const MetricReport& m : report.metrics) {
    if (m.spec.family == CountRegime::pointwise && m.spec.beta == 1.0) {
      if (!standard_header) {
        out += "\n### Standard metrics\n\n| Metric | Model | Random |\n|---|---:|---:|\n";
        standard_header = true;
      }
      append_score_rows(out, m);
    }
  }
  bool beta_header = false;
  for (const MetricReport& m : report.metrics) {
    if (m.spec.family == CountRegime::pointwise && m.spec.beta != 1.0) {
      if (!beta_header) {
        out += "\n### F-beta variants\n\n| Metric | Model | Random |\n|---|---:|---:|\n";
        beta_header = true;
      }
      out += "| " + m.display_name + " | " + fmt("%.4f", m.pooled_model.f_score) + " | " +
             fmt("%.4f", m.pooled_random.f_score) + " |\n";
    }
  }
  for (const MetricReport& m : report.metrics) {
    if (m.spec.family == CountRegime::pa_k) {
      out += "\n### Point-adjusted (K = " + fmt("%g", *m.spec.k) +
             ")\n\n| Metric | Model | Random |\n|---|---:|---:|\n";
      append_score_rows(out, m);
    }
  }
  for (const MetricReport& m : report.metrics) {
    if (m.spec.family == CountRegime::windowed) {
      out += "\n### Windowed (w = " + format_duration_seconds(m.spec.window->seconds) +
             ")\n\n| Metric | Model | Random |\n|---|---:|---:|\n";
      append_score_rows(out, m);
    }
  }
  return out;
}

std::string render_csv(const EvaluationReport& report) {
  std::string out = "metric,param,scope,value\n";
  for (const MetricReport& m : report.metrics) {
    const std::string prefix = m.name + "," + metric_param_string(m.spec) + ",";
    out += prefix + "pooled," + json_number(m.pooled_model.f_score) + "\n";
    for (const SubjectMetricRow& row : m.per_subject) {
      out += prefix + row.subject_id + "," + json_number(row.model.f_score) + "\n";
    }
  }
  return out;
}

}  // namespace

std::string_view output_format_name(OutputFormat format) noexcept {
  switch (format) {
    case OutputFormat::json:
      return "json";
    case OutputFormat::markdown:
      return "markdown";
    case OutputFormat::csv:
      return "csv";
  }
  return "json";
}

OutputFormat output_format_from_name(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "markdown") return OutputFormat::markdown;
  if (name == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown output format: " + std::string(name));
}

std::vector<WindowSpec> default_windows() {
  return {
      {10.0, WindowKind::radius},   {30.0, WindowKind::radius},
      {60.0, WindowKind::radius},   {300.0, WindowKind::radius},
      {1200.0, WindowKind::radius}, {3600.0, WindowKind::radius},
  };
}

void EvalConfig::validate() const {
  require(std::isfinite(delta) && delta >= 0.0 && delta <= 1.0,
          "config: delta must lie in [0, 1]");
  require(std::isfinite(rate) && rate > 0.0, "config: rate must be positive");
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0,
          "config: alpha must lie in (0, 1)");
  require(!windows.empty(), "config: windows must not be empty");
  require(stat_cap >= 1, "config: stat_cap must be >= 1");
  for (double beta : betas) {
    require(std::isfinite(beta) && beta > 0.0, "config: betas must be positive");
  }
  for (double k : k_values) {
    require(std::isfinite(k) && k >= 0.0 && k <= 1.0, "config: k values must lie in [0, 1]");
  }
  for (const WindowSpec& w : windows) {
    require(std::isfinite(w.seconds) && w.seconds >= 0.0,
            "config: window durations must be >= 0");
  }
}

std::vector<MetricSpec> build_metric_specs(const EvalConfig& config) {
  config.validate();
  std::vector<MetricSpec> specs;
  for (double beta : config.betas) specs.push_back(MetricSpec::pointwise(beta));
  for (double k : config.k_values) specs.push_back(MetricSpec::point_adjusted(k));
  for (const WindowSpec& w : config.windows) specs.push_back(MetricSpec::windowed(w));
  std::vector<std::string> names;
  names.reserve(specs.size());
  for (const MetricSpec& spec : specs) names.push_back(spec.name());
  std::sort(names.begin(), names.end());
  require(std::adjacent_find(names.begin(), names.end()) == names.end(),
          "config: duplicate metric specs");
  return specs;
}

EvaluationReport run_evaluation(const EvalConfig& config) {
  config.validate();
  return evaluate_records(load_dataset(config.input, config.format, config.rate), config);
}

EvaluationReport evaluate_records(std::vector<SubjectRecord> records,
                                  const EvalConfig& config) {
  config.validate();
  require(!records.empty(), "evaluation needs at least one subject");
  std::sort(records.begin(), records.end(),
            [](const SubjectRecord& a, const SubjectRecord& b) {
              return a.subject_id() < b.subject_id();
            });
  for (std::size_t i = 1; i < records.size(); ++i) {
    require(records[i - 1].subject_id() != records[i].subject_id(),
            "evaluation: duplicate subject id");
  }

  const std::vector<MetricSpec> specs = build_metric_specs(config);
  const std::vector<SubjectEval> evals = evaluate_all(records, specs, config);

  EvaluationReport report;
  report.schema_version = kReportSchemaVersion;
  report.tool_name = std::string(kToolName);
  report.tool_version = std::string(kToolVersion);
  report.rng_id = std::string(kRngId);
  report.seed = config.seed;
  report.config = config;
  report.dataset = !config.dataset_label.empty() ? config.dataset_label
                   : config.input.empty()        ? std::string("dataset")
                                                 : config.input.stem().generic_string();
  report.subjects.reserve(records.size());
  for (const SubjectRecord& r : records) report.subjects.push_back(r.subject_id());

  report.metrics.reserve(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    MetricReport metric;
    metric.spec = specs[s];
    metric.name = specs[s].name();
    metric.display_name = specs[s].display_name();

    ConfusionCounts model_counts;
    model_counts.regime = specs[s].family;
    ConfusionCounts random_counts = model_counts;
    std::vector<SubjectScore> model_scores;
    std::vector<SubjectScore> random_scores;
    std::vector<SubjectScore> null_scores;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const MetricResult& model = evals[i].model[s];
      const MetricResult& random_b = evals[i].random_baseline[s];
      metric.per_subject.push_back({records[i].subject_id(), model, random_b});
      model_counts += model.counts;
      random_counts += random_b.counts;
      model_scores.push_back({records[i].subject_id(), model.f_score});
      random_scores.push_back({records[i].subject_id(), random_b.f_score});
      null_scores.push_back({records[i].subject_id(), 0.0});
    }
    metric.pooled_model = derive_metric(model_counts, specs[s].beta);
    metric.pooled_model.spec = specs[s];
    metric.pooled_random = derive_metric(random_counts, specs[s].beta);
    metric.pooled_random.spec = specs[s];
    metric.significance = combined_significance(
        model_scores, random_scores, null_scores, config.alpha, config.stat_cap,
        derive_seed(config.seed, fnv1a64(metric.name, fnv1a64("metric:"))));
    report.metrics.push_back(std::move(metric));
  }
  return report;
}

std::string render_report(const EvaluationReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      return render_json(report);
    case OutputFormat::markdown:
      return render_markdown(report);
    case OutputFormat::csv:
      return render_csv(report);
  }
  return render_json(report);
}

std::string render_plot_csv(const EvaluationReport& report) {
  std::string out = "dataset,metric,model,value\n";
  for (const MetricReport& m : report.metrics) {
    out += report.dataset + "," + m.name + ",model," +
           json_number(m.pooled_model.f_score) + "\n";
    out += report.dataset + "," + m.name + ",random," +
           json_number(m.pooled_random.f_score) + "\n";
  }
  return out;
}

void emit_plot_data(const EvaluationReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open plot output: " + path.generic_string());
  out << render_plot_csv(report);
  if (!out) throw std::runtime_error("failed writing plot output: " + path.generic_string());
}

std::string render_scenario_report_json(const SuiteReport& report) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  ordered_json tool;
  tool["name"] = std::string(kToolName);
  tool["version"] = std::string(kToolVersion);
  tool["rng"] = std::string(kRngId);
  j["tool"] = std::move(tool);
  j["suite"] = "scenario_suite";
  j["window_steps"] = report.window_steps;
  j["betas"] = report.betas;
  j["k_values"] = report.k_values;
  j["length"] = report.length;
  j["seed"] = report.seed;
  j["all_passed"] = report.all_passed;
  ordered_json rows = ordered_json::array();
  for (const AssertionOutcome& o : report.outcomes) {
    ordered_json row;
    row["scenario"] = o.scenario;
    row["metric"] = o.metric;
    row["expectation"] = o.expectation;
    row["actual"] = o.actual;
    row["passed"] = o.passed;
    rows.push_back(std::move(row));
  }
  j["assertions"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace tseval
