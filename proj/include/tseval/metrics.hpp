#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tseval/series.hpp"

namespace tseval {

enum class CountRegime { pointwise, pa_k, windowed };

std::string_view regime_name(CountRegime regime) noexcept;

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  CountRegime regime = CountRegime::pointwise;

  ConfusionCounts& operator+=(const ConfusionCounts& other);
  bool same_counts(const ConfusionCounts& other) const noexcept {
    return tp == other.tp && fp == other.fp && fn == other.fn;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

/// How one metric is computed: the counting regime plus its hyperparameters.
/// `k` is present iff family is pa_k; `window` iff family is windowed.
struct MetricSpec {
  CountRegime family = CountRegime::pointwise;
  double beta = 1.0;
  std::optional<double> k;
  std::optional<WindowSpec> window;

  static MetricSpec pointwise(double beta = 1.0);
  static MetricSpec point_adjusted(double k, double beta = 1.0);
  static MetricSpec windowed(WindowSpec window, double beta = 1.0);

  void validate() const;

  /// Machine identifier, safe for CSV/JSON keys: "F1", "F0.5", "F1_pa50",
  /// "F1_w10s".
  std::string name() const;
  /// Human form used in rendered tables: "F1_pa50%", "F1_w,10s".
  std::string display_name() const;

  bool operator==(const MetricSpec&) const = default;
};

/// Derived scores for one metric. Precision/recall/FDR are absent when their
/// denominator is zero; the F-score treats absent components as 0.
struct MetricResult {
  MetricSpec spec;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> fdr;
  double f_score = 0.0;
  ConfusionCounts counts;
  /// True when truth and predictions both contain no positives at all.
  bool degenerate_empty = false;
};

/// Standard per-sample confusion counts.
ConfusionCounts pointwise_counts(const LabelSeries& y, const LabelSeries& yhat);

/// Point-adjusted counts with threshold k in [0, 1]. A true segment is
/// credited in full when the fraction of its samples predicted positive is
/// >= k and at least one sample is hit; k = 1 recovers pointwise counts,
/// k = 0 is classic point adjustment. FP stays unadjusted.
ConfusionCounts pa_counts(const LabelSeries& y, const LabelSeries& yhat, double k);

/// Window-based counts: a predicted positive is a TP when any true positive
/// falls inside its window, otherwise an FP; a true positive with no
/// predicted positive inside its window is an FN.
ConfusionCounts window_counts(const LabelSeries& y, const LabelSeries& yhat,
                              const WindowSpec& window);

/// (1+beta^2) P R / (beta^2 P + R); 0 when the denominator is 0.
double f_beta(double precision, double recall, double beta);

/// Precision/recall/FDR/F from raw counts. The returned spec carries only
/// the regime and beta; callers holding a full MetricSpec overwrite it.
MetricResult derive_metric(const ConfusionCounts& counts, double beta = 1.0);

MetricResult evaluate_metric(const LabelSeries& y, const LabelSeries& yhat,
                             const MetricSpec& spec);

/// Evaluates every spec against one subject, thresholding probabilities at
/// delta when hard predictions are absent. Output order matches specs.
std::vector<MetricResult> evaluate_subject(const SubjectRecord& record,
                                           const std::vector<MetricSpec>& specs,
                                           double delta);

}  // namespace tseval
