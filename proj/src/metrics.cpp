#include "tseval/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tseval {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_lengths(const LabelSeries& y, const LabelSeries& yhat) {
  require(y.size() == yhat.size(),
          "confusion counts: truth and prediction lengths differ");
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Prefix sums so window membership tests are O(1).
std::vector<std::int64_t> prefix_positives(const LabelSeries& s) {
  std::vector<std::int64_t> prefix(s.size() + 1, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    prefix[i + 1] = prefix[i] + s[i];
  }
  return prefix;
}

}  // namespace

std::string_view regime_name(CountRegime regime) noexcept {
  switch (regime) {
    case CountRegime::pointwise:
      return "pointwise";
    case CountRegime::pa_k:
      return "pa_k";
    case CountRegime::windowed:
      return "windowed";
  }
  return "unknown";
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  require(regime == other.regime, "ConfusionCounts: cannot sum across regimes");
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

MetricSpec MetricSpec::pointwise(double beta) {
  MetricSpec spec;
  spec.family = CountRegime::pointwise;
  spec.beta = beta;
  spec.validate();
  return spec;
}

MetricSpec MetricSpec::point_adjusted(double k, double beta) {
  MetricSpec spec;
  spec.family = CountRegime::pa_k;
  spec.beta = beta;
  spec.k = k;
  spec.validate();
  return spec;
}

MetricSpec MetricSpec::windowed(WindowSpec window, double beta) {
  MetricSpec spec;
  spec.family = CountRegime::windowed;
  spec.beta = beta;
  spec.window = window;
  spec.validate();
  return spec;
}

void MetricSpec::validate() const {
  require(std::isfinite(beta) && beta > 0.0, "MetricSpec: beta must be positive");
  require(k.has_value() == (family == CountRegime::pa_k),
          "MetricSpec: k must be present exactly for the pa_k family");
  require(window.has_value() == (family == CountRegime::windowed),
          "MetricSpec: window must be present exactly for the windowed family");
  if (k) {
    require(std::isfinite(*k) && *k >= 0.0 && *k <= 1.0,
            "MetricSpec: k must lie in [0, 1]");
  }
  if (window) {
    require(std::isfinite(window->seconds) && window->seconds >= 0.0,
            "MetricSpec: window duration must be >= 0");
  }
}

std::string MetricSpec::name() const {
  std::string base = "F" + format_number(beta);
  switch (family) {
    case CountRegime::pointwise:
      return base;
    case CountRegime::pa_k:
      return *k == 0.0 ? base + "_pa" : base + "_pa" + format_number(*k * 100.0);
    case CountRegime::windowed:
      return base + "_w" + format_duration_seconds(window->seconds);
  }
  return base;
}

std::string MetricSpec::display_name() const {
  std::string base = "F" + format_number(beta);
  switch (family) {
    case CountRegime::pointwise:
      return base;
    case CountRegime::pa_k:
      return *k == 0.0 ? base + "_pa" : base + "_pa" + format_number(*k * 100.0) + "%";
    case CountRegime::windowed:
      return base + "_w," + format_duration_seconds(window->seconds);
  }
  return base;
}

ConfusionCounts pointwise_counts(const LabelSeries& y, const LabelSeries& yhat) {
  check_lengths(y, yhat);
  ConfusionCounts counts;
  counts.regime = CountRegime::pointwise;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (yhat[t] == 1) {
      y[t] == 1 ? ++counts.tp : ++counts.fp;
    } else if (y[t] == 1) {
      ++counts.fn;
    }
  }
  return counts;
}

ConfusionCounts pa_counts(const LabelSeries& y, const LabelSeries& yhat, double k) {
  check_lengths(y, yhat);
  require(std::isfinite(k) && k >= 0.0 && k <= 1.0, "pa_counts: k must lie in [0, 1]");
  ConfusionCounts counts;
  counts.regime = CountRegime::pa_k;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (yhat[t] == 1 && y[t] == 0) ++counts.fp;
  }
  for (const EventSegment& segment : extract_segments(y)) {
    std::int64_t hits = 0;
    for (std::size_t t = segment.start; t <= segment.end; ++t) hits += yhat[t];
    const auto len = static_cast<std::int64_t>(segment.length());
    const double fraction = static_cast<double>(hits) / static_cast<double>(len);
    const bool adjusted = hits > 0 && fraction >= k;
    counts.tp += adjusted ? len : hits;
    counts.fn += adjusted ? 0 : len - hits;
  }
  return counts;
}

ConfusionCounts window_counts(const LabelSeries& y, const LabelSeries& yhat,
                              const WindowSpec& window) {
  check_lengths(y, yhat);
  require(y.rate() == yhat.rate(), "window_counts: truth and prediction rates differ");
  const std::size_t radius = window.radius_in_samples(y.rate());
  const auto y_prefix = prefix_positives(y);
  const auto yhat_prefix = prefix_positives(yhat);
  const auto any_in = [&](const std::vector<std::int64_t>& prefix, std::size_t t) {
    const IndexInterval w = window_indices(t, radius, y.size());
    return prefix[w.hi + 1] - prefix[w.lo] > 0;
  };

  ConfusionCounts counts;
  counts.regime = CountRegime::windowed;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (yhat[t] == 1) {
      any_in(y_prefix, t) ? ++counts.tp : ++counts.fp;
    }
    if (y[t] == 1 && !any_in(yhat_prefix, t)) ++counts.fn;
  }
  return counts;
}

double f_beta(double precision, double recall, double beta) {
  require(std::isfinite(beta) && beta > 0.0, "f_beta: beta must be positive");
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

MetricResult derive_metric(const ConfusionCounts& counts, double beta) {
  MetricResult result;
  result.counts = counts;
  result.spec.family = counts.regime;
  result.spec.beta = beta;
  if (counts.regime == CountRegime::pa_k) result.spec.k = 0.0;
  if (counts.regime == CountRegime::windowed) result.spec.window = WindowSpec{};

  const auto tp = static_cast<double>(counts.tp);
  const auto fp = static_cast<double>(counts.fp);
  const auto fn = static_cast<double>(counts.fn);
  if (counts.tp + counts.fp > 0) {
    result.precision = tp / (tp + fp);
    result.fdr = fp / (tp + fp);
  }
  if (counts.tp + counts.fn > 0) {
    result.recall = tp / (tp + fn);
  }
  result.f_score = f_beta(result.precision.value_or(0.0), result.recall.value_or(0.0), beta);
  result.degenerate_empty = counts.tp == 0 && counts.fp == 0 && counts.fn == 0;
  return result;
}

MetricResult evaluate_metric(const LabelSeries& y, const LabelSeries& yhat,
                             const MetricSpec& spec) {
  spec.validate();
  ConfusionCounts counts;
  switch (spec.family) {
    case CountRegime::pointwise:
      counts = pointwise_counts(y, yhat);
      break;
    case CountRegime::pa_k:
      counts = pa_counts(y, yhat, *spec.k);
      break;
    case CountRegime::windowed:
      counts = window_counts(y, yhat, *spec.window);
      break;
  }
  MetricResult result = derive_metric(counts, spec.beta);
  result.spec = spec;
  return result;
}

std::vector<MetricResult> evaluate_subject(const SubjectRecord& record,
                                           const std::vector<MetricSpec>& specs,
                                           double delta) {
  require(!specs.empty(), "evaluate_subject: specs must not be empty");
  const LabelSeries yhat = record.predictions()
                               ? *record.predictions()
                               : threshold_predictions(*record.probabilities(), delta);
  std::vector<MetricResult> results;
  results.reserve(specs.size());
  for (const MetricSpec& spec : specs) {
    results.push_back(evaluate_metric(record.truth(), yhat, spec));
  }
  return results;
}

}  // namespace tseval
