#include "tseval/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tseval {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

LabelSeries::LabelSeries(std::vector<std::uint8_t> values, double rate)
    : values_(std::move(values)), rate_(rate) {
  require(!values_.empty(), "LabelSeries: length must be >= 1");
  require(std::isfinite(rate_) && rate_ > 0.0, "LabelSeries: rate must be positive");
  for (auto v : values_) require(v <= 1, "LabelSeries: labels must be 0 or 1");
}

std::size_t LabelSeries::positive_count() const noexcept {
  std::size_t n = 0;
  for (auto v : values_) n += v;
  return n;
}

ProbabilitySeries::ProbabilitySeries(std::vector<double> values, double rate)
    : values_(std::move(values)), rate_(rate) {
  require(!values_.empty(), "ProbabilitySeries: length must be >= 1");
  require(std::isfinite(rate_) && rate_ > 0.0, "ProbabilitySeries: rate must be positive");
  for (double v : values_) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0,
            "ProbabilitySeries: probabilities must lie in [0, 1]");
  }
}

std::string_view window_kind_name(WindowKind kind) noexcept {
  return kind == WindowKind::radius ? "radius" : "span";
}

WindowKind window_kind_from_name(std::string_view name) {
  if (name == "radius") return WindowKind::radius;
  if (name == "span") return WindowKind::span;
  throw std::invalid_argument("unknown window interpretation: " + std::string(name));
}

std::size_t WindowSpec::radius_in_samples(double rate) const {
  const std::size_t samples = seconds_to_samples(seconds, rate);
  return kind == WindowKind::radius ? samples : samples / 2;
}

SubjectRecord::SubjectRecord(std::string subject_id, LabelSeries truth,
                             std::optional<ProbabilitySeries> probabilities,
                             std::optional<LabelSeries> predictions)
    : subject_id_(std::move(subject_id)),
      truth_(std::move(truth)),
      probabilities_(std::move(probabilities)),
      predictions_(std::move(predictions)) {
  require(!subject_id_.empty(), "SubjectRecord: subject id must not be empty");
  require(probabilities_.has_value() || predictions_.has_value(),
          "SubjectRecord: needs probabilities or predictions");
  if (probabilities_) {
    require(probabilities_->size() == truth_.size(),
            "SubjectRecord: probabilities length differs from truth");
    require(probabilities_->rate() == truth_.rate(),
            "SubjectRecord: probabilities rate differs from truth");
  }
  if (predictions_) {
    require(predictions_->size() == truth_.size(),
            "SubjectRecord: predictions length differs from truth");
    require(predictions_->rate() == truth_.rate(),
            "SubjectRecord: predictions rate differs from truth");
  }
}

std::vector<EventSegment> extract_segments(const LabelSeries& labels) {
  std::vector<EventSegment> segments;
  const auto& v = labels.values();
  std::size_t i = 0;
  while (i < v.size()) {
    if (v[i] == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == 1) ++j;
    segments.push_back({i, j});
    i = j + 1;
  }
  return segments;
}

LabelSeries threshold_predictions(const ProbabilitySeries& probs, double delta) {
  require(std::isfinite(delta) && delta >= 0.0 && delta <= 1.0,
          "threshold_predictions: delta must lie in [0, 1]");
  std::vector<std::uint8_t> out(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out[i] = probs[i] >= delta ? 1 : 0;
  }
  return LabelSeries(std::move(out), probs.rate());
}

std::size_t seconds_to_samples(double seconds, double rate) {
  require(std::isfinite(seconds) && seconds >= 0.0,
          "seconds_to_samples: duration must be >= 0");
  require(std::isfinite(rate) && rate > 0.0, "seconds_to_samples: rate must be positive");
  const double product = seconds * rate;
  require(product < 9.0e18, "seconds_to_samples: window too large");
  return static_cast<std::size_t>(std::llround(product));
}

IndexInterval window_indices(std::size_t t, std::size_t radius, std::size_t length) {
  require(t < length, "window_indices: t out of range");
  const std::size_t r = std::min(radius, length);
  IndexInterval interval;
  interval.lo = t >= r ? t - r : 0;
  interval.hi = std::min(length - 1, t + r);
  return interval;
}

IndexInterval window_indices(std::size_t t, const WindowSpec& spec, double rate,
                             std::size_t length) {
  return window_indices(t, spec.radius_in_samples(rate), length);
}

double parse_duration_seconds(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double scale = 1.0;
  if (text.ends_with("min")) {
    scale = 60.0;
    text.remove_suffix(3);
  } else if (text.ends_with("h")) {
    scale = 3600.0;
    text.remove_suffix(1);
  } else if (text.ends_with("s")) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !(value >= 0.0)) {
    throw std::invalid_argument("cannot parse duration: expected forms like 10s, 5min, 1h");
  }
  return value * scale;
}

std::string format_duration_seconds(double seconds) {
  char buf[64];
  if (seconds >= 60.0 && std::fmod(seconds, 60.0) == 0.0) {
    std::snprintf(buf, sizeof(buf), "%gmin", seconds / 60.0);
  } else {
    std::snprintf(buf, sizeof(buf), "%gs", seconds);
  }
  return buf;
}

}  // namespace tseval
