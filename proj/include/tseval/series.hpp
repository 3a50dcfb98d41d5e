#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tseval {

/// Binary event indicators y_t at a fixed sampling rate (samples per second).
class LabelSeries {
 public:
  LabelSeries(std::vector<std::uint8_t> values, double rate);

  const std::vector<std::uint8_t>& values() const noexcept { return values_; }
  double rate() const noexcept { return rate_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::uint8_t operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t positive_count() const noexcept;

 private:
  std::vector<std::uint8_t> values_;
  double rate_;
};

/// Event probabilities p_t in [0, 1] at a fixed sampling rate.
class ProbabilitySeries {
 public:
  ProbabilitySeries(std::vector<double> values, double rate);

  const std::vector<double>& values() const noexcept { return values_; }
  double rate() const noexcept { return rate_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
  double rate_;
};

/// Maximal run of consecutive positive labels; both ends inclusive.
struct EventSegment {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start + 1; }
  bool operator==(const EventSegment&) const = default;
};

enum class WindowKind { radius, span };

std::string_view window_kind_name(WindowKind kind) noexcept;
WindowKind window_kind_from_name(std::string_view name);

/// Temporal tolerance window, stated in wall time and resolved to samples
/// against a series rate. Under `radius` the tolerance is +/- duration around
/// a point; under `span` the duration is the total window width.
struct WindowSpec {
  double seconds = 0.0;
  WindowKind kind = WindowKind::radius;

  std::size_t radius_in_samples(double rate) const;
  bool operator==(const WindowSpec&) const = default;
};

/// Closed index interval [lo, hi].
struct IndexInterval {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool operator==(const IndexInterval&) const = default;
};

/// One subject's ground truth plus model output. At least one of
/// probabilities/predictions must be present; lengths and rates must agree
/// with the truth series.
class SubjectRecord {
 public:
  SubjectRecord(std::string subject_id, LabelSeries truth,
                std::optional<ProbabilitySeries> probabilities,
                std::optional<LabelSeries> predictions);

  const std::string& subject_id() const noexcept { return subject_id_; }
  const LabelSeries& truth() const noexcept { return truth_; }
  const std::optional<ProbabilitySeries>& probabilities() const noexcept {
    return probabilities_;
  }
  const std::optional<LabelSeries>& predictions() const noexcept { return predictions_; }

 private:
  std::string subject_id_;
  LabelSeries truth_;
  std::optional<ProbabilitySeries> probabilities_;
  std::optional<LabelSeries> predictions_;
};

/// Maximal runs of consecutive 1s, in order. Empty when there are no events.
std::vector<EventSegment> extract_segments(const LabelSeries& labels);

/// Hard predictions: yhat_t = 1 iff p_t >= delta. The comparison is
/// inclusive, so delta = 0 marks every sample as an event.
LabelSeries threshold_predictions(const ProbabilitySeries& probs, double delta);

/// Wall time to sample count, rounding halves up.
std::size_t seconds_to_samples(double seconds, double rate);

/// Window around t clamped to [0, length): never wraps, always contains t.
IndexInterval window_indices(std::size_t t, std::size_t radius, std::size_t length);
IndexInterval window_indices(std::size_t t, const WindowSpec& spec, double rate,
                             std::size_t length);

/// "10s", "5min", "1h" or a bare number of seconds.
double parse_duration_seconds(std::string_view text);
std::string format_duration_seconds(double seconds);

}  // namespace tseval
