#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tseval/metrics.hpp"
#include "tseval/series.hpp"

namespace tseval {

/// Reference predictor selector. The random baseline carries its seed; the
/// null baseline has none because it is defined directly as zero scores.
struct BaselineKind {
  enum class Kind { random, null_baseline };

  Kind kind = Kind::null_baseline;
  std::optional<std::uint64_t> seed;

  static BaselineKind random(std::uint64_t seed);
  static BaselineKind null_baseline();
  void validate() const;
};

/// Probabilities drawn i.i.d. uniform on [0, 1) from the seeded generator.
/// Same seed, same series.
ProbabilitySeries random_baseline(std::size_t length, double rate, std::uint64_t seed);

/// The null baseline scores 0 on every metric by definition. It is not an
/// all-zero prediction series; results are constructed directly with zero
/// counts and undefined precision/recall.
std::vector<MetricResult> null_baseline_scores(const std::vector<MetricSpec>& specs);

/// Per-subject stream for baseline generation, keyed by subject id so that
/// adding a subject never perturbs the others' baselines.
std::uint64_t subject_stream(std::uint64_t seed, std::string_view subject_id);

}  // namespace tseval
