#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tseval/metrics.hpp"
#include "tseval/series.hpp"

namespace tseval {

enum class ScenarioId {
  perfect_match,
  point_for_long_event,
  fragmented_shifted,
  near_miss,
  window_over_point,
  random_over_point,
};

std::string_view scenario_name(ScenarioId id) noexcept;
ScenarioId scenario_from_name(std::string_view name);

inline constexpr std::size_t kScenarioDefaultLength = 200;
inline constexpr std::uint64_t kScenarioDefaultSeed = 11;

enum class Comparator { eq, lt, gt, between };

/// Machine-checkable expectation on one metric. `eq` compares against `lo`
/// with tolerance 1e-9; `between` is exclusive on both bounds.
struct MetricAssertion {
  MetricSpec spec;
  Comparator cmp = Comparator::eq;
  double lo = 0.0;
  double hi = 0.0;

  bool holds(double value) const noexcept;
  std::string describe() const;
};

/// One synthetic truth/prediction pair plus the qualitative outcomes it is
/// meant to demonstrate.
struct Scenario {
  ScenarioId id;
  LabelSeries truth;
  LabelSeries prediction;
  std::vector<MetricAssertion> expectations;
};

/// Deterministic construction for a given (id, length, seed). The series run
/// at 1 Hz so window durations in seconds equal time steps.
Scenario generate_scenario(ScenarioId id, std::size_t length = kScenarioDefaultLength,
                           std::uint64_t seed = kScenarioDefaultSeed);

struct AssertionOutcome {
  std::string scenario;
  std::string metric;
  std::string expectation;
  double actual = 0.0;
  bool passed = false;
};

struct SuiteReport {
  std::size_t window_steps = 10;
  std::vector<double> betas;
  std::vector<double> k_values;
  std::size_t length = kScenarioDefaultLength;
  std::uint64_t seed = kScenarioDefaultSeed;
  std::vector<AssertionOutcome> outcomes;
  bool all_passed = false;
};

/// Evaluates all six scenarios under the metric set {F1, F_betas...,
/// pa for each k, windowed at window_steps} and checks every expectation.
/// Failures are reported in the returned SuiteReport, never thrown.
SuiteReport run_scenario_suite(std::size_t window_steps = 10,
                               const std::vector<double>& betas = {0.5, 2.0},
                               const std::vector<double>& k_values = {0.0, 0.5},
                               std::size_t length = kScenarioDefaultLength,
                               std::uint64_t seed = kScenarioDefaultSeed);

}  // namespace tseval
