#include "tseval/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tseval/rng.hpp"

namespace tseval {

namespace {

constexpr double kEqTolerance = 1e-9;
constexpr double kScenarioRate = 1.0;  // 1 Hz: steps and seconds coincide

void set_range(std::vector<std::uint8_t>& v, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i <= hi; ++i) v[i] = 1;
}

std::string format_bound(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct Layout {
  std::vector<std::uint8_t> truth;
  std::vector<std::uint8_t> prediction;
};

Layout build_layout(ScenarioId id, std::size_t length, std::uint64_t seed) {
  if (length < 80) {
    throw std::invalid_argument("generate_scenario: length must be >= 80");
  }
  const std::size_t c = length / 2;
  Layout layout;
  layout.truth.assign(length, 0);
  layout.prediction.assign(length, 0);
  switch (id) {
    case ScenarioId::perfect_match:
      set_range(layout.truth, c - 20, c + 20);
      set_range(layout.prediction, c - 20, c + 20);
      break;
    case ScenarioId::point_for_long_event:
      set_range(layout.truth, c - 20, c + 19);  // 40-step event
      layout.prediction[c] = 1;
      break;
    case ScenarioId::fragmented_shifted:
      set_range(layout.truth, c, c + 19);
      set_range(layout.prediction, c + 5, c + 12);
      set_range(layout.prediction, c + 16, c + 24);
      break;
    case ScenarioId::near_miss:
      layout.truth[c] = 1;
      layout.prediction[c + 5] = 1;
      break;
    case ScenarioId::window_over_point:
      layout.truth[c] = 1;
      set_range(layout.prediction, c - 5, c + 30);
      break;
    case ScenarioId::random_over_point: {
      layout.truth[c] = 1;
      Xoshiro256pp rng(seed);
      for (auto& v : layout.prediction) v = rng.next_double() < 0.10 ? 1 : 0;
      break;
    }
  }
  return layout;
}

std::vector<MetricSpec> suite_metric_set(std::size_t window_steps,
                                       const std::vector<double>& betas,
                                       const std::vector<double>& k_values) {
  std::vector<MetricSpec> specs;
  specs.push_back(MetricSpec::pointwise(1.0));
  for (double beta : betas) specs.push_back(MetricSpec::pointwise(beta));
  std::vector<double> ks = k_values;
  std::sort(ks.begin(), ks.end(), std::greater<>());
  for (double k : ks) specs.push_back(MetricSpec::point_adjusted(k));
  specs.push_back(MetricSpec::windowed(
      WindowSpec{static_cast<double>(window_steps), WindowKind::radius}));
  return specs;
}

MetricAssertion make(MetricSpec spec, Comparator cmp, double lo, double hi = 0.0) {
  MetricAssertion a;
  a.spec = std::move(spec);
  a.cmp = cmp;
  a.lo = lo;
  a.hi = hi;
  return a;
}

// Bounds below are pinned to the fixed layouts above; the window metric is
// always the last spec in the suite metric set.
std::vector<MetricAssertion> build_expectations(ScenarioId id,
                                                const std::vector<MetricSpec>& specs) {
  std::vector<MetricAssertion> expectations;
  for (const MetricSpec& spec : specs) {
    const bool is_window = spec.family == CountRegime::windowed;
    const bool is_pa = spec.family == CountRegime::pa_k;
    switch (id) {
      case ScenarioId::perfect_match:
        expectations.push_back(make(spec, Comparator::eq, 1.0));
        break;
      case ScenarioId::point_for_long_event:
        if (is_window) {
          expectations.push_back(make(spec, Comparator::between, 0.06, 1.0));
        } else if (is_pa && *spec.k == 0.0) {
          expectations.push_back(make(spec, Comparator::eq, 1.0));
        } else if (is_pa || spec.beta == 1.0) {
          expectations.push_back(make(spec, Comparator::lt, 0.06));
        } else {
          expectations.push_back(make(spec, Comparator::lt, 0.2));
        }
        break;
      case ScenarioId::fragmented_shifted:
        expectations.push_back(is_window ? make(spec, Comparator::eq, 1.0)
                                         : make(spec, Comparator::lt, 0.95));
        break;
      case ScenarioId::near_miss:
        expectations.push_back(is_window ? make(spec, Comparator::eq, 1.0)
                                         : make(spec, Comparator::eq, 0.0));
        break;
      case ScenarioId::window_over_point:
        expectations.push_back(is_window ? make(spec, Comparator::between, 0.2, 1.0)
                                         : make(spec, Comparator::lt, 0.2));
        break;
      case ScenarioId::random_over_point:
        expectations.push_back(is_window ? make(spec, Comparator::between, 0.0, 0.5)
                                         : make(spec, Comparator::eq, 0.0));
        break;
    }
  }
  return expectations;
}

Scenario make_scenario(ScenarioId id, std::size_t length, std::uint64_t seed,
                       std::size_t window_steps, const std::vector<double>& betas,
                       const std::vector<double>& k_values) {
  Layout layout = build_layout(id, length, seed);
  const std::vector<MetricSpec> specs = suite_metric_set(window_steps, betas, k_values);
  return Scenario{
      id,
      LabelSeries(std::move(layout.truth), kScenarioRate),
      LabelSeries(std::move(layout.prediction), kScenarioRate),
      build_expectations(id, specs),
  };
}

}  // namespace

std::string_view scenario_name(ScenarioId id) noexcept {
  switch (id) {
    case ScenarioId::perfect_match:
      return "perfect_match";
    case ScenarioId::point_for_long_event:
      return "point_for_long_event";
    case ScenarioId::fragmented_shifted:
      return "fragmented_shifted";
    case ScenarioId::near_miss:
      return "near_miss";
    case ScenarioId::window_over_point:
      return "window_over_point";
    case ScenarioId::random_over_point:
      return "random_over_point";
  }
  return "unknown";
}

ScenarioId scenario_from_name(std::string_view name) {
  for (ScenarioId id : {ScenarioId::perfect_match, ScenarioId::point_for_long_event,
                        ScenarioId::fragmented_shifted, ScenarioId::near_miss,
                        ScenarioId::window_over_point, ScenarioId::random_over_point}) {
    if (scenario_name(id) == name) return id;
  }
  throw std::invalid_argument("unknown scenario id: " + std::string(name));
}

bool MetricAssertion::holds(double value) const noexcept {
  switch (cmp) {
    case Comparator::eq:
      return std::fabs(value - lo) <= kEqTolerance;
    case Comparator::lt:
      return value < lo;
    case Comparator::gt:
      return value > lo;
    case Comparator::between:
      return value > lo && value < hi;
  }
  return false;
}

std::string MetricAssertion::describe() const {
  switch (cmp) {
    case Comparator::eq:
      return "== " + format_bound(lo);
    case Comparator::lt:
      return "< " + format_bound(lo);
    case Comparator::gt:
      return "> " + format_bound(lo);
    case Comparator::between:
      return "in (" + format_bound(lo) + ", " + format_bound(hi) + ")";
  }
  return "";
}

Scenario generate_scenario(ScenarioId id, std::size_t length, std::uint64_t seed) {
  return make_scenario(id, length, seed, 10, {0.5, 2.0}, {0.0, 0.5});
}

SuiteReport run_scenario_suite(std::size_t window_steps, const std::vector<double>& betas,
                               const std::vector<double>& k_values, std::size_t length,
                               std::uint64_t seed) {
  SuiteReport report;
  report.window_steps = window_steps;
  report.betas = betas;
  report.k_values = k_values;
  report.length = length;
  report.seed = seed;
  report.all_passed = true;

  for (ScenarioId id : {ScenarioId::perfect_match, ScenarioId::point_for_long_event,
                        ScenarioId::fragmented_shifted, ScenarioId::near_miss,
                        ScenarioId::window_over_point, ScenarioId::random_over_point}) {
    const Scenario scenario = make_scenario(id, length, seed, window_steps, betas, k_values);
    for (const MetricAssertion& assertion : scenario.expectations) {
      const MetricResult result =
          evaluate_metric(scenario.truth, scenario.prediction, assertion.spec);
      AssertionOutcome outcome;
      outcome.scenario = std::string(scenario_name(id));
      outcome.metric = assertion.spec.display_name();
      outcome.expectation = assertion.describe();
      outcome.actual = result.f_score;
      outcome.passed = assertion.holds(result.f_score);
      report.all_passed = report.all_passed && outcome.passed;
      report.outcomes.push_back(std::move(outcome));
    }
  }
  return report;
}

}  // namespace tseval
