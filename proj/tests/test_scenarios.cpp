#include <doctest.h>

#include <stdexcept>

#include <json.hpp>

#include "tseval/metrics.hpp"
#include "tseval/report.hpp"
#include "tseval/scenarios.hpp"

using namespace tseval;

TEST_CASE("scenario construction is deterministic") {
  for (ScenarioId id : {ScenarioId::perfect_match, ScenarioId::random_over_point}) {
    const Scenario a = generate_scenario(id);
    const Scenario b = generate_scenario(id);
    CHECK(a.truth.values() == b.truth.values());
    CHECK(a.prediction.values() == b.prediction.values());
    CHECK(a.expectations.size() == b.expectations.size());
  }
  const Scenario seeded = generate_scenario(ScenarioId::random_over_point, 200, 1234);
  const Scenario default_seed = generate_scenario(ScenarioId::random_over_point);
  CHECK(seeded.prediction.values() != default_seed.prediction.values());
}

TEST_CASE("scenario names round-trip") {
  for (ScenarioId id : {ScenarioId::perfect_match, ScenarioId::point_for_long_event,
                        ScenarioId::fragmented_shifted, ScenarioId::near_miss,
                        ScenarioId::window_over_point, ScenarioId::random_over_point}) {
    CHECK(scenario_from_name(scenario_name(id)) == id);
  }
  CHECK_THROWS_AS(scenario_from_name("not_a_scenario"), std::invalid_argument);
}

TEST_CASE("short series are rejected") {
  CHECK_THROWS_AS(generate_scenario(ScenarioId::perfect_match, 10), std::invalid_argument);
}

TEST_CASE("the full suite passes under the default configuration") {
  const SuiteReport report = run_scenario_suite();
  for (const AssertionOutcome& outcome : report.outcomes) {
    INFO(outcome.scenario, " ", outcome.metric, " ", outcome.expectation, " actual ",
         outcome.actual);
    CHECK(outcome.passed);
  }
  CHECK(report.all_passed);
  // six scenarios, six metrics each under the default set
  CHECK(report.outcomes.size() == 36);
}

TEST_CASE("scenario signatures: near miss is window-only, long event is pa-only") {
  const Scenario near = generate_scenario(ScenarioId::near_miss);
  const MetricResult pointwise =
      evaluate_metric(near.truth, near.prediction, MetricSpec::pointwise(1.0));
  const MetricResult pa =
      evaluate_metric(near.truth, near.prediction, MetricSpec::point_adjusted(0.0));
  const MetricResult windowed = evaluate_metric(
      near.truth, near.prediction, MetricSpec::windowed({10.0, WindowKind::radius}));
  CHECK(pointwise.f_score == 0.0);
  CHECK(pa.f_score == 0.0);
  CHECK(windowed.f_score == doctest::Approx(1.0));

  const Scenario long_event = generate_scenario(ScenarioId::point_for_long_event);
  const MetricResult long_pa = evaluate_metric(long_event.truth, long_event.prediction,
                                               MetricSpec::point_adjusted(0.0));
  const MetricResult long_f1 = evaluate_metric(long_event.truth, long_event.prediction,
                                               MetricSpec::pointwise(1.0));
  const MetricResult long_w =
      evaluate_metric(long_event.truth, long_event.prediction,
                      MetricSpec::windowed({10.0, WindowKind::radius}));
  CHECK(long_pa.f_score == doctest::Approx(1.0));
  CHECK(long_f1.f_score < 0.06);
  CHECK(long_w.f_score > long_f1.f_score);
  CHECK(long_w.f_score < long_pa.f_score);
}

TEST_CASE("suite report serializes to parseable JSON") {
  const SuiteReport report = run_scenario_suite();
  const std::string text = render_scenario_report_json(report);
  const auto parsed = nlohmann::json::parse(text);
  CHECK(parsed["suite"] == "scenario_suite");
  CHECK(parsed["all_passed"] == true);
  CHECK(parsed["assertions"].size() == report.outcomes.size());
  CHECK(parsed["window_steps"] == 10);
}
