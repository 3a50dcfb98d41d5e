#include "tseval/baselines.hpp"

#include <stdexcept>
#include <string>

#include "tseval/rng.hpp"

namespace tseval {

BaselineKind BaselineKind::random(std::uint64_t seed) {
  BaselineKind b;
  b.kind = Kind::random;
  b.seed = seed;
  return b;
}

BaselineKind BaselineKind::null_baseline() { return BaselineKind{}; }

void BaselineKind::validate() const {
  if (seed.has_value() != (kind == Kind::random)) {
    throw std::invalid_argument("BaselineKind: seed must be present exactly for random");
  }
}

ProbabilitySeries random_baseline(std::size_t length, double rate, std::uint64_t seed) {
  if (length == 0) throw std::invalid_argument("random_baseline: length must be >= 1");
  Xoshiro256pp rng(seed);
  std::vector<double> values(length);
  for (double& v : values) v = rng.next_double();
  return ProbabilitySeries(std::move(values), rate);
}

std::vector<MetricResult> null_baseline_scores(const std::vector<MetricSpec>& specs) {
  if (specs.empty()) {
    throw std::invalid_argument("null_baseline_scores: specs must not be empty");
  }
  std::vector<MetricResult> results;
  results.reserve(specs.size());
  for (const MetricSpec& spec : specs) {
    spec.validate();
    MetricResult result;
    result.spec = spec;
    result.f_score = 0.0;
    result.counts.regime = spec.family;
    results.push_back(std::move(result));
  }
  return results;
}

std::uint64_t subject_stream(std::uint64_t seed, std::string_view subject_id) {
  return derive_seed(seed, fnv1a64(subject_id, fnv1a64("subject:")));
}

}  // namespace tseval
