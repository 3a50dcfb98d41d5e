#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "tseval/metrics.hpp"
#include "tseval/rng.hpp"

using namespace tseval;

namespace {

std::vector<std::uint8_t> random_bits(Xoshiro256pp& rng, std::size_t n, double density) {
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) x = rng.next_double() < density ? 1 : 0;
  return v;
}

bool matches(const ConfusionCounts& got, const tseval_oracle::Counts& want) {
  return got.tp == want.tp && got.fp == want.fp && got.fn == want.fn;
}

}  // namespace

TEST_CASE("counting regimes match the literal-quantifier brute force") {
  Xoshiro256pp rng(8086);
  const std::vector<double> ks = {0.0, 0.25, 1.0 / 3.0, 0.5, 0.75, 1.0};
  const std::vector<std::size_t> radii = {0, 1, 2, 5};

  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.next_below(30);
    const double density = 0.1 + 0.6 * rng.next_double();
    const auto y_bits = random_bits(rng, n, density);
    const auto yhat_bits = random_bits(rng, n, density);
    const LabelSeries y(y_bits, 1.0);
    const LabelSeries yhat(yhat_bits, 1.0);

    CHECK(matches(pointwise_counts(y, yhat), tseval_oracle::pointwise(y_bits, yhat_bits)));
    for (double k : ks) {
      CHECK(matches(pa_counts(y, yhat, k),
                    tseval_oracle::point_adjusted(y_bits, yhat_bits, k)));
    }
    for (std::size_t r : radii) {
      CHECK(matches(
          window_counts(y, yhat, {static_cast<double>(r), WindowKind::radius}),
          tseval_oracle::windowed(y_bits, yhat_bits, r)));
    }
  }
}

TEST_CASE("exhaustive agreement on all pairs of length 5") {
  for (unsigned ybits = 0; ybits < 32; ++ybits) {
    for (unsigned pbits = 0; pbits < 32; ++pbits) {
      std::vector<std::uint8_t> y_bits(5), yhat_bits(5);
      for (unsigned i = 0; i < 5; ++i) {
        y_bits[i] = (ybits >> i) & 1;
        yhat_bits[i] = (pbits >> i) & 1;
      }
      const LabelSeries y(y_bits, 1.0);
      const LabelSeries yhat(yhat_bits, 1.0);
      REQUIRE(matches(pa_counts(y, yhat, 0.5),
                      tseval_oracle::point_adjusted(y_bits, yhat_bits, 0.5)));
      REQUIRE(matches(pa_counts(y, yhat, 0.0),
                      tseval_oracle::classic_point_adjustment(y_bits, yhat_bits)));
      REQUIRE(matches(window_counts(y, yhat, {1.0, WindowKind::radius}),
                      tseval_oracle::windowed(y_bits, yhat_bits, 1)));
    }
  }
}
