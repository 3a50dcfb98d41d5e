#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tseval {

/// One subject's score for some metric, used for paired comparisons.
struct SubjectScore {
  std::string subject_id;
  double score = 0.0;
};

/// Per-subject differences d_i = round2(x_i) - round2(y_i). Scores are
/// rounded to two decimals once, before differencing, so negligible gaps
/// (e.g. 0.0001) can never reach significance.
struct DifferenceVector {
  std::vector<double> values;

  std::size_t n() const noexcept { return values.size(); }
  double mean() const noexcept;
};

double round2(double x) noexcept;

/// Aligns the two score lists by subject id (order-insensitive) and returns
/// the rounded differences model - baseline. Mismatched or duplicated
/// subject sets raise std::invalid_argument.
DifferenceVector paired_differences(const std::vector<SubjectScore>& model,
                                    const std::vector<SubjectScore>& baseline);

struct PermutationResult {
  double p_value = 1.0;
  std::uint64_t b_used = 0;
  bool exhaustive = false;
};

/// Two-sided sign-flip permutation test on the mean difference.
///
/// When 2^n <= cap every sign assignment is enumerated and the p-value is the
/// exact tie-inclusive count / 2^n, so n equal-signed differences give
/// exactly 2 / 2^n. Otherwise `cap` random sign vectors are drawn and the
/// add-one smoothed estimate (1 + count) / (1 + cap) is returned. Replicates
/// use seed-derived substreams indexed by replicate, so any evaluation order
/// yields the same result.
PermutationResult permutation_test(const DifferenceVector& d, std::uint64_t cap = 10000,
                                   std::uint64_t seed = 0);

struct BootstrapCI {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t b_used = 0;
};

/// Percentile bootstrap CI (2.5th/97.5th, linear interpolation between order
/// statistics) for the mean difference, resampling min(cap, C(2n-1, n))
/// times. Replicates are substream-indexed like the permutation test.
BootstrapCI bootstrap_ci(const DifferenceVector& d, std::uint64_t cap = 10000,
                         std::uint64_t seed = 0);

enum class Stars { none, one, two, three };
enum class Degeneracy { none, all_zero, all_one };

std::string_view star_string(Stars stars) noexcept;
std::string_view degeneracy_name(Degeneracy d) noexcept;

/// Outcome of the combined test for one metric: the model must beat both the
/// random and the null baseline for stars to appear.
struct SignificanceCell {
  double p_reported = 1.0;
  double p_vs_random = 1.0;
  double p_vs_null = 1.0;
  double mean_diff_random = 0.0;
  double mean_diff_null = 0.0;
  BootstrapCI ci_vs_random;
  PermutationResult perm_random;
  PermutationResult perm_null;
  Stars stars = Stars::none;
  bool fail_random = true;
  bool fail_null = true;
  Degeneracy degenerate = Degeneracy::none;
};

/// Runs the permutation test against both baselines, reports the more
/// conservative p-value, and assigns stars (*** < 0.001, ** < 0.01,
/// * < 0.05) only when the model individually beats each baseline at
/// `alpha` with a positive mean difference. The CI is bootstrap-resampled
/// from the model-vs-random differences. Degeneracy flags are computed from
/// the rounded model scores.
SignificanceCell combined_significance(const std::vector<SubjectScore>& model,
                                       const std::vector<SubjectScore>& random_scores,
                                       const std::vector<SubjectScore>& null_scores,
                                       double alpha = 0.05, std::uint64_t cap = 10000,
                                       std::uint64_t seed = 0);

}  // namespace tseval
