#include "tseval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "tseval/rng.hpp"

namespace tseval {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double sum_ascending(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

// min(cap, C(2n-1, n)): the number of distinct multisets of size n drawn
// from n items. The running product C(n-1+k, k) stays integral at each step.
std::uint64_t capped_resample_count(std::size_t n, std::uint64_t cap) {
  unsigned __int128 res = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    res = res * (n - 1 + k) / k;
    if (res > cap) return cap;
  }
  return static_cast<std::uint64_t>(res);
}

double quantile_linear(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(h);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace

double DifferenceVector::mean() const noexcept {
  if (values.empty()) return 0.0;
  return sum_ascending(values) / static_cast<double>(values.size());
}

double round2(double x) noexcept { return std::round(x * 100.0) / 100.0; }

DifferenceVector paired_differences(const std::vector<SubjectScore>& model,
                                    const std::vector<SubjectScore>& baseline) {
  require(!model.empty(), "paired_differences: need at least one subject");
  require(model.size() == baseline.size(),
          "paired_differences: subject counts differ");
  std::unordered_map<std::string, double> by_id;
  by_id.reserve(baseline.size());
  for (const SubjectScore& s : baseline) {
    const bool inserted = by_id.emplace(s.subject_id, s.score).second;
    require(inserted, "paired_differences: duplicate subject id in baseline");
  }
  DifferenceVector d;
  d.values.reserve(model.size());
  std::unordered_map<std::string, bool> seen;
  seen.reserve(model.size());
  for (const SubjectScore& s : model) {
    require(seen.emplace(s.subject_id, true).second,
            "paired_differences: duplicate subject id in model scores");
    const auto it = by_id.find(s.subject_id);
    require(it != by_id.end(), "paired_differences: subject sets are misaligned");
    d.values.push_back(round2(s.score) - round2(it->second));
  }
  return d;
}

PermutationResult permutation_test(const DifferenceVector& d, std::uint64_t cap,
                                   std::uint64_t seed) {
  const std::size_t n = d.n();
  require(n >= 1, "permutation_test: need at least one difference");
  require(cap >= 1, "permutation_test: cap must be >= 1");
  const double observed = std::fabs(sum_ascending(d.values));

  PermutationResult result;
  result.exhaustive = n < 63 && (std::uint64_t{1} << n) <= cap;
  if (result.exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << n;
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += (mask >> i) & 1 ? -d.values[i] : d.values[i];
      }
      if (std::fabs(sum) >= observed) ++count;
    }
    result.p_value = static_cast<double>(count) / static_cast<double>(total);
    result.b_used = total;
  } else {
    std::uint64_t count = 0;
    for (std::uint64_t b = 0; b < cap; ++b) {
      Xoshiro256pp rng(derive_seed(seed, b));
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += rng.next() >> 63 ? -d.values[i] : d.values[i];
      }
      if (std::fabs(sum) >= observed) ++count;
    }
    result.p_value = static_cast<double>(1 + count) / static_cast<double>(1 + cap);
    result.b_used = cap;
  }
  return result;
}

BootstrapCI bootstrap_ci(const DifferenceVector& d, std::uint64_t cap,
                         std::uint64_t seed) {
  const std::size_t n = d.n();
  require(n >= 1, "bootstrap_ci: need at least one difference");
  require(cap >= 1, "bootstrap_ci: cap must be >= 1");
  const std::uint64_t b_count = capped_resample_count(n, cap);

  std::vector<double> means;
  means.reserve(b_count);
  for (std::uint64_t b = 0; b < b_count; ++b) {
    Xoshiro256pp rng(derive_seed(seed, b));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += d.values[rng.next_below(n)];
    }
    means.push_back(sum / static_cast<double>(n));
  }
  std::sort(means.begin(), means.end());

  BootstrapCI ci;
  ci.lo = quantile_linear(means, 0.025);
  ci.hi = quantile_linear(means, 0.975);
  ci.b_used = b_count;
  return ci;
}

std::string_view star_string(Stars stars) noexcept {
  switch (stars) {
    case Stars::none:
      return "";
    case Stars::one:
      return "*";
    case Stars::two:
      return "**";
    case Stars::three:
      return "***";
  }
  return "";
}

std::string_view degeneracy_name(Degeneracy d) noexcept {
  switch (d) {
    case Degeneracy::none:
      return "none";
    case Degeneracy::all_zero:
      return "all_zero";
    case Degeneracy::all_one:
      return "all_one";
  }
  return "none";
}

SignificanceCell combined_significance(const std::vector<SubjectScore>& model,
                                       const std::vector<SubjectScore>& random_scores,
                                       const std::vector<SubjectScore>& null_scores,
                                       double alpha, std::uint64_t cap,
                                       std::uint64_t seed) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0,
          "combined_significance: alpha must lie in (0, 1)");
  const DifferenceVector d_random = paired_differences(model, random_scores);
  const DifferenceVector d_null = paired_differences(model, null_scores);

  SignificanceCell cell;
  cell.perm_random = permutation_test(d_random, cap, derive_seed(seed, 1));
  cell.perm_null = permutation_test(d_null, cap, derive_seed(seed, 2));
  cell.ci_vs_random = bootstrap_ci(d_random, cap, derive_seed(seed, 3));
  cell.p_vs_random = cell.perm_random.p_value;
  cell.p_vs_null = cell.perm_null.p_value;
  cell.mean_diff_random = d_random.mean();
  cell.mean_diff_null = d_null.mean();
  cell.p_reported = std::max(cell.p_vs_random, cell.p_vs_null);

  // "Outperforms" requires both rejection at alpha and a positive gap.
  const bool beats_random = cell.p_vs_random < alpha && cell.mean_diff_random > 0.0;
  const bool beats_null = cell.p_vs_null < alpha && cell.mean_diff_null > 0.0;
  cell.fail_random = !beats_random;
  cell.fail_null = !beats_null;
  if (beats_random && beats_null) {
    if (cell.p_reported < 0.001) {
      cell.stars = Stars::three;
    } else if (cell.p_reported < 0.01) {
      cell.stars = Stars::two;
    } else if (cell.p_reported < 0.05) {
      cell.stars = Stars::one;
    }
  }

  bool all_zero = true;
  bool all_one = true;
  for (const SubjectScore& s : model) {
    const double rounded = round2(s.score);
    all_zero = all_zero && rounded == 0.0;
    all_one = all_one && rounded == 1.0;
  }
  cell.degenerate = all_zero   ? Degeneracy::all_zero
                    : all_one  ? Degeneracy::all_one
                               : Degeneracy::none;
  return cell;
}

}  // namespace tseval
