#pragma once

// Brute-force reference counters that literally evaluate the counting
// definitions with nested loops, including the exists/forall window
// quantifiers. Deliberately independent of the library's segment scan and
// prefix-sum code paths; used only to cross-check them.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tseval_oracle {

struct Counts {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
};

using Bits = std::vector<std::uint8_t>;

inline Counts pointwise(const Bits& y, const Bits& yhat) {
  Counts c;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (y[t] == 1 && yhat[t] == 1) ++c.tp;
    if (y[t] == 0 && yhat[t] == 1) ++c.fp;
    if (y[t] == 1 && yhat[t] == 0) ++c.fn;
  }
  return c;
}

// Point-adjusted with threshold k; the adjustment predicate is re-derived
// from scratch for every sample of every true segment. A segment counts as
// adjusted when its predicted fraction reaches k and at least one sample is
// hit (so k = 0 is classic point adjustment, not a free pass).
inline Counts point_adjusted(const Bits& y, const Bits& yhat, double k) {
  Counts c;
  const std::size_t n = y.size();
  for (std::size_t t = 0; t < n; ++t) {
    if (yhat[t] == 1 && y[t] == 0) ++c.fp;
  }
  std::size_t start = 0;
  while (start < n) {
    if (y[start] == 0) {
      ++start;
      continue;
    }
    std::size_t end = start;
    while (end + 1 < n && y[end + 1] == 1) ++end;
    for (std::size_t t = start; t <= end; ++t) {
      long long hits = 0;
      for (std::size_t u = start; u <= end; ++u) hits += yhat[u];
      const double fraction =
          static_cast<double>(hits) / static_cast<double>(end - start + 1);
      const bool adjusted = hits > 0 && fraction >= k;
      if (yhat[t] == 1 || adjusted) ++c.tp;
      if (yhat[t] == 0 && !adjusted) ++c.fn;
    }
    start = end + 1;
  }
  return c;
}

// Classic point adjustment: a true segment is credited in full iff it
// contains at least one predicted positive.
inline Counts classic_point_adjustment(const Bits& y, const Bits& yhat) {
  Counts c;
  const std::size_t n = y.size();
  for (std::size_t t = 0; t < n; ++t) {
    if (yhat[t] == 1 && y[t] == 0) ++c.fp;
  }
  std::size_t start = 0;
  while (start < n) {
    if (y[start] == 0) {
      ++start;
      continue;
    }
    std::size_t end = start;
    while (end + 1 < n && y[end + 1] == 1) ++end;
    bool any_hit = false;
    for (std::size_t u = start; u <= end; ++u) any_hit = any_hit || yhat[u] == 1;
    const auto len = static_cast<long long>(end - start + 1);
    c.tp += any_hit ? len : 0;
    c.fn += any_hit ? 0 : len;
    start = end + 1;
  }
  return c;
}

inline Counts windowed(const Bits& y, const Bits& yhat, std::size_t radius) {
  Counts c;
  const std::size_t n = y.size();
  const auto any_in_window = [&](const Bits& series, std::size_t t) {
    const std::size_t lo = t >= radius ? t - radius : 0;
    const std::size_t hi = t + radius < n ? t + radius : n - 1;
    for (std::size_t u = lo; u <= hi; ++u) {
      if (series[u] == 1) return true;
    }
    return false;
  };
  for (std::size_t t = 0; t < n; ++t) {
    if (yhat[t] == 1) {
      any_in_window(y, t) ? ++c.tp : ++c.fp;
    }
    if (y[t] == 1 && !any_in_window(yhat, t)) ++c.fn;
  }
  return c;
}

}  // namespace tseval_oracle
