#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "laststop/errors.hpp"

namespace laststop {

namespace detail {

inline void check_wait_fraction(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw validation_error("wait fraction must lie in [0, 1]");
}

inline void check_horizon(long n) {
  if (n < 1) throw validation_error("candidate count must be at least 1");
}

}  // namespace detail

// sum_{k=1}^{n-1} (1-x)^k / k.  All terms positive, accumulated forward; this
// is both the defining equation of the optimal wait fraction and the second
// half of the success probability.
inline double wait_equation_sum(long n, double x) {
  detail::check_horizon(n);
  detail::check_wait_fraction(x);
  const double y = 1.0 - x;
  double sum = 0.0;
  double power = 1.0;
  for (long k = 1; k <= n - 1; ++k) {
    power *= y;
    if (power == 0.0) break;  // underflow; remaining terms are below resolution
    sum += power / static_cast<double>(k);
  }
  return sum;
}

// Probability that the strategy "observe until time x, then take the first
// candidate better than everything seen so far" picks the overall best of n
// uniformly-arriving candidates:
//   p_n(x) = (1-x)^n / n + x * sum_{k=1}^{n-1} (1-x)^k / k.
inline double success_probability(long n, double x) {
  detail::check_horizon(n);
  detail::check_wait_fraction(x);
  if (x == 1.0) return 0.0;                                 // never selects
  if (x == 0.0) return 1.0 / static_cast<double>(n);        // takes the first arrival
  const double y = 1.0 - x;
  double lead = std::pow(y, static_cast<double>(n)) / static_cast<double>(n);
  return lead + x * wait_equation_sum(n, x);
}

// Unique root in [0, 1] of wait_equation_sum(n, x) = 1; the left side falls
// strictly from H_{n-1} to 0, so plain bisection is safe.  n = 1 and n = 2
// sit at the boundary x = 0.
inline double optimal_wait_threshold(long n) {
  detail::check_horizon(n);
  if (n <= 2) return 0.0;
  double lo = 0.0;   // sum >= 1
  double hi = 1.0;   // sum = 0
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (wait_equation_sum(n, mid) >= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Limit of p_n(x) as n grows.
inline double limiting_success(double x) {
  detail::check_wait_fraction(x);
  if (x == 0.0) return 0.0;
  return -x * std::log(x);
}

// The strategy walks away empty-handed exactly when the overall best arrives
// before the deadline x, and the best candidate's arrival time is uniform, so
// this is x for every n.  Cross-checked against simulated outcome counts.
inline double no_selection_probability(long n, double x) {
  detail::check_horizon(n);
  detail::check_wait_fraction(x);
  return x;
}

// p_n(x) - (-x log x), evaluated through the series tail
//   (1-x)^n / n - x * sum_{k>=n} (1-x)^k / k
// so the excess keeps full relative precision even when it is far below the
// rounding error of the direct difference.  Nonnegative for every n and x.
inline double limit_excess(long n, double x) {
  detail::check_horizon(n);
  detail::check_wait_fraction(x);
  if (x == 0.0) return 1.0 / static_cast<double>(n);
  if (x == 1.0) return 0.0;
  const double y = 1.0 - x;
  double power = std::pow(y, static_cast<double>(n));
  double lead = power / static_cast<double>(n);
  double tail = 0.0;
  for (long k = n; ; ++k) {
    double term = power / static_cast<double>(k);
    tail += term;
    power *= y;
    if (term <= tail * 1e-18 || term == 0.0) break;
  }
  return lead - x * tail;
}

// Margin of the success probability at wait fraction 1/e over the limit value
// 1/e itself; positive for every finite n.
inline double one_over_e_margin(long n) {
  return limit_excess(n, std::exp(-1.0));
}

struct ThresholdTableRow {
  long n = 0;
  double x_n = 0.0;       // optimal wait fraction
  double p_at_xn = 0.0;   // success probability at x_n
  double p_at_inv_e = 0.0;
};

inline std::vector<ThresholdTableRow> threshold_table(long n_max) {
  detail::check_horizon(n_max);
  const double inv_e = std::exp(-1.0);
  std::vector<ThresholdTableRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (long n = 1; n <= n_max; ++n) {
    ThresholdTableRow row;
    row.n = n;
    row.x_n = optimal_wait_threshold(n);
    row.p_at_xn = success_probability(n, row.x_n);
    row.p_at_inv_e = success_probability(n, inv_e);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace laststop
