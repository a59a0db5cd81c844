#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "laststop/errors.hpp"
#include "laststop/odds.hpp"

namespace laststop {

// Nonnegative arrival intensity on a subinterval of [0, 1], zero outside its
// support.  Three closed-form shapes cover the cases the stopping rules need;
// all integrals are exact, never quadrature.
class IntensityFunction {
 public:
  enum class Kind { constant, piecewise_linear, reciprocal };

  static IntensityFunction constant(double value, double a, double b) {
    check_support(a, b);
    if (!(value >= 0.0) || !std::isfinite(value))
      throw validation_error("constant intensity must be finite and nonnegative");
    IntensityFunction f(Kind::constant, a, b);
    f.value_ = value;
    return f;
  }

  // Knots are (time, value) pairs with strictly increasing times; the support
  // is the knot span and the intensity interpolates linearly between knots.
  static IntensityFunction piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw validation_error("need at least two knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
      if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second))
        throw validation_error("knot " + std::to_string(i + 1) + " is not finite");
      if (!(knots[i].second >= 0.0))
        throw validation_error("knot " + std::to_string(i + 1) + " has negative value");
      if (i > 0 && !(knots[i].first > knots[i - 1].first))
        throw validation_error("knot times must be strictly increasing");
    }
    check_support(knots.front().first, knots.back().first);
    IntensityFunction f(Kind::piecewise_linear, knots.front().first, knots.back().first);
    f.knots_ = std::move(knots);
    return f;
  }

  // 1/u on [a, b]; a must be positive or the mass at the origin is infinite.
  static IntensityFunction reciprocal(double a, double b) {
    check_support(a, b);
    if (!(a > 0.0)) throw validation_error("reciprocal intensity needs support start > 0");
    return IntensityFunction(Kind::reciprocal, a, b);
  }

  Kind kind() const { return kind_; }
  double support_begin() const { return a_; }
  double support_end() const { return b_; }
  double constant_value() const { return value_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  double value_at(double u) const {
    if (u < a_ || u > b_) return 0.0;
    switch (kind_) {
      case Kind::constant:
        return value_;
      case Kind::reciprocal:
        return 1.0 / u;
      case Kind::piecewise_linear: {
        auto it = std::upper_bound(
            knots_.begin(), knots_.end(), u,
            [](double t, const std::pair<double, double>& knot) { return t < knot.first; });
        if (it == knots_.begin()) return knots_.front().second;
        if (it == knots_.end()) return knots_.back().second;
        auto lo = *(it - 1);
        auto hi = *it;
        double w = (u - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
      }
    }
    return 0.0;
  }

  // Exact integral over [t1, t2] clipped to the support.
  double integral(double t1, double t2) const {
    if (t2 < t1) throw validation_error("integration bounds out of order");
    double lo = std::max(t1, a_);
    double hi = std::min(t2, b_);
    if (hi <= lo) return 0.0;
    switch (kind_) {
      case Kind::constant:
        return value_ * (hi - lo);
      case Kind::reciprocal:
        return std::log(hi / lo);
      case Kind::piecewise_linear: {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
          double s0 = knots_[i].first;
          double s1 = knots_[i + 1].first;
          double c0 = std::max(lo, s0);
          double c1 = std::min(hi, s1);
          if (c1 <= c0) continue;
          // Trapezoid over [c0, c1]; exact because the shape is linear there.
          total += 0.5 * (value_on_segment(i, c0) + value_on_segment(i, c1)) * (c1 - c0);
        }
        return total;
      }
    }
    return 0.0;
  }

  // Mass left of the horizon: integral over [t, 1].
  double tail_integral(double t) const { return integral(std::max(t, 0.0), 1.0); }

 private:
  IntensityFunction(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  static void check_support(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a >= 0.0) || !(b <= 1.0) || !(a < b))
      throw validation_error("support must satisfy 0 <= a < b <= 1");
  }

  double value_on_segment(std::size_t i, double u) const {
    double s0 = knots_[i].first;
    double s1 = knots_[i + 1].first;
    double w = (u - s0) / (s1 - s0);
    return knots_[i].second + w * (knots_[i + 1].second - knots_[i].second);
  }

  Kind kind_;
  double a_;
  double b_;
  double value_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

// Earliest time t >= from_time at which the remaining intensity mass
// integral(t, 1) has dropped to at most 1.  The tail is continuous and
// nonincreasing, so bisection on the predicate converges; result is accurate
// to 1e-10 in t.
inline double continuous_threshold(const IntensityFunction& intensity, double from_time) {
  if (!(from_time >= 0.0 && from_time < 1.0))
    throw validation_error("search start must lie in [0, 1)");
  double at_start = intensity.tail_integral(from_time);
  if (!std::isfinite(at_start)) throw numerical_error("intensity tail integral is not finite");
  if (at_start <= 1.0) return from_time;
  double lo = from_time;  // tail > 1
  double hi = 1.0;        // tail = 0
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (intensity.tail_integral(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

struct PartitionOddsSum {
  double odds_sum = 0.0;       // sum of p_j / (1 - p_j) over the cells
  double max_cell_prob = 0.0;  // s(m), controls the squeeze width
};

namespace detail {

inline std::vector<double> cell_probabilities(const IntensityFunction& intensity,
                                              double t, int m) {
  if (!(t >= 0.0 && t < 1.0)) throw validation_error("partition start must lie in [0, 1)");
  if (m < 1) throw validation_error("cell count must be at least 1");
  std::vector<double> p(static_cast<std::size_t>(m));
  const double h = (1.0 - t) / static_cast<double>(m);
  for (int j = 1; j <= m; ++j) {
    double left = t + h * static_cast<double>(j - 1);
    double right = (j == m) ? 1.0 : t + h * static_cast<double>(j);
    double mass = intensity.integral(left, right);
    if (!(mass < 1.0))
      throw numerical_error("cell " + std::to_string(j) + " carries probability " +
                            std::to_string(mass) + " >= 1; increase the cell count");
    p[static_cast<std::size_t>(j - 1)] = mass;
  }
  return p;
}

}  // namespace detail

// Odds sum of the equidistant m-cell discretisation of [t, 1].  Squeezed
// between the tail integral and tail integral / (1 - max cell probability),
// which is how the continuous rule is recovered as m grows.
inline PartitionOddsSum partition_odds_sum(const IntensityFunction& intensity,
                                           double t, int m) {
  auto p = detail::cell_probabilities(intensity, t, m);
  PartitionOddsSum result;
  for (double mass : p) {
    result.odds_sum += mass / (1.0 - mass);
    result.max_cell_prob = std::max(result.max_cell_prob, mass);
  }
  return result;
}

// The discretised problem itself: one Bernoulli index per cell.
inline OddsProblem discretize(const IntensityFunction& intensity, double t, int m) {
  return OddsProblem(detail::cell_probabilities(intensity, t, m));
}

// Left endpoint of the first cell from which the discretised rule may stop;
// converges to continuous_threshold(intensity, t) as m grows.
inline double discretized_threshold_time(const IntensityFunction& intensity,
                                         double t, int m) {
  OddsProblem cells = discretize(intensity, t, m);
  int s_prime = threshold_inf_form(cells);
  const double h = (1.0 - t) / static_cast<double>(m);
  return t + h * static_cast<double>(s_prime - 1);
}

}  // namespace laststop
