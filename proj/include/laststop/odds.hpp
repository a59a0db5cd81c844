#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "laststop/errors.hpp"

namespace laststop {

// A finite sequence of independent success probabilities p_1..p_n, each in
// [0, 1).  Certain successes are excluded because their odds are infinite; a
// caller who wants "index 1 always succeeds" can pass 1 - epsilon, which
// leaves every threshold below untouched.
class OddsProblem {
 public:
  explicit OddsProblem(std::vector<double> probabilities)
      : p_(std::move(probabilities)) {
    if (p_.empty()) throw validation_error("odds problem needs at least one probability");
    for (std::size_t i = 0; i < p_.size(); ++i) {
      double v = p_[i];
      if (!(v >= 0.0 && v < 1.0))
        throw validation_error("probability at index " + std::to_string(i + 1) +
                               " is outside [0, 1)");
    }
  }

  int size() const { return static_cast<int>(p_.size()); }
  double probability(int k) const { return p_[check_index(k)]; }
  const std::vector<double>& probabilities() const { return p_; }

  // r_k = p_k / (1 - p_k).
  double odds(int k) const {
    std::size_t i = check_index(k);
    return p_[i] / (1.0 - p_[i]);
  }

  std::size_t check_index(int k) const {
    if (k < 1 || k > size())
      throw validation_error("index " + std::to_string(k) + " out of range 1.." +
                             std::to_string(size()));
    return static_cast<std::size_t>(k - 1);
  }

 private:
  std::vector<double> p_;
};

inline std::vector<double> odds_of(const OddsProblem& problem) {
  std::vector<double> r(static_cast<std::size_t>(problem.size()));
  for (int k = 1; k <= problem.size(); ++k) r[static_cast<std::size_t>(k - 1)] = problem.odds(k);
  return r;
}

namespace detail {

// Suffix odds sums accumulated from the right so every R(k, n) is a sum of
// nonnegative terms in increasing index distance.  tail[k-1] = sum_{j>=k} r_j,
// tail[n] = 0.
inline std::vector<double> tail_odds_sums(const OddsProblem& problem) {
  const int n = problem.size();
  std::vector<double> tail(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = n; k >= 1; --k)
    tail[static_cast<std::size_t>(k - 1)] = tail[static_cast<std::size_t>(k)] + problem.odds(k);
  return tail;
}

}  // namespace detail

// Sum of odds over k..n; k = n + 1 gives the empty sum.
inline double tail_odds(const OddsProblem& problem, int k) {
  if (k < 1 || k > problem.size() + 1)
    throw validation_error("tail start " + std::to_string(k) + " out of range");
  auto tail = detail::tail_odds_sums(problem);
  return tail[static_cast<std::size_t>(k - 1)];
}

// Largest k whose tail odds sum still reaches 1, or 1 if none does.
inline int threshold_sup_form(const OddsProblem& problem) {
  auto tail = detail::tail_odds_sums(problem);
  for (int k = problem.size(); k >= 1; --k)
    if (tail[static_cast<std::size_t>(k - 1)] >= 1.0) return k;
  return 1;
}

// Smallest k whose strictly-later tail odds sum has dropped to at most 1.
// Always well defined: the empty sum past n is 0.
inline int threshold_inf_form(const OddsProblem& problem) {
  auto tail = detail::tail_odds_sums(problem);
  for (int k = 1; k <= problem.size(); ++k)
    if (tail[static_cast<std::size_t>(k)] <= 1.0) return k;
  return problem.size();
}

// Probability that "stop at the first success at index >= from_index" stops on
// the final success of the whole sequence.  Backward recursion over
//   win(k) = p_k * none_after(k) + (1 - p_k) * win(k + 1).
inline double win_probability(const OddsProblem& problem, int from_index) {
  problem.check_index(from_index);
  const int n = problem.size();
  double win = 0.0;         // win(k+1)
  double none_after = 1.0;  // probability of zero successes in k+1..n
  for (int k = n; k >= from_index; --k) {
    double p = problem.probability(k);
    win = p * none_after + (1.0 - p) * win;
    none_after *= (1.0 - p);
  }
  return win;
}

struct ThresholdResult {
  int s = 1;        // sup form
  int s_prime = 1;  // inf form, the canonical stopping index
  double tail_odds_at_s = 0.0;
  double win_probability = 0.0;
  // Some tail sum sits within 1e-12 of 1: the two threshold forms may then
  // legitimately disagree, and every index between them is optimal.
  bool tie_diagnostic = false;
};

inline ThresholdResult solve(const OddsProblem& problem) {
  auto tail = detail::tail_odds_sums(problem);
  ThresholdResult result;
  result.s = threshold_sup_form(problem);
  result.s_prime = threshold_inf_form(problem);
  result.tail_odds_at_s = tail[static_cast<std::size_t>(result.s - 1)];
  result.win_probability = win_probability(problem, result.s_prime);
  for (double value : tail)
    if (std::fabs(value - 1.0) < 1e-12) result.tie_diagnostic = true;
  return result;
}

// Success probabilities re-evaluated after conditioning on a delay: the rule
// may not stop before index w, and p_j_given_w[j - w] is the success
// probability of index j under that conditioning, for j = w..n.
class DelayedOddsProblem {
 public:
  DelayedOddsProblem(int n, int w, std::vector<double> p_given_w)
      : n_(n), w_(w), p_(std::move(p_given_w)) {
    if (n < 1) throw validation_error("horizon must be at least 1");
    if (w < 1 || w > n) throw validation_error("delay index must lie in 1..n");
    if (static_cast<int>(p_.size()) != n - w + 1)
      throw validation_error("expected " + std::to_string(n - w + 1) +
                             " probabilities for indices " + std::to_string(w) +
                             ".." + std::to_string(n));
    for (std::size_t i = 0; i < p_.size(); ++i)
      if (!(p_[i] >= 0.0 && p_[i] < 1.0))
        throw validation_error("probability for index " +
                               std::to_string(w + static_cast<int>(i)) +
                               " is outside [0, 1)");
  }

  int size() const { return n_; }
  int delay() const { return w_; }
  double probability(int j) const { return p_[check_index(j)]; }
  double odds(int j) const {
    double p = probability(j);
    return p / (1.0 - p);
  }

 private:
  std::size_t check_index(int j) const {
    if (j < w_ || j > n_)
      throw validation_error("index " + std::to_string(j) + " out of range " +
                             std::to_string(w_) + ".." + std::to_string(n_));
    return static_cast<std::size_t>(j - w_);
  }
  int n_;
  int w_;
  std::vector<double> p_;
};

struct DelayedRule {
  int threshold = 1;  // stop at the first success at index >= threshold
  double tail_odds_past_threshold = 0.0;
};

// Smallest k in w..n whose strictly-later conditional odds sum is at most 1.
// k = n always qualifies, so the rule exists for every input.
inline DelayedRule delayed_threshold(const DelayedOddsProblem& problem) {
  const int n = problem.size();
  const int w = problem.delay();
  std::vector<double> tail(static_cast<std::size_t>(n - w + 2), 0.0);
  for (int j = n; j >= w; --j)
    tail[static_cast<std::size_t>(j - w)] =
        tail[static_cast<std::size_t>(j - w + 1)] + problem.odds(j);
  for (int k = w; k <= n; ++k) {
    if (tail[static_cast<std::size_t>(k - w + 1)] <= 1.0)
      return {k, tail[static_cast<std::size_t>(k - w + 1)]};
  }
  return {n, 0.0};
}

}  // namespace laststop
