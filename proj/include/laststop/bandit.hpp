#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "laststop/errors.hpp"
#include "laststop/parallel.hpp"
#include "laststop/rng.hpp"

namespace laststop {

// Two parallel sequences of known per-step success probabilities.  The player
// bets one line per step; line 1 is the default whenever both look equal.
class TwoLineInstance {
 public:
  TwoLineInstance(std::vector<double> line1, std::vector<double> line2)
      : p1_(std::move(line1)), p2_(std::move(line2)) {
    if (p1_.size() != p2_.size())
      throw validation_error("the two lines must have equal length");
    if (p1_.empty()) throw validation_error("instance needs at least one step");
    for (std::size_t j = 0; j < p1_.size(); ++j) {
      if (!(p1_[j] >= 0.0 && p1_[j] <= 1.0) || !(p2_[j] >= 0.0 && p2_[j] <= 1.0))
        throw validation_error("step " + std::to_string(j + 1) +
                               " has a probability outside [0, 1]");
    }
  }

  int size() const { return static_cast<int>(p1_.size()); }
  double line1(int j) const { return p1_[check_step(j)]; }
  double line2(int j) const { return p2_[check_step(j)]; }

 private:
  std::size_t check_step(int j) const {
    if (j < 1 || j > size())
      throw validation_error("step " + std::to_string(j) + " out of range 1.." +
                             std::to_string(size()));
    return static_cast<std::size_t>(j - 1);
  }
  std::vector<double> p1_;
  std::vector<double> p2_;
};

// Greedy bet at step j among the available lines; ties go to line 1.
// line2_available = false models a blocked second line.
inline int greedy_choice(const TwoLineInstance& instance, int j, bool line2_available = true) {
  if (!line2_available) return 1;
  return instance.line2(j) > instance.line1(j) ? 2 : 1;
}

// M(n) = sum of the larger probability per step; an upper bound on the
// expected reward of every betting policy over the first n steps.
inline double accumulated_max(const TwoLineInstance& instance, int n) {
  if (n < 1 || n > instance.size())
    throw validation_error("step count must lie in 1.." + std::to_string(instance.size()));
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += std::max(instance.line1(j), instance.line2(j));
  return total;
}

// l_n = sum of |p1_j - p2_j|; how much the two lines actually differ, and the
// scale of everything a constrained player can lose.
inline double l_divergence(const TwoLineInstance& instance, int n) {
  if (n < 1 || n > instance.size())
    throw validation_error("step count must lie in 1.." + std::to_string(instance.size()));
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += std::fabs(instance.line1(j) - instance.line2(j));
  return total;
}

// How the per-trial reward is tallied.
//   expected:            add the chosen line's success probability; the only
//                        randomness left is the blocking pattern, so a trial
//                        with no blocked greedy bets contributes exactly zero
//                        gap.
//   sampled_independent: draw the two lines' rewards from independent
//                        uniforms and add the realised reward.
//   sampled_comonotone:  draw both lines from one shared uniform per step.
// All three agree in expectation; the sampled modes only add variance.
enum class RewardModel { expected, sampled_independent, sampled_comonotone };

struct GapEstimate {
  double gap = 0.0;        // estimate of M(n) minus the expected reward
  double std_error = 0.0;  // sample standard error of the per-trial gap
  std::uint64_t trials = 0;
};

namespace detail {

struct GapAccum {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  void merge(const GapAccum& other) {
    sum += other.sum;
    sum_sq += other.sum_sq;
    count += other.count;
  }
};

inline GapEstimate finish_gap(const GapAccum& accum) {
  GapEstimate est;
  est.trials = accum.count;
  if (accum.count == 0) return est;
  double n = static_cast<double>(accum.count);
  est.gap = accum.sum / n;
  double variance = std::max(0.0, accum.sum_sq / n - est.gap * est.gap);
  est.std_error = std::sqrt(variance / n);
  return est;
}

}  // namespace detail

// Greedy play when line 2 is blocked independently each step with probability
// delta, paired against unconstrained greedy play on the same draws.  Returns
// the mean per-trial reward shortfall, which never exceeds delta * l_n in
// expectation.
inline GapEstimate simulate_red_light(const TwoLineInstance& instance, double delta,
                                      std::uint64_t trials, std::uint64_t master_seed,
                                      RewardModel model = RewardModel::expected,
                                      unsigned workers = 1) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw validation_error("blocking probability must lie in [0, 1]");
  if (trials < 1) throw validation_error("trial count must be at least 1");
  const int n = instance.size();
  auto accum = run_chunked<detail::GapAccum>(
      trials, workers, [&](std::uint64_t index, detail::GapAccum& local) {
        Xoshiro256 rng(derive_stream_seed(master_seed, index));
        double free_reward = 0.0;
        double blocked_reward = 0.0;
        for (int j = 1; j <= n; ++j) {
          bool blocked = delta > 0.0 && rng.uniform01() < delta;
          int free_pick = greedy_choice(instance, j);
          int constrained_pick = blocked ? 1 : free_pick;
          switch (model) {
            case RewardModel::expected: {
              free_reward += free_pick == 2 ? instance.line2(j) : instance.line1(j);
              blocked_reward +=
                  constrained_pick == 2 ? instance.line2(j) : instance.line1(j);
              break;
            }
            case RewardModel::sampled_independent: {
              double win1 = rng.uniform01() < instance.line1(j) ? 1.0 : 0.0;
              double win2 = rng.uniform01() < instance.line2(j) ? 1.0 : 0.0;
              free_reward += free_pick == 2 ? win2 : win1;
              blocked_reward += constrained_pick == 2 ? win2 : win1;
              break;
            }
            case RewardModel::sampled_comonotone: {
              double u = rng.uniform01();
              double win1 = u < instance.line1(j) ? 1.0 : 0.0;
              double win2 = u < instance.line2(j) ? 1.0 : 0.0;
              free_reward += free_pick == 2 ? win2 : win1;
              blocked_reward += constrained_pick == 2 ? win2 : win1;
              break;
            }
          }
        }
        local.add(free_reward - blocked_reward);
      });
  return detail::finish_gap(accum);
}

// Gap estimates across a grid of blocking probabilities with shared blocking
// uniforms: the blocked step set only grows with delta, so the estimates are
// nondecreasing along the grid trial by trial, not merely in expectation.
inline std::vector<GapEstimate> simulate_red_light_grid(
    const TwoLineInstance& instance, const std::vector<double>& deltas,
    std::uint64_t trials, std::uint64_t master_seed, unsigned workers = 1) {
  if (deltas.empty()) throw validation_error("the blocking grid needs at least one value");
  if (trials < 1) throw validation_error("at least one trial is required");
  for (double d : deltas)
    if (!(d >= 0.0 && d <= 1.0))
      throw validation_error("blocking probability must lie in [0, 1]");
  const int n = instance.size();
  const std::size_t grid = deltas.size();

  struct GridAccum {
    std::vector<detail::GapAccum> cells;
    void merge(const GridAccum& other) {
      if (cells.empty()) {
        cells = other.cells;
        return;
      }
      for (std::size_t i = 0; i < cells.size() && i < other.cells.size(); ++i)
        cells[i].merge(other.cells[i]);
    }
  };

  auto accum = run_chunked<GridAccum>(
      trials, workers, [&](std::uint64_t index, GridAccum& local) {
        if (local.cells.empty()) local.cells.resize(grid);
        Xoshiro256 rng(derive_stream_seed(master_seed, index));
        thread_local std::vector<double> gap;
        gap.assign(grid, 0.0);
        for (int j = 1; j <= n; ++j) {
          double u = rng.uniform01();
          int free_pick = greedy_choice(instance, j);
          if (free_pick != 2) continue;  // forcing line 1 costs nothing here
          double loss = instance.line2(j) - instance.line1(j);
          for (std::size_t g = 0; g < grid; ++g)
            if (u < deltas[g]) gap[g] += loss;
        }
        for (std::size_t g = 0; g < grid; ++g) local.cells[g].add(gap[g]);
      });

  std::vector<GapEstimate> results;
  results.reserve(grid);
  for (std::size_t g = 0; g < grid; ++g) results.push_back(detail::finish_gap(accum.cells[g]));
  return results;
}

}  // namespace laststop
