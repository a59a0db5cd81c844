#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "laststop/best_choice.hpp"
#include "laststop/errors.hpp"
#include "laststop/parallel.hpp"
#include "laststop/point_process.hpp"
#include "laststop/rng.hpp"

namespace laststop {

struct OutcomeCounts {
  std::uint64_t success = 0;     // selected the overall best
  std::uint64_t wrong_pick = 0;  // selected somebody else
  std::uint64_t no_pick = 0;     // never selected
};

struct SimulationReport {
  double estimate = 0.0;   // success frequency
  double std_error = 0.0;  // binomial, sqrt(p(1-p)/trials)
  std::uint64_t trials = 0;
  OutcomeCounts outcome_counts;
};

struct SimulationConfig {
  std::uint64_t trials = 100000;
  std::uint64_t master_seed = 1;
  int n = 1;
  unsigned workers = 1;
};

namespace detail {

struct OutcomeAccum {
  std::uint64_t success = 0;
  std::uint64_t wrong_pick = 0;
  std::uint64_t no_pick = 0;
  void merge(const OutcomeAccum& other) {
    success += other.success;
    wrong_pick += other.wrong_pick;
    no_pick += other.no_pick;
  }
};

inline SimulationReport finish_report(const OutcomeAccum& accum, std::uint64_t trials) {
  SimulationReport report;
  report.trials = trials;
  report.outcome_counts = {accum.success, accum.wrong_pick, accum.no_pick};
  if (trials > 0) {
    double p = static_cast<double>(accum.success) / static_cast<double>(trials);
    report.estimate = p;
    report.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
  return report;
}

}  // namespace detail

// Plays "wait until time x, then take the first arrival better than all seen"
// against freshly sampled arrival processes.  Each trial derives its own
// stream from (master_seed, trial index), so the outcome counts are a pure
// function of the config regardless of worker count.
inline SimulationReport evaluate_x_strategy(const SimulationConfig& config, double x) {
  if (config.n < 1) throw validation_error("candidate count must be at least 1");
  if (config.trials < 1) throw validation_error("trial count must be at least 1");
  if (!(x >= 0.0 && x <= 1.0)) throw validation_error("wait fraction must lie in [0, 1]");
  auto accum = run_chunked<detail::OutcomeAccum>(
      config.trials, config.workers, [&](std::uint64_t index, detail::OutcomeAccum& local) {
        thread_local std::vector<double> times;
        thread_local std::vector<int> ranks;
        Xoshiro256 rng(derive_stream_seed(config.master_seed, index));
        sample_arrivals_into(config.n, rng, times, ranks);
        int best_seen = config.n + 1;
        int picked_rank = 0;
        for (int i = 0; i < config.n; ++i) {
          int rank = ranks[static_cast<std::size_t>(i)];
          if (times[static_cast<std::size_t>(i)] >= x && rank < best_seen) {
            picked_rank = rank;
            break;
          }
          best_seen = std::min(best_seen, rank);
        }
        if (picked_rank == 0)
          ++local.no_pick;
        else if (picked_rank == 1)
          ++local.success;
        else
          ++local.wrong_pick;
      });
  return detail::finish_report(accum, config.trials);
}

// Plays the index rule: let the first cutoff-1 arrivals pass, then take the
// next arrival better than everything seen so far.  Only the rank order
// matters, so each trial samples a permutation and no arrival times.
inline SimulationReport evaluate_index_rule(const SimulationConfig& config, int cutoff) {
  if (config.n < 1) throw validation_error("candidate count must be at least 1");
  if (config.trials < 1) throw validation_error("trial count must be at least 1");
  if (cutoff < 1 || cutoff > config.n)
    throw validation_error("cutoff must lie in 1.." + std::to_string(config.n));
  auto accum = run_chunked<detail::OutcomeAccum>(
      config.trials, config.workers, [&](std::uint64_t index, detail::OutcomeAccum& local) {
        thread_local std::vector<int> ranks;
        Xoshiro256 rng(derive_stream_seed(config.master_seed, index));
        ranks.resize(static_cast<std::size_t>(config.n));
        for (int i = 0; i < config.n; ++i) ranks[static_cast<std::size_t>(i)] = i + 1;
        shuffle(ranks, rng);
        int best_seen = config.n + 1;
        int picked_rank = 0;
        for (int i = 0; i < config.n; ++i) {
          int rank = ranks[static_cast<std::size_t>(i)];
          if (i + 1 >= cutoff && rank < best_seen) {
            picked_rank = rank;
            break;
          }
          best_seen = std::min(best_seen, rank);
        }
        if (picked_rank == 0)
          ++local.no_pick;
        else if (picked_rank == 1)
          ++local.success;
        else
          ++local.wrong_pick;
      });
  return detail::finish_report(accum, config.trials);
}

struct DominanceRow {
  long n = 0;
  double x_n = 0.0;
  double p_at_xn = 0.0;      // closed form at the optimal wait fraction
  double p_at_inv_e = 0.0;   // closed form at 1/e
  SimulationReport mc_at_xn;
  SimulationReport mc_at_inv_e;
  bool dominance_ok = false;  // p_at_xn >= p_at_inv_e - 1e-12
};

// Closed-form success probabilities at the optimal wait fraction and at 1/e,
// with Monte Carlo confirmation of each, for a list of horizons.
inline std::vector<DominanceRow> dominance_report(const std::vector<long>& n_list,
                                                  std::uint64_t trials,
                                                  std::uint64_t master_seed,
                                                  unsigned workers = 1) {
  const double inv_e = std::exp(-1.0);
  std::vector<DominanceRow> rows;
  rows.reserve(n_list.size());
  std::uint64_t salt = 0;
  for (long n : n_list) {
    DominanceRow row;
    row.n = n;
    row.x_n = optimal_wait_threshold(n);
    row.p_at_xn = success_probability(n, row.x_n);
    row.p_at_inv_e = success_probability(n, inv_e);
    SimulationConfig config;
    config.trials = trials;
    config.n = static_cast<int>(n);
    config.workers = workers;
    config.master_seed = derive_stream_seed(master_seed, salt++);
    row.mc_at_xn = evaluate_x_strategy(config, row.x_n);
    config.master_seed = derive_stream_seed(master_seed, salt++);
    row.mc_at_inv_e = evaluate_x_strategy(config, inv_e);
    row.dominance_ok = row.p_at_xn >= row.p_at_inv_e - 1e-12;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace laststop
