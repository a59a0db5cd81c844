#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "laststop/bandit.hpp"
#include "laststop/best_choice.hpp"
#include "laststop/intensity.hpp"
#include "laststop/monte_carlo.hpp"
#include "laststop/odds.hpp"
#include "laststop/oracles.hpp"
#include "laststop/parallel.hpp"
#include "laststop/point_process.hpp"
#include "laststop/rng.hpp"

namespace laststop {

enum class PropertyStatus { pass, fail, inconclusive };

struct PropertyResult {
  std::string name;
  PropertyStatus status = PropertyStatus::pass;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t trials = 0;    // 0 keeps each property's own default
  double sigma = 0.0;          // 0 keeps each check's stated multiplier
  double tolerance = 1e-12;    // analytic comparisons
  std::uint64_t seed = 20260816;
  unsigned workers = 0;        // 0 means hardware concurrency
  std::string filter;          // run only properties whose name contains this
};

namespace verify_detail {

inline std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

// Shared bookkeeping for one property: checks accumulate, first failure or
// inconclusive verdict wins, details carry the measured numbers.
class Checker {
 public:
  explicit Checker(const VerifyOptions& options) : options_(options) {}

  void require(bool ok, const std::string& what) {
    if (!ok)
      fail_(what);
    else
      note_count_++;
  }

  void close(double measured, double target, double tol, const std::string& what) {
    if (std::fabs(measured - target) <= tol)
      note_count_++;
    else
      fail_(what + ": |" + fmt(measured) + " - " + fmt(target) + "| > " + fmt(tol));
  }

  // z-test of measured against target.  margin is the effect size the test
  // must be able to resolve; a sigma too wide for it makes the whole property
  // inconclusive instead of a sham pass.
  void statistical(double measured, double target, double std_error, double z,
                   double margin, const std::string& what) {
    double zz = options_.sigma > 0.0 ? options_.sigma : z;
    if (std_error * zz > margin && margin > 0.0) {
      mark_inconclusive(what + ": std error " + fmt(std_error) +
                        " cannot resolve margin " + fmt(margin));
      return;
    }
    if (std::fabs(measured - target) <= zz * std_error ||
        std::fabs(measured - target) <= 1e-15)
      note_count_++;
    else if (std_error <= 0.0)
      // A zero std error with a real discrepancy means the error estimate
      // itself collapsed (all samples equal); that is a power problem.
      mark_inconclusive(what + ": degenerate std error at " + fmt(measured));
    else
      fail_(what + ": " + fmt(measured) + " is " +
            fmt(std::fabs(measured - target) / std_error) + " std errors from " +
            fmt(target));
  }

  // One-sided: measured must sit below bound by at least z std errors.
  void strictly_below(double measured, double bound, double std_error, double z,
                      const std::string& what) {
    double zz = options_.sigma > 0.0 ? options_.sigma : z;
    if (measured < bound - zz * std_error)
      note_count_++;
    else if (std_error * zz > std::fabs(bound - measured))
      mark_inconclusive(what + ": std error " + fmt(std_error) + " too wide");
    else
      fail_(what + ": " + fmt(measured) + " not below " + fmt(bound) + " by " + fmt(zz) +
            " std errors");
  }

  void mark_inconclusive(const std::string& why) {
    if (status_ == PropertyStatus::pass) {
      status_ = PropertyStatus::inconclusive;
      detail_ = why;
    }
  }

  void append_detail(const std::string& text) {
    if (!detail_.empty()) detail_ += "; ";
    detail_ += text;
  }

  PropertyResult finish(const std::string& name) {
    PropertyResult result;
    result.name = name;
    result.status = status_;
    if (detail_.empty())
      result.detail = std::to_string(note_count_) + " checks";
    else
      result.detail = detail_;
    return result;
  }

  double tolerance() const { return options_.tolerance; }

 private:
  void fail_(const std::string& why) {
    if (status_ != PropertyStatus::fail) {
      status_ = PropertyStatus::fail;
      detail_ = why;
    }
  }

  const VerifyOptions& options_;
  PropertyStatus status_ = PropertyStatus::pass;
  std::string detail_;
  int note_count_ = 0;
};

inline std::uint64_t trials_or(const VerifyOptions& options, std::uint64_t fallback) {
  return options.trials > 0 ? options.trials : fallback;
}

inline unsigned workers_of(const VerifyOptions& options) {
  return options.workers > 0 ? options.workers : default_workers();
}

// Random problem with continuous probabilities; exact odds ties have
// probability zero.
inline OddsProblem random_odds_problem(Xoshiro256& rng, int max_n, double max_p = 0.95) {
  int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n)));
  std::vector<double> p(static_cast<std::size_t>(n));
  for (auto& v : p) v = max_p * rng.uniform01();
  return OddsProblem(std::move(p));
}

}  // namespace verify_detail

using PropertyFn = std::function<void(verify_detail::Checker&, const VerifyOptions&)>;

struct PropertyDef {
  std::string name;
  PropertyFn run;
};

namespace verify_detail {

// ---- odds engine ----------------------------------------------------------

inline void prop_threshold_equivalence(Checker& check, const VerifyOptions& options) {
  Xoshiro256 rng(derive_stream_seed(options.seed, 101));
  for (int round = 0; round < 500; ++round) {
    OddsProblem problem = random_odds_problem(rng, 12);
    ThresholdResult result = solve(problem);
    if (!result.tie_diagnostic)
      check.require(result.s == result.s_prime,
                    "sup and inf thresholds disagree without an exact tie");
    check.require(result.s_prime <= result.s, "inf form exceeded sup form");
    // Tail sums fall monotonically, so the stopping region is an interval.
    double prev = tail_odds(problem, 1);
    for (int k = 2; k <= problem.size() + 1; ++k) {
      double cur = tail_odds(problem, k);
      check.require(cur <= prev + check.tolerance(), "tail sums are not nonincreasing");
      prev = cur;
    }
  }
}

inline void prop_odds_optimality(Checker& check, const VerifyOptions& options) {
  Xoshiro256 rng(derive_stream_seed(options.seed, 102));
  for (int round = 0; round < 500; ++round) {
    OddsProblem problem = random_odds_problem(rng, 12);
    int s_prime = threshold_inf_form(problem);
    double at_threshold = win_probability(problem, s_prime);
    for (int k = 1; k <= problem.size(); ++k)
      check.require(at_threshold >= win_probability(problem, k) - check.tolerance(),
                    "another index beats the threshold rule");
    auto search = exhaustive_policy_search(problem, s_prime);
    check.close(search.cutoff_value, at_threshold, check.tolerance(),
                "recursion and policy-table value disagree");
    check.close(search.best_value, at_threshold, check.tolerance(),
                "a non-threshold stop set beats the threshold rule");
    check.close(win_probability_by_enumeration(problem, s_prime), at_threshold,
                check.tolerance(), "outcome enumeration disagrees with recursion");
  }
}

inline void prop_continuous_consistency(Checker& check, const VerifyOptions& options) {
  (void)options;
  auto flat = IntensityFunction::constant(2.0, 0.0, 1.0);
  auto inverse = IntensityFunction::reciprocal(0.01, 1.0);
  double t_flat = continuous_threshold(flat, 0.0);
  double t_inv = continuous_threshold(inverse, 0.01);
  check.close(t_flat, 0.5, 1e-9, "flat intensity threshold");
  check.close(t_inv, std::exp(-1.0), 1e-9, "reciprocal intensity threshold");
  check.close(continuous_threshold(IntensityFunction::constant(0.5, 0.0, 1.0), 0.0), 0.0,
              1e-12, "light intensity stops immediately");
  for (int m : {1000, 4000}) {
    double cell = 1.0 / static_cast<double>(m);
    check.require(std::fabs(discretized_threshold_time(flat, 0.0, m) - t_flat) <=
                      cell + 1e-12,
                  "flat discretised threshold off by more than one cell");
    double cell_inv = (1.0 - 0.01) / static_cast<double>(m);
    check.require(std::fabs(discretized_threshold_time(inverse, 0.01, m) - t_inv) <=
                      cell_inv + 1e-12,
                  "reciprocal discretised threshold off by more than one cell");
  }
}

inline void prop_squeeze_bounds(Checker& check, const VerifyOptions& options) {
  (void)options;
  std::vector<IntensityFunction> shapes = {
      IntensityFunction::constant(2.0, 0.0, 1.0),
      IntensityFunction::constant(0.5, 0.0, 1.0),
      IntensityFunction::reciprocal(0.01, 1.0),
      IntensityFunction::piecewise_linear({{0.0, 0.2}, {0.6, 1.4}, {1.0, 0.3}}),
  };
  for (const auto& shape : shapes) {
    double start = continuous_threshold(shape, shape.support_begin());
    if (start >= 1.0) continue;
    for (int m : {10, 100, 1000}) {
      double tail = shape.tail_integral(start);
      PartitionOddsSum sum = partition_odds_sum(shape, start, m);
      check.require(sum.odds_sum >= tail - check.tolerance(),
                    "odds sum fell below the tail integral");
      check.require(sum.odds_sum <=
                        tail / (1.0 - sum.max_cell_prob) + check.tolerance(),
                    "odds sum exceeded the squeezed upper bound");
    }
  }
}

// ---- best choice ----------------------------------------------------------

inline void prop_wait_threshold_table(Checker& check, const VerifyOptions& options) {
  (void)options;
  const double inv_e = std::exp(-1.0);
  check.require(optimal_wait_threshold(1) == 0.0, "x_1 must be exactly 0");
  check.require(optimal_wait_threshold(2) == 0.0, "x_2 must be exactly 0");
  check.close(optimal_wait_threshold(3), 2.0 - std::sqrt(3.0), 1e-9,
              "x_3 against its quadratic closed form");
  double prev = 0.0;
  for (long n = 2; n <= 200; ++n) {
    double x = optimal_wait_threshold(n);
    check.require(x >= prev - 1e-12, "wait fractions are not nondecreasing");
    check.require(x <= inv_e + 1e-12, "a wait fraction exceeded 1/e");
    prev = x;
  }
  check.require(inv_e - prev < 0.002, "x_200 is not within 0.002 of 1/e");
}

inline void prop_success_monotone_horizon(Checker& check, const VerifyOptions& options) {
  (void)options;
  const double inv_e = std::exp(-1.0);
  for (double x : {0.05, 0.1, inv_e, 0.5, 0.9}) {
    double prev_excess = 0.0;
    for (long n = 1; n <= 200; ++n) {
      double direct = success_probability(n, x);
      double excess = limit_excess(n, x);
      check.require(excess >= 0.0, "success probability dipped below its limit");
      check.close(direct, limiting_success(x) + excess, 1e-12,
                  "direct and tail-series routes disagree");
      if (n > 1)
        check.require(excess <= prev_excess + check.tolerance(),
                      "convergence to the limit is not monotone");
      if (n > 1)
        check.require(direct <= success_probability(n - 1, x) + 1e-12,
                      "success probability increased with the horizon");
      prev_excess = excess;
    }
  }
}

inline void prop_value_monotone(Checker& check, const VerifyOptions& options) {
  (void)options;
  const double inv_e = std::exp(-1.0);
  double prev = 1.0;
  for (long n = 1; n <= 200; ++n) {
    double x = optimal_wait_threshold(n);
    double value = success_probability(n, x);
    check.require(value <= prev + 1e-12, "optimal value increased with the horizon");
    check.require(value >= inv_e - 1e-12, "optimal value fell below 1/e");
    prev = value;
  }
  check.require(prev - inv_e < 0.002, "optimal value at n = 200 is not near 1/e");
  // The optimum never loses to the limiting wait fraction; strict where the
  // two fractions are resolvably different.
  for (long n = 1; n <= 20; ++n) {
    double x = optimal_wait_threshold(n);
    double at_xn = success_probability(n, x);
    double at_inv_e = success_probability(n, inv_e);
    check.require(at_xn >= at_inv_e - 1e-15, "optimal wait fraction lost to 1/e");
    if (inv_e - x > 1e-5)
      check.require(at_xn > at_inv_e, "dominance is not strict away from 1/e");
  }
}

inline void prop_one_over_e_lower_bound(Checker& check, const VerifyOptions& options) {
  (void)options;
  double prev = 1.0;
  double min_margin = 1.0;
  for (long n = 1; n <= 10000; ++n) {
    double margin = one_over_e_margin(n);
    check.require(margin >= 0.0, "success at 1/e fell below 1/e");
    check.require(margin <= prev + check.tolerance(), "margin is not nonincreasing");
    min_margin = std::min(min_margin, margin);
    prev = margin;
  }
  for (long n : {1L, 2L, 5L, 10L, 20L, 30L}) {
    double direct = success_probability(n, std::exp(-1.0)) - std::exp(-1.0);
    check.close(direct, one_over_e_margin(n), 1e-12, "margin routes disagree");
  }
  check.append_detail("min margin over n <= 10^4: " + fmt(min_margin));
}

// ---- monte carlo ----------------------------------------------------------

inline void prop_closed_form_grid(Checker& check, const VerifyOptions& options) {
  const double inv_e = std::exp(-1.0);
  std::uint64_t trials = trials_or(options, 200000);
  unsigned workers = workers_of(options);
  std::uint64_t salt = 0;
  for (int n : {1, 2, 3, 5, 10, 50, 100}) {
    for (double x : {0.0, 0.1, inv_e, 0.5, 0.9}) {
      SimulationConfig config;
      config.trials = trials;
      config.n = n;
      config.workers = workers;
      config.master_seed = derive_stream_seed(options.seed, 7000 + salt++);
      SimulationReport report = evaluate_x_strategy(config, x);
      double cf = success_probability(n, x);
      // Null std error at the closed form; the empirical one collapses when
      // an extreme cell sees no successes at low trial counts.
      double sigma = std::sqrt(cf * (1.0 - cf) / static_cast<double>(trials));
      check.statistical(report.estimate, cf, sigma, 4.0, 0.01,
                        "x-strategy grid at n=" + std::to_string(n));
      check.require(report.outcome_counts.success + report.outcome_counts.wrong_pick +
                            report.outcome_counts.no_pick ==
                        report.trials,
                    "outcome counts do not partition the trials");
    }
  }
}

inline void prop_one_over_e_mc(Checker& check, const VerifyOptions& options) {
  const double inv_e = std::exp(-1.0);
  std::uint64_t trials = trials_or(options, 1000000);
  unsigned workers = workers_of(options);
  int salt = 0;
  for (int n : {2, 10, 100}) {
    SimulationConfig config;
    config.trials = trials;
    config.n = n;
    config.workers = workers;
    config.master_seed = derive_stream_seed(options.seed, 7100 + salt++);
    SimulationReport report = evaluate_x_strategy(config, inv_e);
    double cf = success_probability(n, inv_e);
    double sigma = std::sqrt(cf * (1.0 - cf) / static_cast<double>(trials));
    check.statistical(report.estimate, cf, sigma, 3.0, 0.01,
                      "success at 1/e for n=" + std::to_string(n));
    check.require(report.estimate > inv_e - 4.0 * sigma,
                  "estimate fell below the 1/e floor");
  }
}

inline void prop_no_pick_fraction(Checker& check, const VerifyOptions& options) {
  const double inv_e = std::exp(-1.0);
  std::uint64_t trials = trials_or(options, 1000000);
  unsigned workers = workers_of(options);
  int salt = 0;
  for (int n : {1, 5, 50}) {
    SimulationConfig config;
    config.trials = trials;
    config.n = n;
    config.workers = workers;
    config.master_seed = derive_stream_seed(options.seed, 7200 + salt++);
    SimulationReport report = evaluate_x_strategy(config, inv_e);
    double no_pick = static_cast<double>(report.outcome_counts.no_pick) /
                     static_cast<double>(report.trials);
    double sigma = std::sqrt(inv_e * (1.0 - inv_e) / static_cast<double>(report.trials));
    check.statistical(no_pick, inv_e, sigma, 3.0, 0.01,
                      "walk-away fraction for n=" + std::to_string(n));
    // Selecting a non-best candidate happens less often than 1 - 2/e.
    double wrong = static_cast<double>(report.outcome_counts.wrong_pick) /
                   static_cast<double>(report.trials);
    check.require(wrong < 1.0 - 2.0 * inv_e + 4.0 * sigma,
                  "non-best selections exceed the 1 - 2/e ceiling");
  }
}

inline void prop_reproducibility(Checker& check, const VerifyOptions& options) {
  SimulationConfig config;
  config.trials = trials_or(options, 50000);
  config.n = 12;
  config.master_seed = derive_stream_seed(options.seed, 7300);
  config.workers = 1;
  SimulationReport solo = evaluate_x_strategy(config, 0.3);
  config.workers = 4;
  SimulationReport quad = evaluate_x_strategy(config, 0.3);
  config.workers = 3;
  SimulationReport tri = evaluate_x_strategy(config, 0.3);
  check.require(solo.outcome_counts.success == quad.outcome_counts.success &&
                    solo.outcome_counts.wrong_pick == quad.outcome_counts.wrong_pick &&
                    solo.outcome_counts.no_pick == quad.outcome_counts.no_pick,
                "outcome counts changed between 1 and 4 workers");
  check.require(solo.outcome_counts.success == tri.outcome_counts.success &&
                    solo.outcome_counts.no_pick == tri.outcome_counts.no_pick,
                "outcome counts changed between 1 and 3 workers");
  SimulationReport again = evaluate_x_strategy(config, 0.3);
  check.require(again.outcome_counts.success == quad.outcome_counts.success,
                "repeated run with one config diverged");
}

// ---- point processes ------------------------------------------------------

inline void prop_renyi_records(Checker& check, const VerifyOptions& options) {
  for (int k = 1; k <= 8; ++k)
    check.close(record_probability_by_enumeration(8, k), 1.0 / k, 1e-12,
                "enumerated record frequency at position " + std::to_string(k));
  std::uint64_t trials = trials_or(options, 1000000);
  const int n = 10;
  struct Tally {
    std::array<std::uint64_t, 11> hits{};
    void merge(const Tally& other) {
      for (std::size_t i = 0; i < hits.size(); ++i) hits[i] += other.hits[i];
    }
  };
  std::uint64_t seed = derive_stream_seed(options.seed, 7400);
  auto tally = run_chunked<Tally>(trials, workers_of(options),
                                  [&](std::uint64_t index, Tally& local) {
                                    Xoshiro256 rng(derive_stream_seed(seed, index));
                                    ArrivalSample sample = sample_arrivals(n, rng);
                                    for (int i : record_indices(sample))
                                      local.hits[static_cast<std::size_t>(i + 1)]++;
                                  });
  for (int k = 1; k <= n; ++k) {
    double freq = static_cast<double>(tally.hits[static_cast<std::size_t>(k)]) /
                  static_cast<double>(trials);
    double p = 1.0 / k;
    double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    check.statistical(freq, p, sigma, 4.0, 0.01,
                      "record frequency at position " + std::to_string(k));
  }
}

inline void prop_martingale(Checker& check, const VerifyOptions& options) {
  std::uint64_t paths = trials_or(options, 100000);
  struct Point {
    double t, s;
    long k;
  };
  int salt = 0;
  for (Point point : {Point{0.3, 1.0, 1}, Point{0.5, 1.0, 3}, Point{0.25, 0.5, 2}}) {
    std::uint64_t seed = derive_stream_seed(options.seed, 7500 + salt++);
    auto accum = run_chunked<laststop::detail::MeanAccum>(
        paths, workers_of(options), [&](std::uint64_t index, laststop::detail::MeanAccum& local) {
          Xoshiro256 rng(derive_stream_seed(seed, index));
          double now = point.t;
          long count = point.k;
          for (;;) {
            double next =
                now * std::pow(rng.uniform_pos(), -1.0 / static_cast<double>(count));
            if (!(next <= point.s)) break;
            now = next;
            ++count;
          }
          local.add(static_cast<double>(count) / point.s);
        });
    MeanEstimate est = laststop::detail::finish_mean(accum);
    double target = static_cast<double>(point.k) / point.t;
    check.statistical(est.mean, target, est.std_error, 3.0, 0.05 * target,
                      "scaled count mean from t=" + fmt(point.t));
  }
  // Survival of the first stage: no jump at all by the horizon has
  // probability exactly the seed time.
  std::uint64_t seed = derive_stream_seed(options.seed, 7510);
  std::uint64_t quiet = 0;
  std::uint64_t sample = std::min<std::uint64_t>(paths, 200000);
  Xoshiro256 rng(seed);
  for (std::uint64_t i = 0; i < sample; ++i) {
    PiProcessPath path = simulate_pi_process(0.4, rng);
    if (path.jump_times.empty()) ++quiet;
  }
  double freq = static_cast<double>(quiet) / static_cast<double>(sample);
  double sigma = std::sqrt(0.4 * 0.6 / static_cast<double>(sample));
  check.statistical(freq, 0.4, sigma, 3.0, 0.02, "no-jump probability from t=0.4");
}

inline void prop_record_retention(Checker& check, const VerifyOptions& options) {
  const double t1 = 0.05;
  std::uint64_t paths = trials_or(options, 1500000);
  constexpr int kMax = 5;
  struct Tally {
    std::array<std::uint64_t, kMax + 1> seen{};
    std::array<std::uint64_t, kMax + 1> kept{};
    void merge(const Tally& other) {
      for (int i = 0; i <= kMax; ++i) {
        seen[static_cast<std::size_t>(i)] += other.seen[static_cast<std::size_t>(i)];
        kept[static_cast<std::size_t>(i)] += other.kept[static_cast<std::size_t>(i)];
      }
    }
  };
  std::uint64_t seed = derive_stream_seed(options.seed, 7600);
  auto tally = run_chunked<Tally>(
      paths, workers_of(options), [&](std::uint64_t index, Tally& local) {
        Xoshiro256 rng(derive_stream_seed(seed, index));
        PiProcessPath path = simulate_pi_process(t1, rng);
        RecordMask mask = thin_records(path, rng);
        // Mask entry j is the jump whose pre-jump count is j.
        long jumps = static_cast<long>(path.jump_times.size());
        for (long j = 1; j <= jumps && j <= kMax; ++j) {
          local.seen[static_cast<std::size_t>(j)]++;
          if (mask.retained[static_cast<std::size_t>(j)])
            local.kept[static_cast<std::size_t>(j)]++;
        }
      });
  for (int k = 1; k <= kMax; ++k) {
    auto seen = tally.seen[static_cast<std::size_t>(k)];
    auto kept = tally.kept[static_cast<std::size_t>(k)];
    if (seen < 1000) {
      check.mark_inconclusive("too few jumps with pre-jump count " + std::to_string(k));
      continue;
    }
    double freq = static_cast<double>(kept) / static_cast<double>(seen);
    double corrected = 1.0 / (k + 1.0);
    double naive = 1.0 / static_cast<double>(k);
    double sigma = std::sqrt(corrected * (1.0 - corrected) / static_cast<double>(seen));
    check.statistical(freq, corrected, sigma, 4.0, naive - corrected,
                      "retention at pre-jump count " + std::to_string(k));
    check.require(std::fabs(freq - naive) > 4.0 * sigma,
                  "retention is consistent with 1/k, which the corrected rate excludes");
  }
}

inline void prop_interval_expectation(Checker& check, const VerifyOptions& options) {
  (void)options;
  for (int k = 0; k <= 7; ++k)
    for (int J = 0; k + J <= 8; ++J)
      check.close(expected_records_in_interval(k, J), expected_records_by_enumeration(k, J),
                  1e-12,
                  "interval expectation at k=" + std::to_string(k) +
                      ", J=" + std::to_string(J));
  check.require(expected_records_in_interval(5, 0) == 0.0, "empty interval must give 0");
}

inline void prop_record_intensity_integral(Checker& check, const VerifyOptions& options) {
  check.close(record_intensity(1, 0.5), 1.0, 1e-12, "unit count at t=0.5");
  check.close(record_intensity(1000000, 0.25), 4.0, 1e-4, "large-count limit 1/u");
  bool rejected = false;
  try {
    record_intensity(0, 0.5);
  } catch (const validation_error&) {
    rejected = true;
  }
  check.require(rejected, "count 0 must be rejected");

  // Expected retained jumps over a short window against the integral of the
  // intensity; the window is small enough that multi-jump paths contribute
  // beneath the statistical resolution.
  const double t = 0.5;
  const double dt = 0.01;
  const long k = 1;
  std::uint64_t paths = trials_or(options, 1000000);
  std::uint64_t seed = derive_stream_seed(options.seed, 7700);
  auto accum = run_chunked<laststop::detail::MeanAccum>(
      paths, workers_of(options), [&](std::uint64_t index, laststop::detail::MeanAccum& local) {
        Xoshiro256 rng(derive_stream_seed(seed, index));
        double now = t;
        long count = k;
        long records = 0;
        for (;;) {
          double next = now * std::pow(rng.uniform_pos(), -1.0 / static_cast<double>(count));
          if (!(next <= t + dt)) break;
          ++count;
          if (rng.uniform01() < 1.0 / static_cast<double>(count)) ++records;
          now = next;
        }
        local.add(static_cast<double>(records));
      });
  MeanEstimate est = laststop::detail::finish_mean(accum);
  double integral = (static_cast<double>(k) / (k + 1.0)) * std::log((t + dt) / t);
  check.statistical(est.mean, integral, est.std_error, 3.0, 0.5 * integral,
                    "windowed record count vs intensity integral");
}

// Exact mean of the retained record count from (t, k).  The number of later
// arrivals is negative binomial with k successes at rate t; arrival j is
// retained with probability 1/(k+j) independently, so the mean is the
// survival-weighted harmonic tail.
inline double future_records_closed_form(double t, long k) {
  double pmf = std::pow(t, static_cast<double>(k));
  double survival = 1.0 - pmf;
  double q = 1.0 - t;
  double total = 0.0;
  for (long j = 1; j < 100000 && survival > 1e-15; ++j) {
    total += survival / static_cast<double>(k + j);
    pmf *= q * static_cast<double>(k + j - 1) / static_cast<double>(j);
    survival -= pmf;
  }
  return total;
}

inline void prop_future_records(Checker& check, const VerifyOptions& options) {
  const double inv_e = std::exp(-1.0);
  unsigned workers = workers_of(options);
  std::uint64_t base = trials_or(options, 1000000);
  // With one standing candidate the series collapses to a geometric tail.
  check.close(future_records_closed_form(inv_e, 1), inv_e / (1.0 - inv_e), 1e-12,
              "series route against the k=1 geometric form");
  double target_1 = future_records_closed_form(inv_e, 1);
  double target_10 = future_records_closed_form(inv_e, 10);
  double target_100 = future_records_closed_form(inv_e, 100);
  // The means rise with the standing count but never reach the log(1/t)=1
  // limit of the infinite-count intensity.
  check.require(target_1 < target_10 && target_10 < target_100 && target_100 < 1.0,
                "closed-form means are not ordered below the limit");
  double margin = 0.5 * std::min(target_10 - target_1, target_100 - target_10);

  MeanEstimate at_1 = expected_future_records(inv_e, 1, base,
                                              derive_stream_seed(options.seed, 7800), workers);
  check.strictly_below(at_1.mean, 1.0, at_1.std_error, 3.0,
                       "future records from (1/e, 1) against the infinite-count limit");
  check.statistical(at_1.mean, target_1, at_1.std_error, 4.0, margin,
                    "simulated mean at k=1");
  MeanEstimate at_10 = expected_future_records(
      inv_e, 10, std::max<std::uint64_t>(base / 2, 100),
      derive_stream_seed(options.seed, 7801), workers);
  check.statistical(at_10.mean, target_10, at_10.std_error, 4.0, margin,
                    "simulated mean at k=10");
  MeanEstimate at_100 = expected_future_records(
      inv_e, 100, std::max<std::uint64_t>(base / 4, 100),
      derive_stream_seed(options.seed, 7802), workers);
  check.statistical(at_100.mean, target_100, at_100.std_error, 4.0, margin,
                    "simulated mean at k=100");
  MeanEstimate horizon =
      expected_future_records(0.999, 1, std::min<std::uint64_t>(base, 100000),
                              derive_stream_seed(options.seed, 7803), workers);
  check.statistical(horizon.mean, future_records_closed_form(0.999, 1),
                    horizon.std_error, 4.0, 0.01, "vanishing horizon");
}

inline void prop_two_route_agreement(Checker& check, const VerifyOptions& options) {
  const int n = 8;
  std::uint64_t trials = trials_or(options, 100000);
  struct Hist {
    std::array<std::uint64_t, n + 1> via_ranks{};
    std::array<std::uint64_t, n + 1> via_thinning{};
    void merge(const Hist& other) {
      for (std::size_t i = 0; i <= n; ++i) {
        via_ranks[i] += other.via_ranks[i];
        via_thinning[i] += other.via_thinning[i];
      }
    }
  };
  std::uint64_t seed = derive_stream_seed(options.seed, 7900);
  auto hist = run_chunked<Hist>(
      trials, workers_of(options), [&](std::uint64_t index, Hist& local) {
        Xoshiro256 rng(derive_stream_seed(seed, index));
        ArrivalSample sample = sample_arrivals(n, rng);
        std::size_t count_a = record_indices(sample).size();
        local.via_ranks[std::min<std::size_t>(count_a, n)]++;
        std::vector<long> counts(n);
        for (int i = 0; i < n; ++i) counts[static_cast<std::size_t>(i)] = i + 1;
        RecordMask mask = thin_by_counts(counts, rng);
        std::size_t count_b = 0;
        for (bool kept : mask.retained) count_b += kept ? 1u : 0u;
        local.via_thinning[std::min<std::size_t>(count_b, n)]++;
      });
  double tv = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    double a = static_cast<double>(hist.via_ranks[i]) / static_cast<double>(trials);
    double b = static_cast<double>(hist.via_thinning[i]) / static_cast<double>(trials);
    tv += std::fabs(a - b);
  }
  tv *= 0.5;
  if (trials < 10000)
    check.mark_inconclusive("too few trials to bound the distance between routes");
  else
    check.require(tv < 0.01, "record-count histograms drifted apart, TV = " + fmt(tv));
  check.append_detail("total variation " + fmt(tv));
}

inline void prop_location_independence(Checker& check, const VerifyOptions& options) {
  (void)options;
  // J later arrivals squeezed against either end of their window; the
  // expected record count among them depends only on how many candidates
  // came before, never on the positions.
  for (int prior : {1, 2, 4}) {
    for (int J : {1, 2, 3}) {
      if (prior + J > 8) continue;
      const int total = prior + J;
      std::vector<int> ranks(static_cast<std::size_t>(total));
      std::iota(ranks.begin(), ranks.end(), 1);
      double left_total = 0.0;
      double right_total = 0.0;
      std::uint64_t orders = 0;
      do {
        ++orders;
        ArrivalSample left;
        ArrivalSample right;
        for (int i = 0; i < total; ++i) {
          double base = static_cast<double>(i + 1) / (total + 1.0);
          double squeezed_left =
              i < prior ? base : 0.5 + 0.001 * static_cast<double>(i - prior + 1);
          double squeezed_right =
              i < prior ? base : 0.999 + 0.0001 * static_cast<double>(i - prior + 1);
          left.times.push_back(squeezed_left / 2.0);
          right.times.push_back(squeezed_right / 2.0);
          left.ranks.push_back(ranks[static_cast<std::size_t>(i)]);
          right.ranks.push_back(ranks[static_cast<std::size_t>(i)]);
        }
        for (int idx : record_indices(left))
          if (idx >= prior) left_total += 1.0;
        for (int idx : record_indices(right))
          if (idx >= prior) right_total += 1.0;
      } while (std::next_permutation(ranks.begin(), ranks.end()));
      double expected = expected_records_in_interval(prior, J);
      check.close(left_total / static_cast<double>(orders), expected, 1e-12,
                  "left-packed window at prior=" + std::to_string(prior));
      check.close(right_total / static_cast<double>(orders), expected, 1e-12,
                  "right-packed window at prior=" + std::to_string(prior));
    }
  }
}

inline void prop_uniformity(Checker& check, const VerifyOptions& options) {
  const int n = 10000;
  Xoshiro256 rng(derive_stream_seed(options.seed, 8000));
  ArrivalSample sample = sample_arrivals(n, rng);
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = sample.times[static_cast<std::size_t>(i)];
    d = std::max(d, static_cast<double>(i + 1) / n - u);
    d = std::max(d, u - static_cast<double>(i) / n);
  }
  double critical = 1.62762 / std::sqrt(static_cast<double>(n));  // 99% band
  check.require(d < critical, "arrival times failed the uniformity band, D = " + fmt(d));
  check.require(std::is_sorted(sample.times.begin(), sample.times.end()),
                "arrival times are not sorted");
  Xoshiro256 replay(derive_stream_seed(options.seed, 8000));
  ArrivalSample again = sample_arrivals(n, replay);
  check.require(again.times == sample.times && again.ranks == sample.ranks,
                "resampling with the same seed diverged");
}

// ---- bandit ---------------------------------------------------------------

inline void prop_betting_upper_bound(Checker& check, const VerifyOptions& options) {
  Xoshiro256 rng(derive_stream_seed(options.seed, 8100));
  for (int round = 0; round < 50; ++round) {
    int n = 1 + static_cast<int>(rng.below(10));
    std::vector<double> p1(static_cast<std::size_t>(n));
    std::vector<double> p2(static_cast<std::size_t>(n));
    for (auto& v : p1) v = rng.uniform01();
    for (auto& v : p2) v = rng.uniform01();
    TwoLineInstance instance(p1, p2);
    double m = accumulated_max(instance, n);
    check.close(best_policy_value_by_enumeration(instance, n), m, 1e-12,
                "the best policy must meet the per-step maximum sum");
    double greedy = 0.0;
    for (int j = 1; j <= n; ++j)
      greedy += greedy_choice(instance, j) == 2 ? instance.line2(j) : instance.line1(j);
    check.close(greedy, m, 1e-12, "greedy must attain the bound");
  }
}

inline void prop_red_light_bound(Checker& check, const VerifyOptions& options) {
  std::uint64_t trials = trials_or(options, 100000);
  unsigned workers = workers_of(options);
  TwoLineInstance even(std::vector<double>(10, 0.2), std::vector<double>(10, 0.8));
  TwoLineInstance same(std::vector<double>(6, 0.4), std::vector<double>(6, 0.4));
  Xoshiro256 rng(derive_stream_seed(options.seed, 8200));
  std::vector<double> mixed1(8);
  std::vector<double> mixed2(8);
  for (auto& v : mixed1) v = rng.uniform01();
  for (auto& v : mixed2) v = rng.uniform01();
  TwoLineInstance mixed(mixed1, mixed2);

  int salt = 0;
  for (const TwoLineInstance* instance : {&even, &same, &mixed}) {
    double l = l_divergence(*instance, instance->size());
    for (double delta : {0.0, 0.05, 0.1, 0.5}) {
      GapEstimate gap = simulate_red_light(*instance, delta, trials,
                                           derive_stream_seed(options.seed, 8300 + salt++),
                                           RewardModel::expected, workers);
      check.require(gap.gap <= delta * l + 3.0 * gap.std_error + 1e-15,
                    "gap exceeded delta times the divergence");
      if (delta == 0.0)
        check.require(gap.gap == 0.0, "gap must vanish exactly without blocking");
    }
  }
  GapEstimate same_gap = simulate_red_light(same, 0.3, trials,
                                            derive_stream_seed(options.seed, 8400),
                                            RewardModel::expected, workers);
  check.require(same_gap.gap == 0.0, "equal lines must never lose to blocking");
  GapEstimate equality = simulate_red_light(even, 0.1, trials,
                                            derive_stream_seed(options.seed, 8401),
                                            RewardModel::expected, workers);
  check.statistical(equality.gap, 0.6, equality.std_error, 3.0, 0.05,
                    "equality-case gap against delta times divergence");
  // The reward bookkeeping modes estimate the same expectation.
  GapEstimate sampled = simulate_red_light(even, 0.1, trials,
                                           derive_stream_seed(options.seed, 8402),
                                           RewardModel::sampled_independent, workers);
  GapEstimate paired = simulate_red_light(even, 0.1, trials,
                                          derive_stream_seed(options.seed, 8403),
                                          RewardModel::sampled_comonotone, workers);
  check.statistical(sampled.gap, 0.6, sampled.std_error, 4.0, 0.1, "independent rewards");
  check.statistical(paired.gap, 0.6, paired.std_error, 4.0, 0.1, "comonotone rewards");
}

inline void prop_red_light_monotone(Checker& check, const VerifyOptions& options) {
  std::uint64_t trials = trials_or(options, 100000);
  Xoshiro256 rng(derive_stream_seed(options.seed, 8500));
  std::vector<double> p1(9);
  std::vector<double> p2(9);
  for (auto& v : p1) v = rng.uniform01();
  for (auto& v : p2) v = rng.uniform01();
  TwoLineInstance instance(p1, p2);
  std::vector<double> deltas = {0.0, 0.05, 0.1, 0.5, 1.0};
  auto gaps = simulate_red_light_grid(instance, deltas, trials,
                                      derive_stream_seed(options.seed, 8501),
                                      workers_of(options));
  for (std::size_t g = 1; g < gaps.size(); ++g)
    check.require(gaps[g].gap >= gaps[g - 1].gap,
                  "gap decreased along the blocking grid despite shared draws");
  check.require(gaps.front().gap == 0.0, "unblocked grid point must be exactly 0");
  double l = l_divergence(instance, instance.size());
  check.require(gaps.back().gap <= l + 3.0 * gaps.back().std_error,
                "fully blocked gap exceeded the total divergence");
}

}  // namespace verify_detail

inline const std::vector<PropertyDef>& verification_properties() {
  static const std::vector<PropertyDef> defs = {
      {"threshold-equivalence", verify_detail::prop_threshold_equivalence},
      {"odds-optimality", verify_detail::prop_odds_optimality},
      {"continuous-consistency", verify_detail::prop_continuous_consistency},
      {"squeeze-bounds", verify_detail::prop_squeeze_bounds},
      {"wait-threshold-table", verify_detail::prop_wait_threshold_table},
      {"success-monotone-horizon", verify_detail::prop_success_monotone_horizon},
      {"value-monotone", verify_detail::prop_value_monotone},
      {"one-over-e-lower-bound", verify_detail::prop_one_over_e_lower_bound},
      {"closed-form-grid", verify_detail::prop_closed_form_grid},
      {"one-over-e-mc", verify_detail::prop_one_over_e_mc},
      {"no-pick-fraction", verify_detail::prop_no_pick_fraction},
      {"reproducibility", verify_detail::prop_reproducibility},
      {"renyi-records", verify_detail::prop_renyi_records},
      {"martingale", verify_detail::prop_martingale},
      {"record-retention", verify_detail::prop_record_retention},
      {"interval-expectation", verify_detail::prop_interval_expectation},
      {"record-intensity-integral", verify_detail::prop_record_intensity_integral},
      {"future-records", verify_detail::prop_future_records},
      {"two-route-agreement", verify_detail::prop_two_route_agreement},
      {"location-independence", verify_detail::prop_location_independence},
      {"uniformity", verify_detail::prop_uniformity},
      {"betting-upper-bound", verify_detail::prop_betting_upper_bound},
      {"red-light-bound", verify_detail::prop_red_light_bound},
      {"red-light-monotone", verify_detail::prop_red_light_monotone},
  };
  return defs;
}

inline std::vector<PropertyResult> run_verification(const VerifyOptions& options) {
  std::vector<PropertyResult> results;
  for (const auto& def : verification_properties()) {
    if (!options.filter.empty() && def.name.find(options.filter) == std::string::npos)
      continue;
    verify_detail::Checker checker(options);
    try {
      def.run(checker, options);
    } catch (const std::exception& e) {
      checker.require(false, std::string("threw: ") + e.what());
    }
    results.push_back(checker.finish(def.name));
  }
  return results;
}

}  // namespace laststop
