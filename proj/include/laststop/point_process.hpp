#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "laststop/errors.hpp"
#include "laststop/parallel.hpp"
#include "laststop/rng.hpp"

namespace laststop {

// n candidates arriving at i.i.d. uniform times on [0, 1].  times are sorted
// in arrival order; ranks[i] is the absolute quality rank of the i-th arrival
// (1 = best) and forms a uniform permutation independent of the times.
struct ArrivalSample {
  std::vector<double> times;
  std::vector<int> ranks;
};

inline void sample_arrivals_into(int n, Xoshiro256& rng, std::vector<double>& times,
                                 std::vector<int>& ranks) {
  if (n < 1) throw validation_error("arrival count must be at least 1");
  times.resize(static_cast<std::size_t>(n));
  for (auto& t : times) t = rng.uniform01();
  std::sort(times.begin(), times.end());
  // Ties have probability zero; redraw so the sorted times are strictly
  // increasing as promised.
  while (std::adjacent_find(times.begin(), times.end()) != times.end()) {
    for (auto& t : times) t = rng.uniform01();
    std::sort(times.begin(), times.end());
  }
  ranks.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ranks[static_cast<std::size_t>(i)] = i + 1;
  shuffle(ranks, rng);
}

inline ArrivalSample sample_arrivals(int n, Xoshiro256& rng) {
  ArrivalSample sample;
  sample_arrivals_into(n, rng, sample.times, sample.ranks);
  return sample;
}

// 0-based indices of the arrivals that beat everything before them.
inline std::vector<int> record_indices(const ArrivalSample& sample) {
  std::vector<int> records;
  int best = static_cast<int>(sample.ranks.size()) + 1;
  for (std::size_t i = 0; i < sample.ranks.size(); ++i) {
    if (sample.ranks[i] < best) {
      best = sample.ranks[i];
      records.push_back(static_cast<int>(i));
    }
  }
  return records;
}

// Arrival times of the records, in order.
inline std::vector<double> extract_records(const ArrivalSample& sample) {
  std::vector<double> times;
  for (int i : record_indices(sample)) times.push_back(sample.times[static_cast<std::size_t>(i)]);
  return times;
}

// A counting process that jumps with hazard N_t / t: expected increments are
// proportional to the running count, and N_t / t is a martingale.  seed_time
// is where the count first reaches seed_count; jump_times are the later jumps
// up to the horizon 1.
struct PiProcessPath {
  double seed_time = 0.0;
  long seed_count = 1;
  std::vector<double> jump_times;
};

// From state (t, k) the next jump time S satisfies P(S > s) = (t/s)^k, so
// S = t * U^(-1/k) by inversion.  Jumps that land past 1 end the path.
inline PiProcessPath simulate_pi_process_from(double t, long k, Xoshiro256& rng) {
  if (!(t > 0.0 && t < 1.0)) throw validation_error("seed time must lie in (0, 1)");
  if (k < 1) throw validation_error("seed count must be at least 1");
  PiProcessPath path;
  path.seed_time = t;
  path.seed_count = k;
  double now = t;
  long count = k;
  for (;;) {
    double next = now * std::pow(rng.uniform_pos(), -1.0 / static_cast<double>(count));
    if (!(next <= 1.0)) break;
    path.jump_times.push_back(next);
    now = next;
    ++count;
  }
  return path;
}

inline PiProcessPath simulate_pi_process(double t1, Xoshiro256& rng) {
  return simulate_pi_process_from(t1, 1, rng);
}

struct RecordMask {
  std::vector<bool> retained;
};

// Independent thinning by the reciprocal of the post-jump count: a jump that
// lifts the count to c survives with probability 1/c.  The count-1 jump is a
// record by definition, never sampled.
inline RecordMask thin_by_counts(const std::vector<long>& post_jump_counts, Xoshiro256& rng) {
  RecordMask mask;
  mask.retained.reserve(post_jump_counts.size());
  for (long c : post_jump_counts) {
    if (c < 1) throw validation_error("post-jump count must be at least 1");
    if (c == 1)
      mask.retained.push_back(true);
    else
      mask.retained.push_back(rng.uniform01() < 1.0 / static_cast<double>(c));
  }
  return mask;
}

// Mask over the seed jump followed by each later jump of the path.
inline RecordMask thin_records(const PiProcessPath& path, Xoshiro256& rng) {
  std::vector<long> counts;
  counts.reserve(path.jump_times.size() + 1);
  for (long c = path.seed_count;
       c <= path.seed_count + static_cast<long>(path.jump_times.size()); ++c)
    counts.push_back(c);
  return thin_by_counts(counts, rng);
}

// Expected number of retained jumps in an interval that starts with count k
// and contains J jumps: sum_{j=1}^{J} 1/(k+j).  Depends on the counts alone,
// not on where in the interval the jumps land.
inline double expected_records_in_interval(long k, long J) {
  if (k < 0) throw validation_error("starting count must be nonnegative");
  if (J < 0) throw validation_error("jump count must be nonnegative");
  double sum = 0.0;
  for (long j = 1; j <= J; ++j) sum += 1.0 / static_cast<double>(k + j);
  return sum;
}

// Instantaneous record rate at time u given a current count of k: the jump
// rate k/u thinned by 1/(k+1), the retention probability of the jump that
// would lift the count to k+1.  Not 1/k; the newcomer competes against the k
// standing candidates plus itself.
inline double record_intensity(long k, double u) {
  if (k < 1) throw validation_error("record intensity needs a live count, k >= 1");
  if (!(u > 0.0 && u <= 1.0)) throw validation_error("time must lie in (0, 1]");
  return (static_cast<double>(k) / u) / static_cast<double>(k + 1);
}

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

namespace detail {

struct MeanAccum {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  void merge(const MeanAccum& other) {
    sum += other.sum;
    sum_sq += other.sum_sq;
    count += other.count;
  }
};

inline MeanEstimate finish_mean(const MeanAccum& accum) {
  MeanEstimate est;
  est.samples = accum.count;
  if (accum.count == 0) return est;
  double n = static_cast<double>(accum.count);
  est.mean = accum.sum / n;
  double variance = std::max(0.0, accum.sum_sq / n - est.mean * est.mean);
  est.std_error = std::sqrt(variance / n);
  return est;
}

}  // namespace detail

// Monte Carlo estimate of the expected number of records after time t given
// a count of k at t: simulate the counting process forward and thin each jump
// by its post-jump count.  Strictly below -log(t) for every finite k.
inline MeanEstimate expected_future_records(double t, long k, std::uint64_t paths,
                                            std::uint64_t master_seed,
                                            unsigned workers = 1) {
  if (!(t > 0.0 && t < 1.0)) throw validation_error("start time must lie in (0, 1)");
  if (k < 1) throw validation_error("count must be at least 1");
  if (paths < 1) throw validation_error("path count must be at least 1");
  auto accum = run_chunked<detail::MeanAccum>(
      paths, workers, [&](std::uint64_t index, detail::MeanAccum& local) {
        Xoshiro256 rng(derive_stream_seed(master_seed, index));
        double now = t;
        long count = k;
        long records = 0;
        for (;;) {
          double next = now * std::pow(rng.uniform_pos(), -1.0 / static_cast<double>(count));
          if (!(next <= 1.0)) break;
          ++count;  // the jump lifts the count first; retention uses the new value
          if (rng.uniform01() < 1.0 / static_cast<double>(count)) ++records;
          now = next;
        }
        local.add(static_cast<double>(records));
      });
  return detail::finish_mean(accum);
}

}  // namespace laststop
