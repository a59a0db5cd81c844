#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "laststop/bandit.hpp"
#include "laststop/errors.hpp"
#include "laststop/odds.hpp"

namespace laststop {

// Brute-force counterparts of the fast routines, built on exhaustive
// enumeration so the two routes share no code path.  Exponential in n; meant
// for verification at small sizes.

// Win probability of "stop at the first success at index >= from_index",
// summed over all 2^n outcome vectors.
inline double win_probability_by_enumeration(const OddsProblem& problem, int from_index) {
  problem.check_index(from_index);
  const int n = problem.size();
  if (n > 24) throw validation_error("outcome enumeration is limited to n <= 24");
  double total = 0.0;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    double prob = 1.0;
    int tail_successes = 0;
    for (int k = 1; k <= n; ++k) {
      bool hit = (bits >> (k - 1)) & 1u;
      prob *= hit ? problem.probability(k) : 1.0 - problem.probability(k);
      if (hit && k >= from_index) ++tail_successes;
    }
    // The rule stops on the first success it is allowed to take; it wins
    // exactly when that success has nothing after it, i.e. the tail holds
    // one success in total.
    if (tail_successes == 1) total += prob;
  }
  return total;
}

struct PolicySearchResult {
  double best_value = 0.0;        // max win probability over all stop sets
  std::uint32_t best_mask = 0;    // bit k-1 set: the policy stops on a success at k
  double cutoff_value = 0.0;      // value of the contiguous set cutoff..n
};

// Every stopping policy that may look at the whole history reduces, by
// independence, to a set of indices on which a success is accepted.  Searches
// all 2^n sets and evaluates each by backward recursion.
inline PolicySearchResult exhaustive_policy_search(const OddsProblem& problem, int cutoff) {
  problem.check_index(cutoff);
  const int n = problem.size();
  if (n > 24) throw validation_error("policy enumeration is limited to n <= 24");
  auto policy_value = [&](std::uint32_t mask) {
    double win = 0.0;
    double none_after = 1.0;
    for (int k = n; k >= 1; --k) {
      double p = problem.probability(k);
      bool stops_here = (mask >> (k - 1)) & 1u;
      win = stops_here ? p * none_after + (1.0 - p) * win : win;
      none_after *= 1.0 - p;
    }
    return win;
  };

  PolicySearchResult result;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double value = policy_value(mask);
    if (value > result.best_value) {
      result.best_value = value;
      result.best_mask = mask;
    }
  }
  std::uint32_t cutoff_mask = 0;
  for (int k = cutoff; k <= n; ++k) cutoff_mask |= 1u << (k - 1);
  result.cutoff_value = policy_value(cutoff_mask);
  return result;
}

// P(the k-th of n arrivals beats everything before it), averaged over all n!
// rank orders.  Exact rational count divided by n!.
inline double record_probability_by_enumeration(int n, int k) {
  if (n < 1 || n > 9) throw validation_error("permutation enumeration is limited to n <= 9");
  if (k < 1 || k > n) throw validation_error("position out of range");
  std::vector<int> ranks(static_cast<std::size_t>(n));
  std::iota(ranks.begin(), ranks.end(), 1);
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  do {
    ++total;
    int best_before = n + 1;
    for (int i = 0; i + 1 < k; ++i)
      best_before = std::min(best_before, ranks[static_cast<std::size_t>(i)]);
    if (ranks[static_cast<std::size_t>(k - 1)] < best_before) ++hits;
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

// Success probability of the rule "pass the first cutoff-1 arrivals, then
// take the next record", averaged over all n! arrival orders.
inline double index_rule_value_by_enumeration(int n, int cutoff) {
  if (n < 1 || n > 9) throw validation_error("permutation enumeration is limited to n <= 9");
  if (cutoff < 1 || cutoff > n + 1) throw validation_error("cutoff out of range");
  std::vector<int> ranks(static_cast<std::size_t>(n));
  std::iota(ranks.begin(), ranks.end(), 1);
  std::uint64_t wins = 0;
  std::uint64_t total = 0;
  do {
    ++total;
    int best_seen = n + 1;
    for (int i = 0; i < n; ++i) {
      int rank = ranks[static_cast<std::size_t>(i)];
      if (i + 1 >= cutoff && rank < best_seen) {
        if (rank == 1) ++wins;
        break;
      }
      best_seen = std::min(best_seen, rank);
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return static_cast<double>(wins) / static_cast<double>(total);
}

// Expected number of records among the last J of prior + J items, averaged
// over all rank orders of the full set.  The first `prior` items only matter
// through the running minimum they leave behind.
inline double expected_records_by_enumeration(int prior, int J) {
  if (prior < 0 || J < 0 || prior + J > 9)
    throw validation_error("permutation enumeration is limited to prior + J <= 9");
  if (J == 0) return 0.0;
  const int total_items = prior + J;
  std::vector<int> ranks(static_cast<std::size_t>(total_items));
  std::iota(ranks.begin(), ranks.end(), 1);
  std::uint64_t records = 0;
  std::uint64_t orders = 0;
  do {
    ++orders;
    int best = total_items + 1;
    for (int i = 0; i < total_items; ++i) {
      if (ranks[static_cast<std::size_t>(i)] < best) {
        best = ranks[static_cast<std::size_t>(i)];
        if (i >= prior) ++records;
      }
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return static_cast<double>(records) / static_cast<double>(orders);
}

// Best expected reward over all 2^n fixed line-choice sequences.  History
// cannot help a bettor facing independent steps, so this is the true optimum
// over every policy.
inline double best_policy_value_by_enumeration(const TwoLineInstance& instance, int n) {
  if (n < 1 || n > instance.size() || n > 24)
    throw validation_error("policy enumeration needs 1 <= n <= min(size, 24)");
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double value = 0.0;
    for (int j = 1; j <= n; ++j)
      value += ((mask >> (j - 1)) & 1u) ? instance.line2(j) : instance.line1(j);
    best = std::max(best, value);
  }
  return best;
}

}  // namespace laststop
