#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "laststop/bandit.hpp"
#include "laststop/oracles.hpp"
#include "laststop/rng.hpp"

using namespace laststop;

TEST_CASE("instance construction and accessors") {
  TwoLineInstance instance({0.2, 0.5}, {0.8, 0.1});
  CHECK(instance.size() == 2);
  CHECK(instance.line1(1) == 0.2);
  CHECK(instance.line2(2) == 0.1);
  CHECK_THROWS_AS(TwoLineInstance({0.2}, {0.8, 0.1}), validation_error);
  CHECK_THROWS_AS(TwoLineInstance({}, {}), validation_error);
  CHECK_THROWS_AS(TwoLineInstance({1.2}, {0.5}), validation_error);
}

TEST_CASE("greedy choice picks the larger line and defaults to line 1 on ties") {
  TwoLineInstance instance({0.2, 0.5, 0.7}, {0.8, 0.5, 0.3});
  CHECK(greedy_choice(instance, 1) == 2);
  CHECK(greedy_choice(instance, 2) == 1);
  CHECK(greedy_choice(instance, 3) == 1);
  CHECK(greedy_choice(instance, 1, false) == 1);
}

TEST_CASE("accumulated maximum and divergence") {
  TwoLineInstance instance({0.2, 0.5, 0.7}, {0.8, 0.5, 0.3});
  CHECK(accumulated_max(instance, 3) == Catch::Approx(0.8 + 0.5 + 0.7).margin(1e-15));
  CHECK(l_divergence(instance, 3) == Catch::Approx(0.6 + 0.0 + 0.4).margin(1e-15));
  CHECK(accumulated_max(instance, 1) == Catch::Approx(0.8).margin(1e-15));
}

TEST_CASE("no policy beats the accumulated maximum") {
  Xoshiro256 rng(61);
  for (int round = 0; round < 30; ++round) {
    int n = 1 + static_cast<int>(rng.below(10));
    std::vector<double> p1(static_cast<std::size_t>(n));
    std::vector<double> p2(static_cast<std::size_t>(n));
    for (auto& v : p1) v = rng.uniform01();
    for (auto& v : p2) v = rng.uniform01();
    TwoLineInstance instance(p1, p2);
    CHECK(best_policy_value_by_enumeration(instance, n) ==
          Catch::Approx(accumulated_max(instance, n)).margin(1e-12));
  }
}

TEST_CASE("divergence of the harmonic-gap family stays summable") {
  // Lines differing by 1/j^2 per step keep l_n below pi^2/6 at every n.
  std::vector<double> p1;
  std::vector<double> p2;
  for (int j = 1; j <= 50; ++j) {
    p1.push_back(0.5);
    p2.push_back(0.5 + 1.0 / (static_cast<double>(j) * j) * 0.5);
  }
  TwoLineInstance instance(p1, p2);
  for (int n = 1; n <= 50; ++n)
    CHECK(l_divergence(instance, n) < 0.5 * 1.6449340668482264 + 1e-12);
}

TEST_CASE("no blocking means no gap, exactly") {
  TwoLineInstance instance({0.3, 0.6}, {0.7, 0.2});
  GapEstimate gap = simulate_red_light(instance, 0.0, 20000, 71, RewardModel::expected, 1);
  CHECK(gap.gap == 0.0);
  CHECK(gap.std_error == 0.0);
}

TEST_CASE("identical lines cannot lose from blocking") {
  TwoLineInstance instance(std::vector<double>(8, 0.4), std::vector<double>(8, 0.4));
  GapEstimate gap = simulate_red_light(instance, 0.5, 20000, 73, RewardModel::expected, 1);
  CHECK(gap.gap == 0.0);
}

TEST_CASE("the equality-case instance attains its bound") {
  TwoLineInstance instance(std::vector<double>(10, 0.2), std::vector<double>(10, 0.8));
  GapEstimate gap = simulate_red_light(instance, 0.1, 400000, 79, RewardModel::expected, 1);
  CHECK(std::fabs(gap.gap - 0.6) < 3.5 * gap.std_error);
  double bound = 0.1 * l_divergence(instance, 10);
  CHECK(bound == Catch::Approx(0.6).margin(1e-12));
}

TEST_CASE("the gap respects the divergence bound on random instances") {
  Xoshiro256 rng(83);
  std::uint64_t seed = 1000;
  for (int round = 0; round < 5; ++round) {
    int n = 3 + static_cast<int>(rng.below(8));
    std::vector<double> p1(static_cast<std::size_t>(n));
    std::vector<double> p2(static_cast<std::size_t>(n));
    for (auto& v : p1) v = rng.uniform01();
    for (auto& v : p2) v = rng.uniform01();
    TwoLineInstance instance(p1, p2);
    for (double delta : {0.05, 0.3}) {
      GapEstimate gap =
          simulate_red_light(instance, delta, 60000, seed++, RewardModel::expected, 1);
      CHECK(gap.gap <= delta * l_divergence(instance, n) + 3.0 * gap.std_error + 1e-15);
    }
  }
}

TEST_CASE("sampled reward models estimate the same gap") {
  TwoLineInstance instance(std::vector<double>(10, 0.2), std::vector<double>(10, 0.8));
  GapEstimate expected =
      simulate_red_light(instance, 0.1, 300000, 89, RewardModel::expected, 1);
  GapEstimate independent =
      simulate_red_light(instance, 0.1, 300000, 90, RewardModel::sampled_independent, 1);
  GapEstimate comonotone =
      simulate_red_light(instance, 0.1, 300000, 91, RewardModel::sampled_comonotone, 1);
  double joint = std::hypot(independent.std_error, expected.std_error);
  CHECK(std::fabs(independent.gap - expected.gap) < 4.0 * joint);
  joint = std::hypot(comonotone.std_error, expected.std_error);
  CHECK(std::fabs(comonotone.gap - expected.gap) < 4.0 * joint);
  // Coupling only narrows the spread of the per-trial differences.
  CHECK(comonotone.std_error <= independent.std_error + 1e-12);
}

TEST_CASE("a shared blocking grid is pathwise monotone") {
  Xoshiro256 rng(97);
  std::vector<double> p1(7);
  std::vector<double> p2(7);
  for (auto& v : p1) v = rng.uniform01();
  for (auto& v : p2) v = rng.uniform01();
  TwoLineInstance instance(p1, p2);
  std::vector<double> deltas = {0.0, 0.1, 0.2, 0.6, 1.0};
  auto gaps = simulate_red_light_grid(instance, deltas, 50000, 101, 1);
  REQUIRE(gaps.size() == deltas.size());
  CHECK(gaps[0].gap == 0.0);
  for (std::size_t g = 1; g < gaps.size(); ++g) CHECK(gaps[g].gap >= gaps[g - 1].gap);
}

TEST_CASE("grid and single-delta estimators agree") {
  TwoLineInstance instance(std::vector<double>(10, 0.2), std::vector<double>(10, 0.8));
  auto gaps = simulate_red_light_grid(instance, {0.1}, 300000, 103, 1);
  GapEstimate single = simulate_red_light(instance, 0.1, 300000, 104, RewardModel::expected, 1);
  double joint = std::hypot(gaps[0].std_error, single.std_error);
  CHECK(std::fabs(gaps[0].gap - single.gap) < 4.0 * joint);
}

TEST_CASE("red light simulation validates its inputs") {
  TwoLineInstance instance({0.5}, {0.5});
  CHECK_THROWS_AS(simulate_red_light(instance, -0.1, 100, 1, RewardModel::expected, 1),
                  validation_error);
  CHECK_THROWS_AS(simulate_red_light(instance, 1.1, 100, 1, RewardModel::expected, 1),
                  validation_error);
  CHECK_THROWS_AS(simulate_red_light(instance, 0.1, 0, 1, RewardModel::expected, 1),
                  validation_error);
  CHECK_THROWS_AS(simulate_red_light_grid(instance, {}, 100, 1, 1), validation_error);
}

TEST_CASE("grid order does not matter, only the delta values do") {
  TwoLineInstance instance({0.1, 0.9}, {0.9, 0.1});
  auto gaps = simulate_red_light_grid(instance, {0.5, 0.2}, 40000, 107, 1);
  REQUIRE(gaps.size() == 2);
  CHECK(gaps[0].gap >= gaps[1].gap);
}
