#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "classify/datasets.hpp"
#include "classify/model.hpp"
#include "classify/set_partition.hpp"

using namespace classify;

TEST_CASE("bell numbers") {
  const std::uint64_t expected[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (int n = 0; n <= 10; ++n) CHECK(bell_number(n) == expected[n]);
  CHECK(bell_number(11) == 678570);
  CHECK(bell_number(12) == 4213597);
}

TEST_CASE("set partition enumeration counts match Bell numbers") {
  for (int n = 1; n <= 12; ++n) {
    std::uint64_t count = 0;
    for_each_set_partition(n, [&](const std::vector<int>&) { ++count; });
    CHECK(count == bell_number(n));
  }
}

TEST_CASE("n = 3 lists the five partitions in growth-string order") {
  std::vector<std::vector<int>> seen;
  for_each_set_partition(3, [&](const std::vector<int>& rgs) { seen.push_back(rgs); });
  const std::vector<std::vector<int>> expected = {
      {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  CHECK(seen == expected);
}

TEST_CASE("partition cap raises the infeasibility error") {
  CHECK_THROWS_WITH_AS(for_each_set_partition(13, [](const std::vector<int>&) {}),
                       "MDP exact enumeration infeasible", InfeasibleError);
  CHECK_THROWS_AS(mdp_exact_posterior(prepare_dataset(std::vector<double>(13, 1.0)),
                                      Hyperparams{}),
                  InfeasibleError);
}

TEST_CASE("from_rgs builds blocks in first-use order") {
  const SetPartition partition = SetPartition::from_rgs({0, 1, 0, 2, 1});
  REQUIRE(partition.k() == 3);
  CHECK(partition.blocks[0] == std::vector<int>{0, 2});
  CHECK(partition.blocks[1] == std::vector<int>{1, 4});
  CHECK(partition.blocks[2] == std::vector<int>{3});
}

TEST_CASE("partition score is invariant to block labeling") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  const Hyperparams h;
  SetPartition partition;
  partition.blocks = {{0, 1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const double reference = log_partition_score(partition, ds, h);
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    SetPartition shuffled = partition;
    std::shuffle(shuffled.blocks.begin(), shuffled.blocks.end(), gen);
    CHECK(log_partition_score(shuffled, ds, h) == doctest::Approx(reference).epsilon(1e-13));
  }
}

TEST_CASE("mdp posterior reproduces the 10-point reference values") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  const MdpPosterior post = mdp_exact_posterior(ds, Hyperparams{});
  CHECK(post.partition_count == 115975);

  // frozen from an independent implementation of the same formulas
  const double expected[] = {6.190940e-03, 3.763201e-01, 3.972973e-01, 1.729908e-01,
                             4.087935e-02, 5.785004e-03, 5.083033e-04, 2.742576e-05,
                             8.378874e-07, 1.115070e-08};
  for (int k = 1; k <= 10; ++k) {
    CHECK(post.k_prob(k) == doctest::Approx(expected[k - 1]).epsilon(1e-5));
  }

  REQUIRE(!post.top_partitions.empty());
  const auto& [best, best_prob] = post.top_partitions.front();
  REQUIRE(best.k() == 2);
  CHECK(best.blocks[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(best.blocks[1] == std::vector<int>{4, 5, 6, 7, 8, 9});
  CHECK(best_prob == doctest::Approx(0.3319).epsilon(2e-3));

  double marg_total = 0.0;
  for (int k = 1; k <= 10; ++k) marg_total += post.k_prob(k);
  CHECK(marg_total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("top partitions come out in descending probability") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  const MdpPosterior post = mdp_exact_posterior(ds, Hyperparams{}, kDefaultPartitionCap, 8);
  REQUIRE(post.top_partitions.size() == 8);
  for (std::size_t i = 1; i < post.top_partitions.size(); ++i) {
    CHECK(post.top_partitions[i - 1].second >= post.top_partitions[i].second);
  }
  // retained scores agree with direct evaluation
  for (const auto& [partition, prob] : post.top_partitions) {
    const double direct =
        std::exp(log_partition_score(partition, ds, Hyperparams{}) - post.log_norm_const);
    CHECK(prob == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("single observation has one partition with probability one") {
  const MdpPosterior post = mdp_exact_posterior(prepare_dataset({3.3}), Hyperparams{});
  CHECK(post.partition_count == 1);
  CHECK(post.k_prob(1) == doctest::Approx(1.0));
}

TEST_CASE("mdp k marginal sums to one on random data") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> raw(8);
    for (double& v : raw) v = std::normal_distribution<double>(0.0, 3.0)(gen);
    const MdpPosterior post = mdp_exact_posterior(prepare_dataset(raw), Hyperparams{});
    double total = 0.0;
    for (int k = 1; k <= 8; ++k) total += post.k_prob(k);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}
