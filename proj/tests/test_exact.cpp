#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "classify/datasets.hpp"
#include "classify/exact.hpp"
#include "classify/model.hpp"

using namespace classify;

namespace {

std::vector<Composition> collect_compositions(int n) {
  std::vector<Composition> all;
  for_each_composition(n, [&](std::uint64_t, const Composition& comp) { all.push_back(comp); });
  return all;
}

OrderedDataset random_dataset(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> raw(n);
  for (double& v : raw) v = std::normal_distribution<double>(0.0, 2.0)(gen);
  return prepare_dataset(raw);
}

}  // namespace

TEST_CASE("composition enumeration order and counts") {
  CHECK(collect_compositions(1) == std::vector<Composition>{Composition({1})});

  const auto three = collect_compositions(3);
  REQUIRE(three.size() == 4);
  CHECK(three[0] == Composition({3}));
  CHECK(three[1] == Composition({2, 1}));
  CHECK(three[2] == Composition({1, 2}));
  CHECK(three[3] == Composition({1, 1, 1}));

  CHECK(collect_compositions(10).size() == 512);
  for (int n = 1; n <= 12; ++n) {
    CHECK(collect_compositions(n).size() == composition_count(n));
    CHECK(composition_count(n) == (std::uint64_t{1} << (n - 1)));
  }
}

TEST_CASE("enumeration cap raises the infeasibility error") {
  CHECK_THROWS_WITH_AS(for_each_composition(26, [](std::uint64_t, const Composition&) {}),
                       "exact enumeration infeasible; use MCMC", InfeasibleError);
  CHECK_THROWS_AS(for_each_composition(11, [](std::uint64_t, const Composition&) {}, 10),
                  InfeasibleError);
}

TEST_CASE("mask codec round-trips") {
  for (int n : {1, 2, 5, 9, 12}) {
    for (std::uint64_t mask = 0; mask < composition_count(n); ++mask) {
      const Composition comp = composition_from_mask(mask, n);
      CHECK(comp.n() == n);
      CHECK(composition_mask(comp) == mask);
    }
  }
}

TEST_CASE("exact posterior reproduces the 10-point reference values") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  const ExactPosterior post = exact_posterior(ds, Hyperparams{});
  REQUIRE(post.entries.size() == 512);

  // frozen from an independent implementation of the same formulas
  CHECK(post.k_prob(1) == doctest::Approx(0.04533907).epsilon(1e-5));
  CHECK(post.k_prob(2) == doctest::Approx(0.88622973).epsilon(1e-5));
  CHECK(post.k_prob(3) == doctest::Approx(0.06597411).epsilon(1e-5));
  CHECK(post.k_prob(4) == doctest::Approx(0.00239876).epsilon(1e-5));
  CHECK(post.k_prob(10) == doctest::Approx(2.250375e-15).epsilon(1e-4));

  const auto top = top_n(post, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0].first == Composition({4, 6}));
  CHECK(top[0].second == doctest::Approx(0.8335).epsilon(2e-3));
}

TEST_CASE("exact posterior normalizes") {
  for (std::uint64_t seed : {1, 2, 3}) {
    for (int n : {2, 5, 8, 12}) {
      const ExactPosterior post = exact_posterior(random_dataset(n, seed), Hyperparams{});
      double total = 0.0;
      for (const auto& entry : post.entries) total += entry.prob;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("k marginal equals independent regrouping of the entries") {
  const ExactPosterior post = exact_posterior(random_dataset(9, 4), Hyperparams{});
  std::vector<double> regrouped(9, 0.0);
  for (std::size_t i = 0; i < post.entries.size(); ++i) {
    regrouped[post.composition(i).k() - 1] += post.entries[i].prob;
  }
  double marg_total = 0.0;
  for (int k = 1; k <= 9; ++k) {
    CHECK(post.k_prob(k) == doctest::Approx(regrouped[k - 1]).epsilon(1e-11));
    marg_total += post.k_prob(k);
  }
  CHECK(marg_total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two observations split the mass over both compositions") {
  const ExactPosterior post = exact_posterior(prepare_dataset({0.2, 1.7}), Hyperparams{});
  REQUIRE(post.entries.size() == 2);
  CHECK(post.entries[0].prob + post.entries[1].prob == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(post.entries[0].prob > 0.0);
  CHECK(post.entries[1].prob > 0.0);
}

TEST_CASE("top_n clamps and breaks ties by enumeration order") {
  const ExactPosterior post = exact_posterior(random_dataset(6, 9), Hyperparams{});
  const auto all = top_n(post, 1000);
  CHECK(all.size() == post.entries.size());
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].second >= all[i].second);

  // synthetic uniform posterior: ties resolve in enumeration order
  ExactPosterior uniform;
  uniform.n = 4;
  uniform.k_marginal.assign(4, 0.0);
  for (std::uint64_t mask = 0; mask < 8; ++mask) uniform.entries.push_back({mask, 0.125});
  const auto top = top_n(uniform, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0].first == composition_from_mask(0, 4));
  CHECK(top[1].first == composition_from_mask(1, 4));
  CHECK(top[2].first == composition_from_mask(2, 4));
}

TEST_CASE("exact_posterior propagates the cap error") {
  CHECK_THROWS_AS(exact_posterior(random_dataset(11, 1), Hyperparams{}, 10), InfeasibleError);
}

TEST_CASE("tied observations are handled without jitter") {
  const ExactPosterior post =
      exact_posterior(prepare_dataset({0.0, 0.0, 0.0, 100.0, 100.0}), Hyperparams{});
  double total = 0.0;
  for (const auto& entry : post.entries) {
    CHECK(std::isfinite(entry.prob));
    total += entry.prob;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // zero within-group spread on both sides of a wide gap
  CHECK(top_n(post, 1)[0].first == Composition({3, 2}));
  CHECK(post.k_prob(2) > 0.9);
}
