#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "classify/datasets.hpp"
#include "classify/exact.hpp"
#include "classify/mcmc.hpp"
#include "classify/model.hpp"

using namespace classify;

namespace {

OrderedDataset random_dataset(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> raw(n);
  for (double& v : raw) v = std::normal_distribution<double>(0.0, 2.0)(gen);
  return prepare_dataset(raw);
}

// All compositions reachable from `from` by one split.
std::vector<Composition> split_neighbors(const Composition& from) {
  std::set<Composition> result;
  for (int g = 0; g < from.k(); ++g) {
    for (int left = 1; left < from.part(g); ++left) {
      std::vector<int> parts;
      for (int j = 0; j < from.k(); ++j) {
        if (j == g) {
          parts.push_back(left);
          parts.push_back(from.part(j) - left);
        } else {
          parts.push_back(from.part(j));
        }
      }
      result.insert(Composition(parts));
    }
  }
  return {result.begin(), result.end()};
}

// The unique (group, left_size) derivation of a one-split transition.
SplitProposal derive_split(const Composition& from, const Composition& to) {
  for (int j = 0; j + 1 < to.k(); ++j) {
    std::vector<int> merged;
    for (int i = 0; i < to.k(); ++i) {
      if (i == j) {
        merged.push_back(to.part(i) + to.part(i + 1));
        ++i;
      } else {
        merged.push_back(to.part(i));
      }
    }
    if (Composition(merged) == from) {
      SplitProposal prop;
      prop.to = to;
      prop.group = j;
      prop.left_size = to.part(j);
      prop.log_forward = std::log(split_kernel_prob(from, to));
      return prop;
    }
  }
  FAIL("not a one-step split");
  return {};
}

}  // namespace

TEST_CASE("split proposals from (3)") {
  Rng rng(19);
  const Composition from({3});
  std::map<Composition, int> seen;
  for (int trial = 0; trial < 4000; ++trial) {
    const SplitProposal prop = propose_split(from, rng);
    CHECK(std::exp(prop.log_forward) == doctest::Approx(0.5));
    ++seen[prop.to];
  }
  REQUIRE(seen.size() == 2);
  CHECK(seen.count(Composition({1, 2})) == 1);
  CHECK(seen.count(Composition({2, 1})) == 1);
  // both outcomes roughly uniform
  CHECK(seen[Composition({1, 2})] > 1800);
  CHECK(seen[Composition({2, 1})] > 1800);
}

TEST_CASE("split proposal forward probability matches exhaustive counting") {
  // (4,6): two splittable groups; splitting group 0 at its second point
  const Composition from({4, 6});
  CHECK(split_kernel_prob(from, Composition({2, 2, 6})) == doctest::Approx(1.0 / (2 * 3)));
  // kernel over all reachable targets is a probability distribution
  double total = 0.0;
  for (const Composition& to : split_neighbors(from)) {
    total += split_kernel_prob(from, to);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("split requires a splittable group") {
  Rng rng(1);
  CHECK_THROWS_WITH_AS(propose_split(Composition({1, 1, 1}), rng), "no splittable group",
                       std::logic_error);
}

TEST_CASE("merge proposals") {
  Rng rng(7);
  const MergeProposal ten = propose_merge(Composition({4, 6}), rng);
  CHECK(ten.to == Composition({10}));
  CHECK(std::exp(ten.log_forward) == doctest::Approx(1.0));

  std::map<Composition, int> seen;
  for (int trial = 0; trial < 2000; ++trial) {
    const MergeProposal prop = propose_merge(Composition({2, 3, 5}), rng);
    CHECK(std::exp(prop.log_forward) == doctest::Approx(0.5));
    ++seen[prop.to];
  }
  REQUIRE(seen.size() == 2);
  CHECK(seen.count(Composition({5, 5})) == 1);
  CHECK(seen.count(Composition({2, 8})) == 1);

  CHECK_THROWS_WITH_AS(propose_merge(Composition({10}), rng), "nothing to merge",
                       std::logic_error);
}

TEST_CASE("accept_split boundary example is certain") {
  // two observations: (2) -> (1,1) with equal target mass
  SplitProposal prop;
  prop.to = Composition({1, 1});
  prop.group = 0;
  prop.left_size = 1;
  prop.log_forward = std::log(1.0);
  CHECK(accept_split(Composition({2}), prop, -3.7, -3.7, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("accept_merge of two singletons uses the bare probability ratio") {
  // (1,1) -> (2): every proposal count is 1, so alpha = min(1, p(2)/p(1,1))
  MergeProposal prop;
  prop.to = Composition({2});
  prop.pair = 0;
  prop.log_forward = std::log(1.0);
  const double log_p_from = -4.0;
  for (double log_p_to : {-3.0, -4.0, -6.2}) {
    const double expected = std::min(1.0, std::exp(log_p_to - log_p_from));
    CHECK(accept_merge(Composition({1, 1}), prop, log_p_from, log_p_to, 0.5) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("merged states always keep a splittable group") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(8));
    Composition comp = composition_from_mask(rng.uniform_below(composition_count(n)), n);
    if (comp.k() < 2) continue;
    const MergeProposal prop = propose_merge(comp, rng);
    CHECK(splittable_group_count(prop.to) >= 1);
  }
}

TEST_CASE("split kernel probabilities") {
  CHECK(split_kernel_prob(Composition({3}), Composition({1, 2})) == doctest::Approx(0.5));
  CHECK(split_kernel_prob(Composition({2, 2}), Composition({1, 1, 2})) == doctest::Approx(0.5));
  CHECK(split_kernel_prob(Composition({2, 2}), Composition({1, 2, 1})) == 0.0);
  CHECK_THROWS_WITH_AS(split_kernel_prob(Composition({3}), Composition({1, 1, 1})),
                       "not a one-step split", std::invalid_argument);
}

TEST_CASE("reversibility of the split and merge kernels") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(7));
    const Composition from = composition_from_mask(rng.uniform_below(composition_count(n)), n);
    for (const Composition& to : split_neighbors(from)) {
      CHECK(split_kernel_prob(from, to) > 0.0);
      // reverse: merging the split pair of `to` reaches `from` with positive probability
      bool reverse_reachable = false;
      for (int j = 0; j + 1 < to.k(); ++j) {
        std::vector<int> merged;
        for (int i = 0; i < to.k(); ++i) {
          if (i == j) {
            merged.push_back(to.part(i) + to.part(i + 1));
            ++i;
          } else {
            merged.push_back(to.part(i));
          }
        }
        if (Composition(merged) == from) reverse_reachable = true;
      }
      CHECK(reverse_reachable);
    }
  }
}

TEST_CASE("detailed balance for every one-split pair at n = 5") {
  const OrderedDataset ds = random_dataset(5, 71);
  const Hyperparams h;
  const double q = 0.5;
  const int n = 5;

  for (std::uint64_t mask = 0; mask < composition_count(n); ++mask) {
    const Composition u = composition_from_mask(mask, n);
    const double log_pu = log_unnorm_prob(u, ds, h);
    for (const Composition& v : split_neighbors(u)) {
      const double log_pv = log_unnorm_prob(v, ds, h);

      const SplitProposal split = derive_split(u, v);
      const double forward_density = split_select_prob(u.k(), n, q) * split_kernel_prob(u, v);
      const double alpha_up = accept_split(u, split, log_pu, log_pv, q);

      MergeProposal merge;
      merge.to = u;
      merge.pair = split.group;
      merge.log_forward = -std::log(static_cast<double>(v.k() - 1));
      const double reverse_density = merge_select_prob(v.k(), n, q) / (v.k() - 1);
      const double alpha_down = accept_merge(v, merge, log_pv, log_pu, q);

      const double flow_up = std::exp(log_pu) * forward_density * alpha_up;
      const double flow_down = std::exp(log_pv) * reverse_density * alpha_down;
      CHECK(flow_up == doctest::Approx(flow_down).epsilon(1e-10));
    }
  }
}

TEST_CASE("detailed balance of the acceptance pair on the 10-point set") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  const Hyperparams h;
  const Composition u({4, 6});
  const Composition v({4, 3, 3});
  const double log_pu = log_unnorm_prob(u, ds, h);
  const double log_pv = log_unnorm_prob(v, ds, h);

  const SplitProposal split = derive_split(u, v);
  MergeProposal merge;
  merge.to = u;
  merge.pair = 1;
  merge.log_forward = -std::log(2.0);

  const double flow_up = std::exp(log_pu) * split_select_prob(2, 10, 0.5) *
                         split_kernel_prob(u, v) * accept_split(u, split, log_pu, log_pv, 0.5);
  const double flow_down = std::exp(log_pv) * merge_select_prob(3, 10, 0.5) * 0.5 *
                           accept_merge(v, merge, log_pv, log_pu, 0.5);
  CHECK(flow_up == doctest::Approx(flow_down).epsilon(1e-10));
}

TEST_CASE("shuffle proposals stay on the pair total") {
  Rng rng(5);
  std::map<Composition, int> seen;
  for (int trial = 0; trial < 3000; ++trial) {
    const ShuffleProposal prop = propose_shuffle(Composition({2, 2}), rng);
    CHECK(prop.to.n() == 4);
    CHECK(prop.to.k() == 2);
    ++seen[prop.to];
  }
  REQUIRE(seen.size() == 3);  // (1,3), (2,2), (3,1)
  for (const auto& [comp, count] : seen) CHECK(count > 800);
  CHECK(accept_shuffle(-2.0, -2.0) == doctest::Approx(1.0));  // proposing the current state
}

TEST_CASE("shuffle preserves k and n always") {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(10));
    const Composition comp = composition_from_mask(rng.uniform_below(composition_count(n)), n);
    if (comp.k() < 2) continue;
    const ShuffleProposal prop = propose_shuffle(comp, rng);
    CHECK(prop.to.k() == comp.k());
    CHECK(prop.to.n() == comp.n());
  }
}

TEST_CASE("move selection at the boundaries") {
  CHECK(split_select_prob(1, 10, 0.5) == 1.0);
  CHECK(merge_select_prob(1, 10, 0.5) == 0.0);
  CHECK(split_select_prob(10, 10, 0.5) == 0.0);
  CHECK(merge_select_prob(10, 10, 0.5) == 1.0);
  CHECK(split_select_prob(4, 10, 0.3) == doctest::Approx(0.3));
  CHECK(merge_select_prob(4, 10, 0.3) == doctest::Approx(0.7));
}

TEST_CASE("same seed gives identical chains") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  McmcConfig config;
  config.iterations = 5000;
  config.burn_in = 500;
  config.seed = 99;
  for (Scheme scheme : {Scheme::M1, Scheme::M2}) {
    config.scheme = scheme;
    const McmcSummary a = run_chain(ds, Hyperparams{}, config);
    const McmcSummary b = run_chain(ds, Hyperparams{}, config);
    CHECK(a.k_estimates == b.k_estimates);
    CHECK(a.visit_counts == b.visit_counts);
    CHECK(a.map_estimate == b.map_estimate);
    CHECK(a.split.accepted == b.split.accepted);
    CHECK(a.up.accepted == b.up.accepted);
  }
}

TEST_CASE("degenerate configurations are rejected") {
  const OrderedDataset ds = prepare_dataset({1.0, 2.0});
  McmcConfig config;
  config.iterations = 0;
  CHECK_THROWS_WITH_AS(run_chain(ds, Hyperparams{}, config), "no samples collected",
                       std::invalid_argument);
  config.iterations = 10;
  config.split_prob = 1.0;
  CHECK_THROWS_AS(run_chain(ds, Hyperparams{}, config), std::invalid_argument);
}

TEST_CASE("cached log probability stays consistent under debug checks") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  McmcConfig config;
  config.iterations = 4000;
  config.burn_in = 0;
  config.seed = 3;
  config.debug_checks = true;
  for (Scheme scheme : {Scheme::M1, Scheme::M2}) {
    config.scheme = scheme;
    CHECK_NOTHROW(run_chain(ds, Hyperparams{}, config));
  }
}

TEST_CASE("single observation chain is the identity") {
  const OrderedDataset ds = prepare_dataset({4.2});
  McmcConfig config;
  config.iterations = 100;
  config.burn_in = 10;
  const McmcSummary summary = run_chain(ds, Hyperparams{}, config);
  CHECK(summary.k_estimates[0] == doctest::Approx(1.0));
  CHECK(summary.map_estimate == Composition({1}));
}

TEST_CASE("both schemes recover tiny exact posteriors") {
  // boundary logic dominates at n = 2, 3: compare against full enumeration
  for (int n : {2, 3}) {
    const OrderedDataset ds = random_dataset(n, 100 + n);
    const ExactPosterior exact = exact_posterior(ds, Hyperparams{});
    for (Scheme scheme : {Scheme::M1, Scheme::M2}) {
      McmcConfig config;
      config.scheme = scheme;
      config.iterations = 60000;
      config.burn_in = 2000;
      config.seed = 7;
      const McmcSummary summary = run_chain(ds, Hyperparams{}, config);
      for (int k = 1; k <= n; ++k) {
        CHECK(std::abs(summary.k_prob(k) - exact.k_prob(k)) < 0.02);
      }
    }
  }
}

TEST_CASE("total variation distance to the exact posterior is small") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  const ExactPosterior exact = exact_posterior(ds, Hyperparams{});
  const auto tv_at = [&](Scheme scheme) {
    McmcConfig config;
    config.scheme = scheme;
    config.iterations = 100000;
    config.burn_in = 10000;
    config.seed = 12;
    const McmcSummary summary = run_chain(ds, Hyperparams{}, config);
    double tv = 0.0;
    for (std::size_t i = 0; i < exact.entries.size(); ++i) {
      tv += std::abs(summary.frequency(exact.composition(i)) - exact.entries[i].prob);
    }
    return 0.5 * tv;
  };
  CHECK(tv_at(Scheme::M1) < 0.02);
  CHECK(tv_at(Scheme::M2) < 0.03);  // converges more slowly than M1
}

TEST_CASE("rng streams are reproducible and jumps separate them") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
  Rng jumped(42);
  jumped.jump();
  Rng base(42);
  bool all_equal = true;
  for (int i = 0; i < 1000; ++i) all_equal = all_equal && jumped.next() == base.next();
  CHECK(!all_equal);

  Rng u(7);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto draw = u.uniform_below(13);
    CHECK(draw < 13);
  }
  const double x = u.uniform();
  CHECK(x >= 0.0);
  CHECK(x < 1.0);
}

TEST_CASE("configurable initial state is honored") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  McmcConfig config;
  config.iterations = 1;
  config.burn_in = 0;
  config.seed = 1;
  config.initial_state = Composition::singletons(10);
  const McmcSummary summary = run_chain(ds, Hyperparams{}, config);
  // after one step from (1,...,1) the chain merged or stayed
  const Composition& visited = summary.visit_counts.begin()->first;
  CHECK(visited.k() >= 9);

  config.initial_state = Composition({3, 3});  // wrong total
  CHECK_THROWS_AS(run_chain(ds, Hyperparams{}, config), std::invalid_argument);
}

TEST_CASE("M1 and M2 match the exact k marginal on the 10-point set") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  const ExactPosterior exact = exact_posterior(ds, Hyperparams{});
  McmcConfig config;
  config.iterations = 50000;
  config.burn_in = 5000;
  config.seed = 21;
  for (Scheme scheme : {Scheme::M1, Scheme::M2}) {
    config.scheme = scheme;
    const McmcSummary summary = run_chain(ds, Hyperparams{}, config);
    for (int k = 1; k <= 4; ++k) {
      CHECK(std::abs(summary.k_prob(k) - exact.k_prob(k)) < 0.02);
    }
    CHECK(summary.map_estimate == Composition({4, 6}));
  }
}

TEST_CASE("M2 finds the galaxy mode with more iterations") {
  const OrderedDataset galaxy = prepare_dataset(galaxy_data());
  McmcConfig config;
  config.scheme = Scheme::M2;
  config.iterations = 30000;
  config.burn_in = 3000;
  config.seed = 4;
  const McmcSummary summary = run_chain(galaxy, Hyperparams{}, config);
  CHECK(summary.map_estimate == Composition({7, 72, 3}));
  CHECK(summary.k_prob(3) > 0.95);
}

TEST_CASE("frequencies are computed over post burn-in sweeps only") {
  const OrderedDataset ds = prepare_dataset(small10_data());
  McmcConfig config;
  config.iterations = 1000;
  config.burn_in = 100;
  config.seed = 8;
  const McmcSummary summary = run_chain(ds, Hyperparams{}, config);
  std::int64_t total = 0;
  for (const auto& [comp, count] : summary.visit_counts) total += count;
  CHECK(total == config.iterations);
  double k_total = 0.0;
  for (int k = 1; k <= 10; ++k) k_total += summary.k_prob(k);
  CHECK(k_total == doctest::Approx(1.0));
  const auto top = summary.top_frequencies(3);
  CHECK(top.size() <= 3);
  CHECK(top.front().second == summary.map_frequency);
}
