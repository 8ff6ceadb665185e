#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "classify/dataset.hpp"
#include "classify/errors.hpp"
#include "classify/hyperparams.hpp"

namespace classify {

inline constexpr int kDefaultPartitionCap = 12;

// An unordered division of the observation indices {0..n-1} into disjoint
// non-empty blocks. Blocks are kept in order of their smallest member.
struct SetPartition {
  std::vector<std::vector<int>> blocks;

  int k() const { return static_cast<int>(blocks.size()); }

  // Builds a partition from a restricted growth string: rgs[i] is the block
  // label of item i, labels appear in first-use order starting at 0.
  static SetPartition from_rgs(const std::vector<int>& rgs);
};

// Bell number B(n), the number of set partitions of n items. n <= 25.
std::uint64_t bell_number(int n);

// Throws InfeasibleError ("MDP exact enumeration infeasible") when n is out
// of range for enumeration under the given cap.
void check_partition_cap(int n, int cap);

// Calls fn(rgs) once per set partition of n items, in lexicographic
// restricted-growth-string order. The vector is reused between calls.
template <typename Fn>
void for_each_set_partition(int n, Fn&& fn, int cap = kDefaultPartitionCap) {
  check_partition_cap(n, cap);
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);  // prefix_max[i] = max(rgs[0..i])
  for (;;) {
    fn(std::as_const(rgs));
    int i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

// Unnormalized log posterior mass of a set partition under the unordered
// mixture model: theta^k * prod_blocks Gamma(size) / rising(theta, n) times
// the per-block conjugate marginal likelihood.
double log_partition_score(const SetPartition& partition, const OrderedDataset& ds,
                           const Hyperparams& h);

// Exact posterior over set partitions, reduced to the k-marginal plus the
// highest-probability partitions.
struct MdpPosterior {
  int n = 0;
  std::vector<double> k_marginal;  // k_marginal[k-1] = p(k blocks), k = 1..n
  std::vector<std::pair<SetPartition, double>> top_partitions;  // descending probability
  double log_norm_const = 0.0;
  std::uint64_t partition_count = 0;

  double k_prob(int k) const { return k_marginal[k - 1]; }
};

MdpPosterior mdp_exact_posterior(const OrderedDataset& ds, const Hyperparams& h,
                                 int cap = kDefaultPartitionCap, std::size_t top_keep = 16);

}  // namespace classify
