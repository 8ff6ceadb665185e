#include "classify/set_partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "classify/logsumexp.hpp"
#include "classify/model.hpp"

namespace classify {

SetPartition SetPartition::from_rgs(const std::vector<int>& rgs) {
  SetPartition partition;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    const auto label = static_cast<std::size_t>(rgs[i]);
    if (label >= partition.blocks.size()) partition.blocks.resize(label + 1);
    partition.blocks[label].push_back(static_cast<int>(i));
  }
  return partition;
}

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw std::invalid_argument("Bell numbers supported for 0 <= n <= 25");
  // Bell triangle; row fits in uint64 for n <= 25
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(i + 1);
    next.push_back(row.back());
    for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(i + 1); ++j) {
      next.push_back(next[j] + row[j]);
    }
    row = std::move(next);
  }
  return row.front();
}

void check_partition_cap(int n, int cap) {
  if (n < 1 || n > cap) throw InfeasibleError("MDP exact enumeration infeasible");
}

double log_partition_score(const SetPartition& partition, const OrderedDataset& ds,
                           const Hyperparams& h) {
  const int n = ds.size();
  double total = partition.k() * std::log(h.theta);
  for (int i = 0; i < n; ++i) total -= std::log(h.theta + i);  // rising factorial
  const auto& values = ds.values();
  for (const auto& block : partition.blocks) {
    double sum = 0.0, sum_sq = 0.0;
    for (int idx : block) {
      sum += values[idx];
      sum_sq += values[idx] * values[idx];
    }
    const auto size = static_cast<int>(block.size());
    total += std::lgamma(static_cast<double>(size));
    total += log_marginal_term(group_stats_from_sums(size, sum, sum_sq, 0, h.c), h);
  }
  return total;
}

MdpPosterior mdp_exact_posterior(const OrderedDataset& ds, const Hyperparams& h, int cap,
                                 std::size_t top_keep) {
  const int n = ds.size();
  check_partition_cap(n, cap);
  const auto& values = ds.values();

  MdpPosterior post;
  post.n = n;
  post.k_marginal.assign(n, 0.0);

  double log_rising = 0.0;
  for (int i = 0; i < n; ++i) log_rising += std::log(h.theta + i);

  LogSumAccumulator norm;
  std::vector<LogSumAccumulator> per_k(n);

  struct Candidate {
    double log_score;
    std::uint64_t order;  // enumeration index, for deterministic tie-breaks
    std::vector<int> rgs;
  };
  std::vector<Candidate> top;  // kept sorted descending by (log_score, -order)
  const auto better = [](const Candidate& a, const Candidate& b) {
    if (a.log_score != b.log_score) return a.log_score > b.log_score;
    return a.order < b.order;
  };

  // per-label accumulators reused across partitions
  std::vector<int> count(n, 0);
  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);

  std::uint64_t index = 0;
  for_each_set_partition(
      n,
      [&](const std::vector<int>& rgs) {
        int k = 0;
        for (int i = 0; i < n; ++i) {
          const int label = rgs[i];
          if (label >= k) {
            k = label + 1;
            count[label] = 0;
            sum[label] = 0.0;
            sum_sq[label] = 0.0;
          }
          ++count[label];
          sum[label] += values[i];
          sum_sq[label] += values[i] * values[i];
        }
        double lp = k * std::log(h.theta) - log_rising;
        for (int label = 0; label < k; ++label) {
          lp += std::lgamma(static_cast<double>(count[label]));
          lp += log_marginal_term(group_stats_from_sums(count[label], sum[label], sum_sq[label], 0, h.c), h);
        }
        norm.add(lp);
        per_k[k - 1].add(lp);
        if (top_keep > 0 &&
            (top.size() < top_keep || lp > top.back().log_score)) {
          Candidate cand{lp, index, rgs};
          auto pos = std::lower_bound(top.begin(), top.end(), cand, better);
          top.insert(pos, std::move(cand));
          if (top.size() > top_keep) top.pop_back();
        }
        ++index;
      },
      cap);

  post.partition_count = index;
  post.log_norm_const = norm.value();
  for (int k = 1; k <= n; ++k) {
    const double v = per_k[k - 1].value();
    post.k_marginal[k - 1] = std::isinf(v) ? 0.0 : std::exp(v - post.log_norm_const);
  }
  post.top_partitions.reserve(top.size());
  for (const auto& cand : top) {
    post.top_partitions.emplace_back(SetPartition::from_rgs(cand.rgs),
                                     std::exp(cand.log_score - post.log_norm_const));
  }
  return post;
}

}  // namespace classify
