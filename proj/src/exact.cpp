#include "classify/exact.hpp"

#include <algorithm>
#include <cmath>

#include "classify/logsumexp.hpp"
#include "classify/model.hpp"

namespace classify {

std::uint64_t composition_count(int n) { return std::uint64_t{1} << (n - 1); }

void check_composition_cap(int n, int cap) {
  if (n < 1 || n > cap || n > 64) {
    throw InfeasibleError("exact enumeration infeasible; use MCMC");
  }
}

ExactPosterior exact_posterior(const OrderedDataset& ds, const Hyperparams& h, int cap) {
  const int n = ds.size();
  check_composition_cap(n, cap);

  ExactPosterior post;
  post.n = n;
  post.entries.resize(composition_count(n));
  post.k_marginal.assign(n, 0.0);

  LogSumAccumulator norm;
  std::vector<LogSumAccumulator> per_k(n);
  for_each_composition(
      n,
      [&](std::uint64_t mask, const Composition& comp) {
        const double lp = log_unnorm_prob(comp, ds, h);
        post.entries[mask] = {mask, lp};  // log mass for now, scaled below
        norm.add(lp);
        per_k[comp.k() - 1].add(lp);
      },
      cap);

  post.log_norm_const = norm.value();
  for (auto& entry : post.entries) entry.prob = std::exp(entry.prob - post.log_norm_const);
  for (int k = 1; k <= n; ++k) {
    const double v = per_k[k - 1].value();
    post.k_marginal[k - 1] = std::isinf(v) ? 0.0 : std::exp(v - post.log_norm_const);
  }
  return post;
}

std::vector<std::pair<Composition, double>> top_n(const ExactPosterior& post, std::size_t n_top) {
  if (n_top < 1) throw std::invalid_argument("n_top must be >= 1");
  std::vector<std::size_t> order(post.entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t keep = std::min(n_top, order.size());
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (post.entries[a].prob != post.entries[b].prob) {
                        return post.entries[a].prob > post.entries[b].prob;
                      }
                      return a < b;  // enumeration-order tie-break
                    });
  std::vector<std::pair<Composition, double>> result;
  result.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    result.emplace_back(post.composition(order[i]), post.entries[order[i]].prob);
  }
  return result;
}

}  // namespace classify
