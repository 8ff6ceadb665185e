#include "classify/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace classify {

GroupStats group_stats(const OrderedDataset& ds, int start, int len, double c) {
  if (len < 1 || start < 0 || start + len > ds.size()) {
    throw std::invalid_argument("invalid group bounds");
  }
  return group_stats_from_sums(len, ds.sum(start, len), ds.sum_sq(start, len),
                               ds.size() - (start + len), c);
}

GroupStats group_stats_from_sums(int count, double sum, double sum_sq, int after, double c) {
  GroupStats stats;
  stats.size = count;
  stats.after = after;
  stats.mean = sum / count;
  const double shrink = 1.0 + c / count;
  // >= the within-group sum of squares for c > 0; clamp the rounding residue
  stats.shrunk_ss = std::max(0.0, sum_sq - count * stats.mean * stats.mean / shrink);
  return stats;
}

double log_weight_term(int size, int after, double theta) {
  return std::log(theta) + std::lgamma(1.0 + size) + std::lgamma(theta + after) -
         std::lgamma(1.0 + theta + size + after);
}

double log_marginal_term(const GroupStats& stats, const Hyperparams& h) {
  const double half_size = 0.5 * stats.size;
  return std::lgamma(h.a + half_size) + h.a * std::log(h.b) + 0.5 * std::log(h.c) -
         (h.a + half_size) * std::log(h.b + 0.5 * stats.shrunk_ss) -
         0.5 * std::log(h.c + stats.size) - std::lgamma(h.a);
}

double log_unnorm_prob(const Composition& comp, const OrderedDataset& ds, const Hyperparams& h) {
  if (comp.n() != ds.size()) {
    throw std::invalid_argument("composition/dataset length mismatch");
  }
  double total = 0.0;
  int offset = 0;
  for (int j = 0; j < comp.k(); ++j) {
    const int size = comp.part(j);
    const GroupStats stats = group_stats(ds, offset, size, h.c);
    total += log_weight_term(size, stats.after, h.theta) + log_marginal_term(stats, h);
    offset += size;
  }
  return total;
}

}  // namespace classify
