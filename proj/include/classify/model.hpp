#pragma once

#include "classify/composition.hpp"
#include "classify/dataset.hpp"
#include "classify/hyperparams.hpp"

namespace classify {

// Sufficient statistics of one group of consecutive observations.
struct GroupStats {
  int size = 0;            // n_j, number of observations in the group
  double mean = 0.0;       // group sample mean
  double shrunk_ss = 0.0;  // sum of squares minus size*mean^2/(1 + c/size); always >= 0
  int after = 0;           // observations allocated to later groups
};

// Statistics of the contiguous slice [start, start+len). Throws
// std::invalid_argument("invalid group bounds") on an out-of-range slice.
GroupStats group_stats(const OrderedDataset& ds, int start, int len, double c);

// Same statistics from raw accumulators; used for non-contiguous blocks.
GroupStats group_stats_from_sums(int count, double sum, double sum_sq, int after, double c);

// log of theta * Gamma(1+size) * Gamma(theta+after) / Gamma(1+theta+size+after),
// the prior weight a group of `size` observations earns when `after`
// observations are allocated to later groups.
double log_weight_term(int size, int after, double theta);

// log marginal likelihood of one group under the conjugate normal model:
// Gamma(a+size/2) b^a sqrt(c) / ((b + shrunk_ss/2)^(a+size/2) sqrt(c+size) Gamma(a)).
double log_marginal_term(const GroupStats& stats, const Hyperparams& h);

// Unnormalized log probability of a composition: the sum over its groups of
// weight and marginal terms. Throws std::invalid_argument on comp.n != ds.n
// ("composition/dataset length mismatch").
double log_unnorm_prob(const Composition& comp, const OrderedDataset& ds, const Hyperparams& h);

}  // namespace classify
