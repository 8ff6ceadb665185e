#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "classify/composition.hpp"
#include "classify/dataset.hpp"
#include "classify/errors.hpp"
#include "classify/hyperparams.hpp"

namespace classify {

inline constexpr int kDefaultCompositionCap = 25;

// Number of compositions of n, i.e. 2^(n-1).
std::uint64_t composition_count(int n);

// Throws InfeasibleError ("exact enumeration infeasible; use MCMC") when n
// is out of range for enumeration under the given cap.
void check_composition_cap(int n, int cap);

// Calls fn(mask, composition) once per composition of n, in mask order
// (see composition_from_mask).
template <typename Fn>
void for_each_composition(int n, Fn&& fn, int cap = kDefaultCompositionCap) {
  check_composition_cap(n, cap);
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  Composition comp;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    comp = composition_from_mask(mask, n);
    fn(mask, comp);
  }
}

// The fully normalized posterior over every composition of the dataset.
// Entries are stored compactly as (mask, probability) in enumeration order;
// composition(i) decodes entry i on demand.
struct ExactPosterior {
  struct Entry {
    std::uint64_t mask = 0;
    double prob = 0.0;
  };

  int n = 0;
  std::vector<Entry> entries;       // one per composition, mask order
  std::vector<double> k_marginal;   // k_marginal[k-1] = p*(k), k = 1..n
  double log_norm_const = 0.0;      // log of the sum of unnormalized masses

  Composition composition(std::size_t i) const { return composition_from_mask(entries[i].mask, n); }
  double k_prob(int k) const { return k_marginal[k - 1]; }
};

// Enumerates all compositions, evaluates the model on each and normalizes.
ExactPosterior exact_posterior(const OrderedDataset& ds, const Hyperparams& h,
                               int cap = kDefaultCompositionCap);

// The n_top most probable compositions, descending; ties broken by
// enumeration order.
std::vector<std::pair<Composition, double>> top_n(const ExactPosterior& post, std::size_t n_top);

}  // namespace classify
