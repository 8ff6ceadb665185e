#include "classify/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "classify/errors.hpp"
#include "classify/logsumexp.hpp"

namespace classify {

double McmcSummary::frequency(const Composition& comp) const {
  const auto it = visit_counts.find(comp);
  if (it == visit_counts.end() || iterations == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(iterations);
}

std::vector<std::pair<Composition, double>> McmcSummary::top_frequencies(std::size_t n_top) const {
  std::vector<std::pair<Composition, std::int64_t>> items(visit_counts.begin(),
                                                          visit_counts.end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::pair<Composition, double>> result;
  result.reserve(std::min(n_top, items.size()));
  for (std::size_t i = 0; i < items.size() && i < n_top; ++i) {
    result.emplace_back(items[i].first,
                        static_cast<double>(items[i].second) / static_cast<double>(iterations));
  }
  return result;
}

double split_select_prob(int k, int n, double q) {
  if (k >= n) return 0.0;
  if (k == 1) return 1.0;
  return q;
}

double merge_select_prob(int k, int n, double q) {
  if (k <= 1) return 0.0;
  if (k == n) return 1.0;
  return 1.0 - q;
}

int splittable_group_count(const Composition& comp) {
  int count = 0;
  for (int p : comp.parts()) count += (p > 1);
  return count;
}

namespace {

Composition split_at(const Composition& comp, int group, int left_size) {
  std::vector<int> parts;
  parts.reserve(comp.k() + 1);
  for (int j = 0; j < comp.k(); ++j) {
    if (j == group) {
      parts.push_back(left_size);
      parts.push_back(comp.part(j) - left_size);
    } else {
      parts.push_back(comp.part(j));
    }
  }
  return Composition(std::move(parts));
}

Composition merge_at(const Composition& comp, int pair) {
  std::vector<int> parts;
  parts.reserve(comp.k() - 1);
  for (int j = 0; j < comp.k(); ++j) {
    if (j == pair) {
      parts.push_back(comp.part(j) + comp.part(j + 1));
      ++j;
    } else {
      parts.push_back(comp.part(j));
    }
  }
  return Composition(std::move(parts));
}

}  // namespace

SplitProposal propose_split(const Composition& comp, Rng& rng) {
  const int n_splittable = splittable_group_count(comp);
  if (n_splittable == 0) throw std::logic_error("no splittable group");
  int pick = rng.uniform_int(n_splittable);
  int group = -1;
  for (int j = 0; j < comp.k(); ++j) {
    if (comp.part(j) > 1 && pick-- == 0) {
      group = j;
      break;
    }
  }
  const int size = comp.part(group);
  const int left_size = 1 + rng.uniform_int(size - 1);

  SplitProposal prop;
  prop.to = split_at(comp, group, left_size);
  prop.group = group;
  prop.left_size = left_size;
  prop.log_forward = -std::log(static_cast<double>(n_splittable) * (size - 1));
  return prop;
}

MergeProposal propose_merge(const Composition& comp, Rng& rng) {
  if (comp.k() < 2) throw std::logic_error("nothing to merge");
  MergeProposal prop;
  prop.pair = rng.uniform_int(comp.k() - 1);
  prop.to = merge_at(comp, prop.pair);
  prop.log_forward = -std::log(static_cast<double>(comp.k() - 1));
  return prop;
}

double accept_split(const Composition& from, const SplitProposal& prop, double log_prob_from,
                    double log_prob_to, double q) {
  const int n = from.n();
  const int k = from.k();
  // forward: select split, pick the group and the cut point
  const double log_forward = std::log(split_select_prob(k, n, q)) + prop.log_forward;
  // reverse: select merge in the (k+1)-part state, pick the right one of its
  // k adjacent pairs
  const double log_reverse =
      std::log(merge_select_prob(k + 1, n, q)) - std::log(static_cast<double>(k));
  const double log_ratio = (log_prob_to - log_prob_from) + log_reverse - log_forward;
  return std::min(1.0, std::exp(log_ratio));
}

double accept_merge(const Composition& from, const MergeProposal& prop, double log_prob_from,
                    double log_prob_to, double q) {
  const int n = from.n();
  const int k = from.k();
  const double log_forward =
      std::log(merge_select_prob(k, n, q)) + prop.log_forward;
  const int merged_size = from.part(prop.pair) + from.part(prop.pair + 1);
  const int n_splittable_after = splittable_group_count(prop.to);
  const double log_reverse =
      std::log(split_select_prob(k - 1, n, q)) -
      std::log(static_cast<double>(n_splittable_after) * (merged_size - 1));
  const double log_ratio = (log_prob_to - log_prob_from) + log_reverse - log_forward;
  return std::min(1.0, std::exp(log_ratio));
}

ShuffleProposal propose_shuffle(const Composition& comp, Rng& rng) {
  if (comp.k() < 2) throw std::logic_error("nothing to shuffle");
  ShuffleProposal prop;
  prop.pair = rng.uniform_int(comp.k() - 1);
  const int total = comp.part(prop.pair) + comp.part(prop.pair + 1);
  prop.left_size = 1 + rng.uniform_int(total - 1);

  std::vector<int> parts = comp.parts();
  parts[prop.pair] = prop.left_size;
  parts[prop.pair + 1] = total - prop.left_size;
  prop.to = Composition(std::move(parts));
  return prop;
}

double accept_shuffle(double log_prob_from, double log_prob_to) {
  return std::min(1.0, std::exp(log_prob_to - log_prob_from));
}

double split_kernel_prob(const Composition& from, const Composition& to) {
  if (to.k() != from.k() + 1 || to.n() != from.n()) {
    throw std::invalid_argument("not a one-step split");
  }
  const int n_splittable = splittable_group_count(from);
  double prob = 0.0;
  // Splitting group g of `from` at any cut point yields a distinct result, so
  // at most one adjacent pair of `to` merges back into `from`; scanning all
  // pairs keeps the kernel honest about that.
  for (int j = 0; j + 1 < to.k(); ++j) {
    if (merge_at(to, j) == from) {
      const int merged = to.part(j) + to.part(j + 1);
      prob += 1.0 / (static_cast<double>(n_splittable) * (merged - 1));
    }
  }
  return prob;
}

TwoPartConditional::TwoPartConditional(const OrderedDataset& ds, const Hyperparams& h)
    : n_(ds.size()) {
  if (n_ < 2) throw std::invalid_argument("two-part conditional requires n >= 2");
  std::vector<double> log_mass(n_ - 1);
  for (int left = 1; left < n_; ++left) {
    log_mass[left - 1] = log_unnorm_prob(Composition({left, n_ - left}), ds, h);
  }
  const double norm = log_sum_exp(log_mass);
  probs_.resize(n_ - 1);
  cdf_.resize(n_ - 1);
  double acc = 0.0;
  for (int i = 0; i < n_ - 1; ++i) {
    probs_[i] = std::exp(log_mass[i] - norm);
    acc += probs_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

double TwoPartConditional::prob(const Composition& comp) const {
  if (comp.k() != 2 || comp.n() != n_) {
    throw std::invalid_argument("two-part conditional expects a two-part composition");
  }
  return probs_[comp.part(0) - 1];
}

std::pair<Composition, double> TwoPartConditional::sample(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  const int i = static_cast<int>(std::min<std::ptrdiff_t>(it - cdf_.begin(), n_ - 2));
  return {Composition({i + 1, n_ - i - 1}), probs_[i]};
}

CompositionChain::CompositionChain(const OrderedDataset& ds, const Hyperparams& h,
                                   const McmcConfig& config)
    : ds_(ds), h_(h), config_(config), rng_(config.seed) {
  if (config_.split_prob <= 0.0 || config_.split_prob >= 1.0) {
    throw std::invalid_argument("split probability q must be in (0, 1)");
  }
  Composition start =
      config_.initial_state ? *config_.initial_state : Composition::single_group(ds.size());
  if (start.n() != ds.size()) throw std::invalid_argument("composition/dataset length mismatch");
  const double lp = log_prob(start);
  state_ = {std::move(start), lp};
  summary_.n = ds.size();
  summary_.scheme = config_.scheme;
  summary_.seed = config_.seed;
  summary_.iterations = config_.iterations;
  summary_.burn_in = config_.burn_in;
  if (config_.scheme == Scheme::M2 && ds.size() >= 2) two_part_.emplace(ds_, h_);
}

double CompositionChain::log_prob(const Composition& comp) const {
  return log_unnorm_prob(comp, ds_, h_);
}

void CompositionChain::set_state(Composition comp, double log_prob) {
  state_.comp = std::move(comp);
  state_.log_prob = log_prob;
}

void CompositionChain::step() {
  if (ds_.size() == 1) {
    ++steps_taken_;
    return;  // (1) is the only composition; both moves are illegal
  }
  if (config_.scheme == Scheme::M1) {
    step_m1();
  } else {
    step_m2();
  }
  ++steps_taken_;
  if (config_.debug_checks && steps_taken_ % 1000 == 0) {
    const double fresh = log_prob(state_.comp);
    if (std::abs(fresh - state_.log_prob) > 1e-9 * std::max(1.0, std::abs(fresh))) {
      throw InternalError("cached log probability diverged from recomputation");
    }
  }
}

void CompositionChain::step_m1() {
  const int k = state_.comp.k();
  const int n = state_.comp.n();
  const double q = config_.split_prob;

  if (rng_.uniform() < split_select_prob(k, n, q)) {
    const SplitProposal prop = propose_split(state_.comp, rng_);
    const double lp_to = log_prob(prop.to);
    const double alpha = accept_split(state_.comp, prop, state_.log_prob, lp_to, q);
    ++summary_.split.proposed;
    if (rng_.uniform() < alpha) {
      ++summary_.split.accepted;
      set_state(prop.to, lp_to);
    }
  } else {
    const MergeProposal prop = propose_merge(state_.comp, rng_);
    const double lp_to = log_prob(prop.to);
    const double alpha = accept_merge(state_.comp, prop, state_.log_prob, lp_to, q);
    ++summary_.merge.proposed;
    if (rng_.uniform() < alpha) {
      ++summary_.merge.accepted;
      set_state(prop.to, lp_to);
    }
  }

  if (config_.shuffle_enabled && state_.comp.k() >= 2) {
    const ShuffleProposal prop = propose_shuffle(state_.comp, rng_);
    const double lp_to = log_prob(prop.to);
    ++summary_.shuffle.proposed;
    if (rng_.uniform() < accept_shuffle(state_.log_prob, lp_to)) {
      ++summary_.shuffle.accepted;
      set_state(prop.to, lp_to);
    }
  }
}

// One iteration of the chained-proposal scheme. The latent states other than
// the current one are refreshed from their conditional law: the two-part
// state from its exact conditional, every other one by chaining uniform
// splits. Moving k up or down then only exchanges which chain slot is "real",
// and the acceptance ratio involves the density of the current state given
// the freshly drawn neighbor below, and of the proposed state under its own
// slot's law.
void CompositionChain::step_m2() {
  const int k = state_.comp.k();
  const int n = state_.comp.n();
  const double q = config_.split_prob;

  // upward proposal from the split kernel
  std::optional<SplitProposal> up;
  if (k < n) up = propose_split(state_.comp, rng_);

  // downward chain: two-part anchor, then chained splits up to k-1 parts
  std::optional<Composition> down;          // proposed state with k-1 parts
  double down_slot_density = 1.0;           // density of `down` under its slot's law
  double current_given_below = 1.0;         // density of the current state given `down`
  if (k >= 2) {
    if (k == 2) {
      down = Composition::single_group(n);
      down_slot_density = 1.0;  // the one-group state is deterministic
      // current state's slot law differs by move direction; handled below
    } else if (k == 3) {
      auto [anchor, anchor_prob] = two_part_->sample(rng_);
      down = std::move(anchor);
      down_slot_density = anchor_prob;
      current_given_below = split_kernel_prob(*down, state_.comp);
    } else {
      auto [chain, chain_prob] = two_part_->sample(rng_);
      double last_step_density = chain_prob;
      for (int j = 3; j <= k - 1; ++j) {
        SplitProposal step = propose_split(chain, rng_);
        last_step_density = split_kernel_prob(chain, step.to);
        chain = std::move(step.to);
      }
      down = std::move(chain);
      down_slot_density = last_step_density;
      current_given_below = split_kernel_prob(*down, state_.comp);
    }
  }

  if (rng_.uniform() < split_select_prob(k, n, q)) {
    ++summary_.up.proposed;
    double current_slot_density;  // density of the current state once it joins the downward chain
    if (k == 1) {
      current_slot_density = 1.0;
    } else if (k == 2) {
      current_slot_density = two_part_->prob(state_.comp);
    } else {
      current_slot_density = current_given_below;
      if (current_slot_density == 0.0) return;  // current state unreachable from the drawn chain
    }
    const double lp_to = log_prob(up->to);
    const double kernel_up = std::exp(up->log_forward);
    const double ratio = std::exp(lp_to - state_.log_prob) * current_slot_density *
                         merge_select_prob(k + 1, n, q) /
                         (kernel_up * split_select_prob(k, n, q));
    if (rng_.uniform() < std::min(1.0, ratio)) {
      ++summary_.up.accepted;
      set_state(up->to, lp_to);
    }
  } else {
    ++summary_.down.proposed;
    const double kernel_to_current = split_kernel_prob(*down, state_.comp);
    if (kernel_to_current == 0.0) return;  // reverse route impossible; reject outright
    const double lp_to = log_prob(*down);
    const double ratio = std::exp(lp_to - state_.log_prob) * kernel_to_current *
                         split_select_prob(k - 1, n, q) /
                         (down_slot_density * merge_select_prob(k, n, q));
    if (rng_.uniform() < std::min(1.0, ratio)) {
      ++summary_.down.accepted;
      set_state(std::move(*down), lp_to);
    }
  }
}

McmcSummary run_chain(const OrderedDataset& ds, const Hyperparams& h, const McmcConfig& config) {
  if (config.iterations < 1) throw std::invalid_argument("no samples collected");
  if (config.burn_in < 0) throw std::invalid_argument("burn-in must be >= 0");

  McmcConfig effective = config;
  if (!effective.debug_checks) {
    const char* debug_env = std::getenv("CLASSIFY_DEBUG");
    effective.debug_checks = debug_env != nullptr && debug_env[0] == '1';
  }

  CompositionChain chain(ds, h, effective);
  for (std::int64_t i = 0; i < effective.burn_in; ++i) chain.step();

  McmcSummary& summary = chain.summary();
  summary.k_estimates.assign(ds.size(), 0.0);
  std::vector<std::int64_t> k_counts(ds.size(), 0);
  for (std::int64_t i = 0; i < effective.iterations; ++i) {
    chain.step();
    const Composition& comp = chain.state().comp;
    ++k_counts[comp.k() - 1];
    ++summary.visit_counts[comp];
  }

  for (int k = 1; k <= ds.size(); ++k) {
    summary.k_estimates[k - 1] =
        static_cast<double>(k_counts[k - 1]) / static_cast<double>(effective.iterations);
  }
  std::int64_t best = 0;
  for (const auto& [comp, count] : summary.visit_counts) {
    if (count > best) {  // ties keep the earlier (lexicographically smaller) composition
      best = count;
      summary.map_estimate = comp;
    }
  }
  summary.map_frequency =
      static_cast<double>(best) / static_cast<double>(effective.iterations);
  return summary;
}

}  // namespace classify
