#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "classify/composition.hpp"
#include "classify/dataset.hpp"
#include "classify/hyperparams.hpp"
#include "classify/model.hpp"
#include "classify/rng.hpp"

namespace classify {

enum class Scheme { M1, M2 };

struct McmcConfig {
  Scheme scheme = Scheme::M1;
  std::int64_t iterations = 10000;  // post burn-in sweeps that are recorded
  std::int64_t burn_in = 1000;
  std::uint64_t seed = 18;
  double split_prob = 0.5;   // q, probability of proposing a split away from the boundaries
  bool shuffle_enabled = true;  // M1 only
  std::optional<Composition> initial_state;  // default: one group of n
  bool debug_checks = false;  // recompute the cached log prob every 1000 steps
};

struct ChainState {
  Composition comp;
  double log_prob = 0.0;  // cached log_unnorm_prob(comp)
};

struct MoveStats {
  std::int64_t proposed = 0;
  std::int64_t accepted = 0;
  double rate() const { return proposed == 0 ? 0.0 : static_cast<double>(accepted) / proposed; }
};

struct McmcSummary {
  int n = 0;
  Scheme scheme = Scheme::M1;
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;
  std::int64_t burn_in = 0;
  std::vector<double> k_estimates;                  // k_estimates[k-1] = p_hat(k), k = 1..n
  std::map<Composition, std::int64_t> visit_counts;  // post burn-in visits per composition
  Composition map_estimate;                         // most visited composition
  double map_frequency = 0.0;
  MoveStats split, merge, shuffle;  // M1 move accounting
  MoveStats up, down;               // M2 move accounting

  double k_prob(int k) const { return k_estimates[k - 1]; }
  double frequency(const Composition& comp) const;
  std::vector<std::pair<Composition, double>> top_frequencies(std::size_t n_top) const;
};

// --- proposal and acceptance machinery (pure; exposed for property tests) ---

// Probability that a split (resp. merge) is the selected move type in a state
// with k groups out of n observations: the only legal move at k = 1 or k = n
// is selected with probability 1, otherwise splits are selected with
// probability q.
double split_select_prob(int k, int n, double q);
double merge_select_prob(int k, int n, double q);

int splittable_group_count(const Composition& comp);

struct SplitProposal {
  Composition to;
  int group = 0;             // index of the group that was split
  int left_size = 0;         // size of the left piece
  double log_forward = 0.0;  // log 1/(n_g * (n_s - 1)), the draw probability
};

struct MergeProposal {
  Composition to;
  int pair = 0;              // index j of the merged adjacent pair (j, j+1)
  double log_forward = 0.0;  // log 1/(k-1)
};

// Uniformly picks a group of size > 1 and an interior split point. Throws
// std::logic_error("no splittable group") when k = n.
SplitProposal propose_split(const Composition& comp, Rng& rng);

// Uniformly picks an adjacent pair to merge. Throws
// std::logic_error("nothing to merge") when k = 1.
MergeProposal propose_merge(const Composition& comp, Rng& rng);

// Acceptance probability of a split: min{1, r} with
//   r = p(to)/p(from) * [merge_select(k+1) / (k * split_select(k) / (n_g (n_s - 1)))].
// The selection probabilities reduce to the usual (1-q)/q factor away from
// the boundaries and carry the correction at k = 1 and k + 1 = n.
double accept_split(const Composition& from, const SplitProposal& prop, double log_prob_from,
                    double log_prob_to, double q);

// Acceptance probability of the reverse move; n_g is re-counted in the
// proposed merged state (always >= 1 because the merged group has size >= 2).
double accept_merge(const Composition& from, const MergeProposal& prop, double log_prob_from,
                    double log_prob_to, double q);

// Shuffle: re-divide one adjacent pair keeping k fixed. The pair total is
// conserved, so the proposal is symmetric and the acceptance probability is
// min{1, p(to)/p(from)}.
struct ShuffleProposal {
  Composition to;
  int pair = 0;
  int left_size = 0;
};
ShuffleProposal propose_shuffle(const Composition& comp, Rng& rng);  // requires k >= 2
double accept_shuffle(double log_prob_from, double log_prob_to);

// Total probability that one uniform split of `from` produces `to`; 0 when
// unreachable. Throws std::invalid_argument("not a one-step split") unless
// to.k = from.k + 1 and to.n = from.n.
double split_kernel_prob(const Composition& from, const Composition& to);

// Exact conditional distribution of the two-group state: the n-1 two-part
// compositions with their normalized model probabilities. Cached by the M2
// chain, which samples its downward chain anchor from it.
class TwoPartConditional {
 public:
  TwoPartConditional(const OrderedDataset& ds, const Hyperparams& h);

  int n() const { return n_; }
  double prob(const Composition& comp) const;   // comp must have k = 2
  std::pair<Composition, double> sample(Rng& rng) const;

 private:
  int n_ = 0;
  std::vector<double> probs_;  // probs_[i] = p((i+1, n-i-1)), i = 0..n-2
  std::vector<double> cdf_;
};

// One chain over compositions targeting the classification model. step()
// advances one iteration of the configured scheme.
class CompositionChain {
 public:
  CompositionChain(const OrderedDataset& ds, const Hyperparams& h, const McmcConfig& config);

  void step();
  const ChainState& state() const { return state_; }
  McmcSummary& summary() { return summary_; }

 private:
  void step_m1();
  void step_m2();
  double log_prob(const Composition& comp) const;
  void set_state(Composition comp, double log_prob);

  const OrderedDataset& ds_;
  Hyperparams h_;
  McmcConfig config_;
  Rng rng_;
  ChainState state_;
  McmcSummary summary_;
  std::optional<TwoPartConditional> two_part_;  // built lazily for M2
  std::int64_t steps_taken_ = 0;
};

// Runs burn-in then `iterations` recorded sweeps and accumulates the summary.
// Throws std::invalid_argument("no samples collected") when iterations < 1.
// Deterministic: identical (data, hyperparams, config) give an identical
// summary.
McmcSummary run_chain(const OrderedDataset& ds, const Hyperparams& h, const McmcConfig& config);

}  // namespace classify
