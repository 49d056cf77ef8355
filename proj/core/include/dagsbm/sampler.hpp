#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dagsbm/likelihood.hpp"
#include "dagsbm/state.hpp"

namespace dagsbm {

struct PseudoPrior;  // selection.hpp

struct TuningConfig {
  int leap_L = 5;                 // clamped to n-1 per chain
  std::vector<double> s_xi;       // per-node proposal sd; empty = s_xi_default for all
  double s_xi_default = 0.5;
  double s_a = 0.5;
  double s_b = 0.5;
  double s_alpha = 0.1;
  double s_theta = 0.5;
  double s_gamma = 0.5;
  double p_k = 0.5;               // geometric step probability for k proposals
  long long iterations = 20000;   // post burn-in sweeps
  long long burn_in = 2000;
  long long thinning = 10;        // record every thinning-th post burn-in sweep
  std::uint64_t seed = 1;
  int split_merge_per_sweep = 1;
  int restricted_gibbs_scans = 3;
  bool fix_xi = false;            // xi pinned at 1: the non-degree-corrected model
  bool prior_only = false;        // validation switch: data likelihood treated as constant
  long long refresh_every = 1000; // from-scratch count rebuild cadence

  void validate() const;
};

struct TraceRecord {
  long long iteration = 0;
  int k_groups = 0;
  double a = 0.0, b = 0.0;
  Regime regime = Regime::infinite;
  double alpha = 0.0, theta = 0.0;  // NaN when never sampled in this run
  double gamma = 0.0;
  int k = 0;  // 0 when never sampled in this run
  double log_lik = 0.0;
  std::vector<int> z;
  std::vector<int> sigma;
  std::vector<double> xi;
};

enum class ChainMode { infinite, finite, select };

using TraceSink = std::function<void(const TraceRecord&)>;

// One chain's full mutable state.
struct ChainState {
  const Dag* dag = nullptr;
  OrderingState ord;
  AllocationState alloc;
  DegreeCorrections xi;
  BlockCounts counts;
  double a = 1.0, b = 1.0;
  Regime regime = Regime::infinite;
  double alpha = 0.5, theta = 1.0;  // eta_0
  double gamma = 1.0;               // eta_1
  int k = 2;

  PyParams py() const;
  GammaHyper hyper() const { return {a, b}; }
  void rebuild_counts();
  // Collapsed log-likelihood of the data at the current state, all terms.
  double collapsed_log_lik() const;
};

ChainState init_chain(const Dag& g, const PriorConfig& priors, const TuningConfig& tuning,
                      ChainMode mode, Rng& rng);

// Step 1: incremental Gibbs over every position in order.
void gibbs_sweep_allocations(ChainState& s, const TuningConfig& tuning, Rng& rng);

// The full conditional of the node at `position`, as the sampler computes
// it: detached allocation plus log-weights for each existing label and (last
// entry) a new group. Does not mutate the chain.
struct AllocationConditional {
  AllocationState detached;
  std::vector<double> log_weights;
};
AllocationConditional allocation_conditional(const ChainState& s, int position,
                                             bool prior_only = false);

// Step 2: one restricted-Gibbs split-merge proposal; returns acceptance.
bool split_merge_move(ChainState& s, const TuningConfig& tuning, Rng& rng);

// Steps 3a-3c as a pure function: move node p by m positions (shift modulo
// n), displaced nodes sliding one slot. Throws on m == 0 or |m| > L.
OrderingState leap_shift_propose(const OrderingState& ord, int node, int m, int leap_L);

// Step 3: one Leap-and-Shift pass over all nodes.
void update_ordering(ChainState& s, const TuningConfig& tuning, Rng& rng);

// Step 4: per-node Gaussian random walk on xi.
void update_degree_corrections(ChainState& s, const PriorConfig& priors, const TuningConfig& tuning,
                               Rng& rng);

// Steps 5-6: Gaussian random walk on a or b.
enum class HyperParam { a, b };
void update_gamma_hyper(ChainState& s, HyperParam which, const PriorConfig& priors,
                        const TuningConfig& tuning, Rng& rng);

// Steps 7-8: regime-appropriate updates of the Pitman-Yor parameters.
void update_py_params(ChainState& s, const PriorConfig& priors, const TuningConfig& tuning,
                      Rng& rng);

// Steps 1-8 in the fixed sweep order (no selection step).
void sweep(ChainState& s, const PriorConfig& priors, const TuningConfig& tuning, Rng& rng);

// Full driver: init, burn-in, thinned recording. `pseudo` is required in
// select mode and ignored otherwise. Deterministic given tuning.seed.
void run_chain(const Dag& g, const PriorConfig& priors, const TuningConfig& tuning, ChainMode mode,
               const TraceSink& sink, const PseudoPrior* pseudo = nullptr);

}  // namespace dagsbm
