#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dagsbm/likelihood.hpp"
#include "dagsbm/sampler.hpp"
#include "dagsbm/util.hpp"

namespace dagsbm {

struct LogNormalParams {
  double location = 0.0;
  double scale = 1.0;
  double log_density(double x) const;
  double sample(Rng& rng) const;
};

struct BetaParams {
  double shape1 = 1.0;
  double shape2 = 1.0;
  double log_density(double x) const;
  double sample(Rng& rng) const;
};

struct TruncNegBinParams {
  double a = 1.0;
  double b = 0.5;
  double log_pmf(int k) const;  // support k >= 1
  int sample(Rng& rng) const;
};

// Proper densities for the parameters of whichever regime the chain is not
// currently in: eta_1 = (gamma, k) while in the infinite regime, eta_0 =
// (alpha, theta) while in the finite one.
struct PseudoPrior {
  LogNormalParams gamma_pseudo;
  TruncNegBinParams k_pseudo{1.0, 0.01};
  BetaParams alpha_pseudo;
  GammaPrior theta_plus_alpha_pseudo{1.0, 0.01};

  double log_density_eta1(double gamma, int k) const;
  double log_density_eta0(double alpha, double theta) const;
  std::pair<double, int> sample_eta1(Rng& rng) const;
  std::pair<double, double> sample_eta0(Rng& rng) const;
};

struct PseudoFit {
  PseudoPrior pseudo;
  std::vector<std::string> warnings;  // one entry per moment-matching fallback
};

// Moment-matched pseudopriors from pilot-run posterior samples. Degenerate
// pilots (zero variance, invalid moments) fall back to the prior-shaped
// member of the same family, with a warning.
PseudoFit fit_pseudopriors(std::span<const double> gamma_samples, std::span<const int> k_samples,
                           std::span<const double> alpha_samples,
                           std::span<const double> theta_samples, const PriorConfig& priors);

// The normalized two-point distribution (P(r=0), P(r=1)) of the regime
// Gibbs step, computed from the current values of both eta vectors.
std::pair<double, double> regime_step_probabilities(const ChainState& s, const PseudoPrior& pseudo,
                                                    const PriorConfig& priors);

// Draws the off-regime eta from its pseudoprior, then samples the regime
// indicator. Touches nothing else in the state.
void regime_gibbs_step(ChainState& s, const PseudoPrior& pseudo, const PriorConfig& priors,
                       Rng& rng);

struct BayesFactor {
  double value = 1.0;
  bool boundary = false;  // posterior proportion hit 0 or 1
  std::string note;
};

// B_10 = posterior odds / prior odds for the finite regime.
BayesFactor bayes_factor(double posterior_r1, double prior_r1);

}  // namespace dagsbm
