#pragma once

#include <vector>

#include "dagsbm/state.hpp"
#include "dagsbm/util.hpp"

namespace dagsbm {

enum class Regime { infinite = 0, finite = 1 };

// Pitman-Yor hyperparameters. Infinite regime: 0 <= alpha < 1, theta >
// -alpha. Finite regime: gamma > 0 and integer k >= 1, standing for
// alpha = -gamma, theta = k * gamma.
struct PyParams {
  Regime regime = Regime::infinite;
  double alpha = 0.0;
  double theta = 1.0;
  double gamma = 1.0;
  int k = 1;

  static PyParams infinite_regime(double alpha, double theta);
  static PyParams finite_regime(double gamma, int k);

  double effective_alpha() const { return regime == Regime::finite ? -gamma : alpha; }
  double effective_theta() const { return regime == Regime::finite ? k * gamma : theta; }
  bool valid() const;
};

// Shape/rate parameters of the Gamma(a, b) prior placed on each block rate.
struct GammaHyper {
  double a = 1.0;
  double b = 1.0;
};

struct GammaPrior {
  double shape = 1.0;
  double rate = 1.0;

  double log_density(double x) const;
  double mean() const { return shape / rate; }
};

// Every prior the model uses, with the defaults from the applications
// section of the method this implements.
struct PriorConfig {
  GammaPrior a_prior{1.0, 0.01};
  GammaPrior b_prior{1.0, 0.01};
  GammaPrior xi_prior{1.0, 1.0};
  GammaPrior theta_plus_alpha_prior{1.0, 0.01};
  GammaPrior gamma_prior{1.0, 0.01};
  double k_a = 1.0;   // truncated negative binomial shape
  double k_b = 0.01;  // truncated negative binomial probability, in (0,1)
  double prior_r1 = 0.2;

  void validate() const;
};

// log[x (x+1) ... (x+n-1)]; n = 0 gives 0. Requires x > 0.
double log_rising_factorial(double x, long long n);

// Log exchangeable partition probability of the given block sizes. Finite
// regime returns -inf when the number of blocks exceeds k.
double log_eppf(const std::vector<int>& sizes, const PyParams& py);

// K+1 predictive weights of the Chinese restaurant process: existing groups
// first, the new-group weight last. Sums to 1.
std::vector<double> crp_weights(const std::vector<int>& sizes, const PyParams& py);

// Collapsed data log-likelihood with the block rates integrated out under
// Gamma(a, b). Returns -inf when ord is not topological.
double log_lik_collapsed(const Dag& g, const OrderingState& ord, const AllocationState& alloc,
                         const DegreeCorrections& xi, const GammaHyper& hyper);

// The block-count part of the collapsed log-likelihood:
// K^2 (a log b - lgamma(a)) + sum_ij [lgamma(E+a) - (E+a) log(M+b)].
// This is the only piece that depends on the allocation.
double log_lik_collapsed_counts(const BlockCounts& counts, const GammaHyper& hyper);

// Poisson log-likelihood of the data given an explicit block-rate matrix C.
// Returns -inf when ord is not topological.
double log_lik_full(const Dag& g, const OrderingState& ord, const AllocationState& alloc,
                    const DegreeCorrections& xi, const Matrix& c);

// Zero-truncated negative binomial log-mass at k >= 1.
double log_prior_k(int k, double a_k, double b_k);

// Gamma(shape, rate) log-density; -inf for x <= 0.
double gamma_log_density(double x, double shape, double rate);

// Log-density of the Uniform[0,1) prior for alpha.
double uniform01_log_density(double x);

}  // namespace dagsbm
