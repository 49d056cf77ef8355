#include "dagsbm/selection.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dagsbm {

namespace {

constexpr double half_log_two_pi = 0.9189385332046727;

double digamma(double x) {
  double r = 0.0;
  while (x < 6.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  return r + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

double trigamma(double x) {
  double r = 0.0;
  while (x < 6.0) {
    r += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  return r + inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 / 42.0))));
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  bool ok = false;  // finite positive variance
};

template <typename T>
Moments moments(std::span<const T> xs) {
  Moments m;
  if (xs.empty()) return m;
  double s = 0.0;
  for (T x : xs) s += static_cast<double>(x);
  m.mean = s / xs.size();
  double v = 0.0;
  for (T x : xs) v += (x - m.mean) * (x - m.mean);
  m.var = v / xs.size();
  m.ok = std::isfinite(m.mean) && std::isfinite(m.var) && m.var > 1e-12;
  return m;
}

}  // namespace

double LogNormalParams::log_density(double x) const {
  if (!(x > 0.0)) return neg_inf;
  const double z = (std::log(x) - location) / scale;
  return -std::log(x) - std::log(scale) - half_log_two_pi - 0.5 * z * z;
}

double LogNormalParams::sample(Rng& rng) const {
  std::normal_distribution<double> normal(location, scale);
  return std::exp(normal(rng));
}

double BetaParams::log_density(double x) const {
  if (!(x > 0.0) || !(x < 1.0)) return neg_inf;
  return std::lgamma(shape1 + shape2) - std::lgamma(shape1) - std::lgamma(shape2) +
         (shape1 - 1.0) * std::log(x) + (shape2 - 1.0) * std::log1p(-x);
}

double BetaParams::sample(Rng& rng) const {
  std::gamma_distribution<double> g1(shape1, 1.0), g2(shape2, 1.0);
  const double a = g1(rng), b = g2(rng);
  return a / (a + b);
}

double TruncNegBinParams::log_pmf(int k) const { return log_prior_k(k, a, b); }

int TruncNegBinParams::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double acc = 0.0;
  double p = std::exp(log_pmf(1));
  for (int k = 1; k < 1000000; ++k) {
    acc += p;
    if (u <= acc) return k;
    p *= (k + a) / (k + 1.0) * (1.0 - b);
  }
  throw NumericError("truncated negative binomial sampling failed to terminate");
}

double PseudoPrior::log_density_eta1(double gamma, int k) const {
  if (k < 1) return neg_inf;
  return gamma_pseudo.log_density(gamma) + k_pseudo.log_pmf(k);
}

double PseudoPrior::log_density_eta0(double alpha, double theta) const {
  const double psi = theta + alpha;
  if (!(psi > 0.0)) return neg_inf;
  return alpha_pseudo.log_density(alpha) + theta_plus_alpha_pseudo.log_density(psi);
}

std::pair<double, int> PseudoPrior::sample_eta1(Rng& rng) const {
  return {gamma_pseudo.sample(rng), k_pseudo.sample(rng)};
}

std::pair<double, double> PseudoPrior::sample_eta0(Rng& rng) const {
  const double alpha = alpha_pseudo.sample(rng);
  std::gamma_distribution<double> g(theta_plus_alpha_pseudo.shape,
                                    1.0 / theta_plus_alpha_pseudo.rate);
  const double psi = g(rng);
  return {alpha, psi - alpha};
}

PseudoFit fit_pseudopriors(std::span<const double> gamma_samples, std::span<const int> k_samples,
                           std::span<const double> alpha_samples,
                           std::span<const double> theta_samples, const PriorConfig& priors) {
  if (gamma_samples.empty() || k_samples.empty() || alpha_samples.empty() ||
      theta_samples.empty() || alpha_samples.size() != theta_samples.size())
    throw std::invalid_argument("fit_pseudopriors: pilot traces must be nonempty");
  PseudoFit fit;

  // gamma: lognormal matched to the moments of log(gamma).
  {
    std::vector<double> logs(gamma_samples.begin(), gamma_samples.end());
    for (double& x : logs) x = std::log(x);
    Moments m = moments<double>(logs);
    if (m.ok) {
      fit.pseudo.gamma_pseudo = {m.mean, std::sqrt(m.var)};
    } else {
      fit.pseudo.gamma_pseudo = {digamma(priors.gamma_prior.shape) - std::log(priors.gamma_prior.rate),
                                 std::sqrt(trigamma(priors.gamma_prior.shape))};
      fit.warnings.push_back("gamma pilot degenerate; pseudoprior falls back to the prior shape");
    }
  }

  // k: negative binomial method of moments, clipped to the valid range.
  {
    Moments m = moments<int>(k_samples);
    bool fitted = false;
    if (m.ok && m.var > m.mean && m.mean > 0.0) {
      const double b = std::clamp(m.mean / m.var, 1e-8, 1.0 - 1e-8);
      const double a = m.mean * m.mean / (m.var - m.mean);
      if (a > 0.0 && std::isfinite(a)) {
        fit.pseudo.k_pseudo = {a, b};
        fitted = true;
      }
    }
    if (!fitted) {
      fit.pseudo.k_pseudo = {priors.k_a, priors.k_b};
      fit.warnings.push_back("k pilot moments invalid for a negative binomial; using the prior");
    }
  }

  // alpha: beta via mean/variance.
  {
    Moments m = moments<double>(alpha_samples);
    bool fitted = false;
    if (m.ok && m.mean > 0.0 && m.mean < 1.0 && m.var < m.mean * (1.0 - m.mean)) {
      const double common = m.mean * (1.0 - m.mean) / m.var - 1.0;
      const double s1 = m.mean * common, s2 = (1.0 - m.mean) * common;
      if (s1 > 0.0 && s2 > 0.0) {
        fit.pseudo.alpha_pseudo = {s1, s2};
        fitted = true;
      }
    }
    if (!fitted) {
      fit.pseudo.alpha_pseudo = {1.0, 1.0};
      fit.warnings.push_back("alpha pilot degenerate; pseudoprior falls back to Uniform[0,1]");
    }
  }

  // theta + alpha: gamma via mean/variance.
  {
    std::vector<double> psi(alpha_samples.size());
    for (size_t i = 0; i < psi.size(); ++i) psi[i] = theta_samples[i] + alpha_samples[i];
    Moments m = moments<double>(psi);
    if (m.ok && m.mean > 0.0) {
      fit.pseudo.theta_plus_alpha_pseudo = {m.mean * m.mean / m.var, m.mean / m.var};
    } else {
      fit.pseudo.theta_plus_alpha_pseudo = priors.theta_plus_alpha_prior;
      fit.warnings.push_back("theta+alpha pilot degenerate; pseudoprior falls back to the prior");
    }
  }
  return fit;
}

std::pair<double, double> regime_step_probabilities(const ChainState& s, const PseudoPrior& pseudo,
                                                    const PriorConfig& priors) {
  const double pr1 = priors.prior_r1;
  if (!(pr1 > 0.0 && pr1 < 1.0))
    throw std::invalid_argument("regime step requires P(r=1) strictly inside (0,1)");

  double log_a0 = std::log1p(-pr1) + uniform01_log_density(s.alpha) +
                  pseudo.log_density_eta1(s.gamma, s.k);
  if (log_a0 != neg_inf) {
    const double psi = s.theta + s.alpha;
    log_a0 += psi > 0.0 ? priors.theta_plus_alpha_prior.log_density(psi) : neg_inf;
  }
  if (log_a0 != neg_inf)
    log_a0 += log_eppf(s.alloc.sizes, PyParams::infinite_regime(s.alpha, s.theta));

  double log_a1 = std::log(pr1) + priors.gamma_prior.log_density(s.gamma) +
                  pseudo.log_density_eta0(s.alpha, s.theta);
  if (s.k >= 1 && s.gamma > 0.0 && log_a1 != neg_inf) {
    log_a1 += log_prior_k(s.k, priors.k_a, priors.k_b);
    log_a1 += log_eppf(s.alloc.sizes, PyParams::finite_regime(s.gamma, s.k));
  } else {
    log_a1 = neg_inf;
  }

  if (log_a0 == neg_inf && log_a1 == neg_inf)
    throw NumericError("regime step: both regimes have zero posterior mass");
  const double mx = std::max(log_a0, log_a1);
  const double w0 = std::exp(log_a0 - mx), w1 = std::exp(log_a1 - mx);
  return {w0 / (w0 + w1), w1 / (w0 + w1)};
}

void regime_gibbs_step(ChainState& s, const PseudoPrior& pseudo, const PriorConfig& priors,
                       Rng& rng) {
  if (s.regime == Regime::infinite) {
    auto [gamma, k] = pseudo.sample_eta1(rng);
    s.gamma = gamma;
    s.k = k;
  } else {
    auto [alpha, theta] = pseudo.sample_eta0(rng);
    s.alpha = alpha;
    s.theta = theta;
  }
  auto [p0, p1] = regime_step_probabilities(s, pseudo, priors);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  s.regime = unif(rng) < p1 ? Regime::finite : Regime::infinite;
  (void)p0;
}

BayesFactor bayes_factor(double posterior_r1, double prior_r1) {
  if (!(prior_r1 > 0.0 && prior_r1 < 1.0))
    throw std::invalid_argument("bayes_factor: prior proportion must lie inside (0,1)");
  if (posterior_r1 < 0.0 || posterior_r1 > 1.0)
    throw std::invalid_argument("bayes_factor: posterior proportion must lie in [0,1]");
  const double prior_odds = prior_r1 / (1.0 - prior_r1);
  if (posterior_r1 == 1.0)
    return {std::numeric_limits<double>::infinity(), true,
            "chain never left r=1: evidence for the finite regime is unbounded"};
  if (posterior_r1 == 0.0)
    return {0.0, true, "chain never visited r=1: evidence for the infinite regime is unbounded"};
  return {(posterior_r1 / (1.0 - posterior_r1)) / prior_odds, false, ""};
}

}  // namespace dagsbm
