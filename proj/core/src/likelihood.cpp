#include "dagsbm/likelihood.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dagsbm {

PyParams PyParams::infinite_regime(double alpha, double theta) {
  PyParams py;
  py.regime = Regime::infinite;
  py.alpha = alpha;
  py.theta = theta;
  if (!py.valid()) throw std::invalid_argument("infinite regime requires 0 <= alpha < 1, theta > -alpha");
  return py;
}

PyParams PyParams::finite_regime(double gamma, int k) {
  PyParams py;
  py.regime = Regime::finite;
  py.gamma = gamma;
  py.k = k;
  if (!py.valid()) throw std::invalid_argument("finite regime requires gamma > 0, k >= 1");
  return py;
}

bool PyParams::valid() const {
  if (regime == Regime::infinite) return alpha >= 0.0 && alpha < 1.0 && theta > -alpha;
  return gamma > 0.0 && k >= 1;
}

double GammaPrior::log_density(double x) const { return gamma_log_density(x, shape, rate); }

void PriorConfig::validate() const {
  auto positive = [](const GammaPrior& g) { return g.shape > 0.0 && g.rate > 0.0; };
  if (!positive(a_prior) || !positive(b_prior) || !positive(xi_prior) ||
      !positive(theta_plus_alpha_prior) || !positive(gamma_prior))
    throw std::invalid_argument("gamma prior parameters must be positive");
  if (!(k_a > 0.0) || !(k_b > 0.0) || !(k_b < 1.0))
    throw std::invalid_argument("k prior requires a_k > 0 and b_k in (0,1)");
  if (prior_r1 < 0.0 || prior_r1 > 1.0)
    throw std::invalid_argument("P(r=1) must lie in [0,1]");
}

double log_rising_factorial(double x, long long n) {
  if (!(x > 0.0)) throw std::invalid_argument("log_rising_factorial requires x > 0");
  if (n < 0) throw std::invalid_argument("log_rising_factorial requires n >= 0");
  if (n == 0) return 0.0;
  return std::lgamma(x + static_cast<double>(n)) - std::lgamma(x);
}

double log_eppf(const std::vector<int>& sizes, const PyParams& py) {
  if (!py.valid()) throw std::invalid_argument("log_eppf: invalid PyParams");
  const int K = static_cast<int>(sizes.size());
  long long n = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("log_eppf: block sizes must be >= 1");
    n += s;
  }
  if (py.regime == Regime::finite && K > py.k) return neg_inf;

  const double alpha = py.effective_alpha();
  const double theta = py.effective_theta();
  double lp = 0.0;
  for (int j = 1; j < K; ++j) lp += std::log(theta + j * alpha);
  lp -= log_rising_factorial(theta + 1.0, n - 1);
  for (int s : sizes) lp += log_rising_factorial(1.0 - alpha, s - 1);
  return lp;
}

std::vector<double> crp_weights(const std::vector<int>& sizes, const PyParams& py) {
  if (!py.valid()) throw std::invalid_argument("crp_weights: invalid PyParams");
  const int K = static_cast<int>(sizes.size());
  long long n = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("crp_weights: block sizes must be >= 1");
    n += s;
  }
  const double alpha = py.effective_alpha();
  const double theta = py.effective_theta();
  std::vector<double> w(K + 1);
  const double denom = theta + static_cast<double>(n);
  for (int j = 0; j < K; ++j) w[j] = (sizes[j] - alpha) / denom;
  w[K] = (theta + alpha * K) / denom;
  if (py.regime == Regime::finite && K >= py.k) w[K] = 0.0;  // exact zero, not rounding noise
  return w;
}

double log_lik_collapsed_counts(const BlockCounts& counts, const GammaHyper& hyper) {
  const double a = hyper.a, b = hyper.b;
  const int K = counts.k;
  double lp = static_cast<double>(K) * K * (a * std::log(b) - std::lgamma(a));
  for (size_t i = 0; i < counts.e.size(); ++i) {
    const double ea = static_cast<double>(counts.e[i]) + a;
    lp += std::lgamma(ea) - ea * std::log(counts.m[i] + b);
  }
  return lp;
}

double log_lik_collapsed(const Dag& g, const OrderingState& ord, const AllocationState& alloc,
                         const DegreeCorrections& xi, const GammaHyper& hyper) {
  if (!(hyper.a > 0.0) || !(hyper.b > 0.0))
    throw std::invalid_argument("log_lik_collapsed: a, b must be positive");
  if (!check_topological(g, ord)) return neg_inf;
  double lp = log_lik_collapsed_counts(block_counts(g, ord, alloc, xi), hyper);
  for (const auto& e : g.edges()) {
    lp += e.count * (std::log(xi.xi[e.src]) + std::log(xi.xi[e.dst]));
    lp -= std::lgamma(e.count + 1.0);  // Ybar term; zero for binary data
  }
  return lp;
}

double log_lik_full(const Dag& g, const OrderingState& ord, const AllocationState& alloc,
                    const DegreeCorrections& xi, const Matrix& c) {
  const int K = alloc.group_count();
  if (c.rows != K || c.cols != K)
    throw std::invalid_argument("log_lik_full: C dimensions do not match the group count");
  if (!check_topological(g, ord)) return neg_inf;

  // Sum of Poisson means over all ordered dyads is sum_ij M_ij C_ij.
  BlockCounts counts = block_counts(g, ord, alloc, xi);
  double lp = 0.0;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) lp -= counts.m_at(i, j) * c.at(i, j);

  for (const auto& e : g.edges()) {
    const double mean = xi.xi[e.src] * xi.xi[e.dst] * c.at(alloc.z[e.src], alloc.z[e.dst]);
    if (!(mean > 0.0)) return neg_inf;
    lp += e.count * std::log(mean) - std::lgamma(e.count + 1.0);
  }
  return lp;
}

double log_prior_k(int k, double a_k, double b_k) {
  if (k < 1) throw std::invalid_argument("log_prior_k: support is k >= 1");
  if (!(a_k > 0.0) || !(b_k > 0.0) || !(b_k < 1.0))
    throw std::invalid_argument("log_prior_k: requires a_k > 0, b_k in (0,1)");
  return -std::log1p(-std::pow(b_k, a_k)) + std::lgamma(k + a_k) - std::lgamma(a_k) -
         std::lgamma(k + 1.0) + a_k * std::log(b_k) + k * std::log1p(-b_k);
}

double gamma_log_density(double x, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("gamma_log_density: shape and rate must be positive");
  if (!(x > 0.0)) return neg_inf;
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double uniform01_log_density(double x) { return (x >= 0.0 && x < 1.0) ? 0.0 : neg_inf; }

}  // namespace dagsbm
