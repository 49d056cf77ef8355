#include "dagsbm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dagsbm/selection.hpp"

namespace dagsbm {

namespace {

double effective_xi_sd(const TuningConfig& tuning, int node) {
  if (tuning.s_xi.empty()) return tuning.s_xi_default;
  return tuning.s_xi[node];
}

// Change in the count part of the collapsed log-likelihood from adding
// (de, dm) to a cell currently at (e, m). lgamma is skipped when the edge
// count does not move.
inline double cell_delta(long long e, double m, long long de, double dm, double a, double b) {
  const double ea = static_cast<double>(e) + a;
  double d = -(ea + de) * std::log(m + dm + b) + ea * std::log(m + b);
  if (de != 0) d += std::lgamma(ea + de) - std::lgamma(ea);
  return d;
}

// Same, for a cell of a freshly opened group: baseline is the prior factor.
inline double new_cell(long long de, double dm, double a, double b) {
  return std::lgamma(de + a) - (de + a) * std::log(dm + b) + a * std::log(b) - std::lgamma(a);
}

// Log-likelihood change from attaching the detached node to `label`
// (label == counts.k means a new group). Each touched (E, M) cell
// contributes its Gamma-ratio factor exactly once; the diagonal cell takes
// its row and column increments together.
double attach_loglik_delta(const BlockCounts& counts, const NodeProfile& prof, double xi_w,
                           int label, double a, double b) {
  const int K = counts.k;
  double d = 0.0;
  if (label < K) {
    for (int j = 0; j < K; ++j) {
      double dm = xi_w * prof.m_out[j];
      long long de = prof.e_out[j];
      if (j == label) {
        dm += xi_w * prof.m_in[j];
        de += prof.e_in[j];
      }
      d += cell_delta(counts.e_at(label, j), counts.m_at(label, j), de, dm, a, b);
    }
    for (int i = 0; i < K; ++i) {
      if (i == label) continue;
      d += cell_delta(counts.e_at(i, label), counts.m_at(i, label), prof.e_in[i],
                      xi_w * prof.m_in[i], a, b);
    }
  } else {
    // 2K fresh off-diagonal cells; the fresh diagonal cell has E = M = 0 and
    // cancels its own prior factor exactly.
    for (int j = 0; j < K; ++j) d += new_cell(prof.e_out[j], xi_w * prof.m_out[j], a, b);
    for (int i = 0; i < K; ++i) d += new_cell(prof.e_in[i], xi_w * prof.m_in[i], a, b);
  }
  return d;
}

// Log-weights over labels 0..K (last = new group) for the detached node.
std::vector<double> candidate_log_weights(const BlockCounts& counts, const AllocationState& alloc,
                                          const NodeProfile& prof, double xi_w, const PyParams& py,
                                          const GammaHyper& hyper, bool prior_only) {
  const int K = counts.k;
  const double alpha = py.effective_alpha();
  const double theta = py.effective_theta();
  std::vector<double> lw(K + 1);
  for (int c = 0; c <= K; ++c) {
    double base;
    if (c < K) {
      base = std::log(alloc.sizes[c] - alpha);
    } else {
      const double open = theta + alpha * K;
      base = open > 0.0 ? std::log(open) : neg_inf;
    }
    if (base == neg_inf || prior_only) {
      lw[c] = base;
      continue;
    }
    lw[c] = base + attach_loglik_delta(counts, prof, xi_w, c, hyper.a, hyper.b);
  }
  return lw;
}

struct ScratchAlloc {
  AllocationState alloc;
  BlockCounts counts;
};

// Moves one node to `target` inside a scratch allocation, keeping `target`
// (and `other`) valid across any swap-remove relabeling.
void scratch_move(const ChainState& s, ScratchAlloc& sc, int node, int& target, int& other) {
  NodeProfile prof = node_profile(*s.dag, s.ord, sc.alloc, s.xi, s.ord.phi[node]);
  DetachResult det = detach_node(sc.counts, sc.alloc, prof, s.xi.xi[node]);
  if (det.removed_group) {
    if (target == det.moved_label) target = det.old_label;
    if (other == det.moved_label) other = det.old_label;
  }
  attach_node(sc.counts, sc.alloc, prof, s.xi.xi[node], target);
}

// One restricted Gibbs decision for `node` between groups ga and gb.
// Returns the chosen label's normalized log-probability; attaches the node.
double restricted_gibbs_assign(const ChainState& s, ScratchAlloc& sc, int node, int ga, int gb,
                               bool prior_only, Rng& rng, int force_label = -1) {
  NodeProfile prof = node_profile(*s.dag, s.ord, sc.alloc, s.xi, s.ord.phi[node]);
  detach_node(sc.counts, sc.alloc, prof, s.xi.xi[node]);  // never empties: anchors remain
  const PyParams py = s.py();
  const double alpha = py.effective_alpha();
  auto lw = [&](int g) {
    double base = std::log(sc.alloc.sizes[g] - alpha);
    if (prior_only) return base;
    return base + attach_loglik_delta(sc.counts, prof, s.xi.xi[node], g, s.a, s.b);
  };
  const double la = lw(ga), lb = lw(gb);
  const double mx = std::max(la, lb);
  const double norm = mx + std::log(std::exp(la - mx) + std::exp(lb - mx));
  int chosen;
  if (force_label >= 0) {
    chosen = force_label;
  } else {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    chosen = (std::log(unif(rng)) < la - norm) ? ga : gb;
  }
  attach_node(sc.counts, sc.alloc, prof, s.xi.xi[node], chosen);
  return (chosen == ga ? la : lb) - norm;
}

double state_log_target(const AllocationState& alloc, const BlockCounts& counts, const PyParams& py,
                        const GammaHyper& hyper, bool prior_only) {
  double t = log_eppf(alloc.sizes, py);
  if (!prior_only && t != neg_inf) t += log_lik_collapsed_counts(counts, hyper);
  return t;
}

// Steps 3(b): shift modulo n, mapping a signed leap into a displacement that
// keeps the target position inside [0, n).
inline int wrap_leap(int m, int position, int n) {
  if (m > 0 && position + m >= n) return m - n;
  if (m < 0 && position + m < 0) return m + n;
  return m;
}

// Step 3(c): move the node from position r to r + meff, sliding the block in
// between by one slot.
void apply_shift(OrderingState& ord, int node, int r, int meff) {
  const int t = r + meff;
  if (meff > 0) {
    for (int pos = r; pos < t; ++pos) {
      ord.sigma[pos] = ord.sigma[pos + 1];
      ord.phi[ord.sigma[pos]] = pos;
    }
  } else {
    for (int pos = r; pos > t; --pos) {
      ord.sigma[pos] = ord.sigma[pos - 1];
      ord.phi[ord.sigma[pos]] = pos;
    }
  }
  ord.sigma[t] = node;
  ord.phi[node] = t;
}

}  // namespace

void TuningConfig::validate() const {
  if (leap_L < 1) throw std::invalid_argument("leap_L must be >= 1");
  if (s_xi_default <= 0 || s_a <= 0 || s_b <= 0 || s_alpha <= 0 || s_theta <= 0 || s_gamma <= 0)
    throw std::invalid_argument("proposal scales must be positive");
  for (double sd : s_xi)
    if (sd <= 0) throw std::invalid_argument("per-node xi proposal scales must be positive");
  if (!(p_k > 0.0) || !(p_k <= 1.0)) throw std::invalid_argument("p_k must lie in (0,1]");
  if (iterations < 0 || burn_in < 0) throw std::invalid_argument("iteration counts must be >= 0");
  if (thinning < 1) throw std::invalid_argument("thinning must be >= 1");
  if (split_merge_per_sweep < 0 || restricted_gibbs_scans < 0)
    throw std::invalid_argument("split-merge settings must be >= 0");
}

PyParams ChainState::py() const {
  return regime == Regime::finite ? PyParams::finite_regime(gamma, k)
                                  : PyParams::infinite_regime(alpha, theta);
}

void ChainState::rebuild_counts() {
  BlockCounts fresh = block_counts(*dag, ord, alloc, xi);
  if (fresh.e != counts.e) throw NumericError("incremental edge counts diverged from definition");
  counts = std::move(fresh);
}

double ChainState::collapsed_log_lik() const {
  if (!check_topological(*dag, ord)) return neg_inf;
  double lp = log_lik_collapsed_counts(counts, hyper());
  for (int p = 0; p < dag->node_count(); ++p)
    lp += static_cast<double>(dag->weighted_degree(p)) * std::log(xi.xi[p]);
  for (const auto& e : dag->edges()) lp -= std::lgamma(e.count + 1.0);
  return lp;
}

ChainState init_chain(const Dag& g, const PriorConfig& priors, const TuningConfig& tuning,
                      ChainMode mode, Rng& rng) {
  priors.validate();
  tuning.validate();
  const int n = g.node_count();
  if (!tuning.s_xi.empty() && static_cast<int>(tuning.s_xi.size()) != n)
    throw std::invalid_argument("s_xi length must match the node count");

  ChainState s;
  s.dag = &g;
  s.ord = kahn_sort(g);
  s.xi = DegreeCorrections::ones(n);
  s.a = priors.a_prior.mean();
  s.b = priors.b_prior.mean();
  s.alpha = 0.5;
  s.theta = 1.0;
  s.gamma = 1.0;

  // Allocation drawn from the sequential CRP under the initial eta_0.
  const PyParams py0 = PyParams::infinite_regime(s.alpha, s.theta);
  s.alloc.z.assign(n, -1);
  for (int p = 0; p < n; ++p) {
    std::vector<double> w = crp_weights(s.alloc.sizes, py0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    int label = static_cast<int>(w.size()) - 1;
    double acc = 0.0;
    for (size_t j = 0; j < w.size(); ++j) {
      acc += w[j];
      if (u <= acc) {
        label = static_cast<int>(j);
        break;
      }
    }
    if (label == s.alloc.group_count()) s.alloc.sizes.push_back(0);
    s.alloc.z[p] = label;
    ++s.alloc.sizes[label];
  }
  s.k = std::max(2, s.alloc.group_count());

  switch (mode) {
    case ChainMode::infinite:
      s.regime = Regime::infinite;
      break;
    case ChainMode::finite:
      s.regime = Regime::finite;
      break;
    case ChainMode::select: {
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      s.regime = unif(rng) < priors.prior_r1 ? Regime::finite : Regime::infinite;
      break;
    }
  }
  s.counts = block_counts(g, s.ord, s.alloc, s.xi);
  return s;
}

AllocationConditional allocation_conditional(const ChainState& s, int position, bool prior_only) {
  AllocationConditional out;
  BlockCounts counts = s.counts;
  out.detached = s.alloc;
  NodeProfile prof = node_profile(*s.dag, s.ord, out.detached, s.xi, position);
  const double xiw = s.xi.xi[prof.node];
  detach_node(counts, out.detached, prof, xiw);
  out.log_weights =
      candidate_log_weights(counts, out.detached, prof, xiw, s.py(), s.hyper(), prior_only);
  return out;
}

void gibbs_sweep_allocations(ChainState& s, const TuningConfig& tuning, Rng& rng) {
  const Dag& g = *s.dag;
  const int n = g.node_count();
  const PyParams py = s.py();
  const GammaHyper hyper = s.hyper();

  // Running per-group xi totals before/after the current position.
  std::vector<double> pre(s.alloc.group_count(), 0.0);
  std::vector<double> suf(s.alloc.group_count(), 0.0);
  for (int r = 1; r < n; ++r) {
    const int q = s.ord.sigma[r];
    suf[s.alloc.z[q]] += s.xi.xi[q];
  }

  NodeProfile prof;
  for (int w = 0; w < n; ++w) {
    const int u = s.ord.sigma[w];
    const double xiw = s.xi.xi[u];
    const int K = s.alloc.group_count();

    prof.node = u;
    prof.position = w;
    prof.m_in = pre;
    prof.m_out = suf;
    prof.e_out.assign(K, 0);
    prof.e_in.assign(K, 0);
    for (const auto& [q, c] : g.out(u)) prof.e_out[s.alloc.z[q]] += c;
    for (const auto& [p, c] : g.in(u)) prof.e_in[s.alloc.z[p]] += c;

    DetachResult det = detach_node(s.counts, s.alloc, prof, xiw);
    if (det.removed_group) {
      const int last = static_cast<int>(pre.size()) - 1;
      if (det.old_label != last) {
        pre[det.old_label] = pre[last];
        suf[det.old_label] = suf[last];
      }
      pre.pop_back();
      suf.pop_back();
    }

    std::vector<double> lw =
        candidate_log_weights(s.counts, s.alloc, prof, xiw, py, hyper, tuning.prior_only);
    const int label = sample_from_log_weights(lw, rng);
    attach_node(s.counts, s.alloc, prof, xiw, label);
    if (label == static_cast<int>(pre.size())) {
      pre.push_back(0.0);
      suf.push_back(0.0);
    }

    pre[label] += xiw;
    if (w + 1 < n) {
      const int v = s.ord.sigma[w + 1];
      suf[s.alloc.z[v]] -= s.xi.xi[v];
    }
  }
}

bool split_merge_move(ChainState& s, const TuningConfig& tuning, Rng& rng) {
  const int n = s.dag->node_count();
  if (n < 2) return false;
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int u = pick(rng);
  int v = pick(rng);
  while (v == u) v = pick(rng);

  const PyParams py = s.py();
  const GammaHyper hyper = s.hyper();
  const bool prior_only = tuning.prior_only;
  const double cur_target = state_log_target(s.alloc, s.counts, py, hyper, prior_only);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  if (s.alloc.z[u] == s.alloc.z[v]) {
    // Split proposal: u seeds a fresh group, the rest of the block is
    // randomized, relaxed by restricted Gibbs scans, and the final scan's
    // transition probability is the proposal density. The reverse merge is
    // deterministic.
    std::vector<int> members;
    for (int p = 0; p < n; ++p)
      if (p != u && p != v && s.alloc.z[p] == s.alloc.z[u]) members.push_back(p);

    ScratchAlloc sc{s.alloc, s.counts};
    int gv = sc.alloc.z[v];
    int gu = sc.alloc.group_count();
    scratch_move(s, sc, u, gu, gv);  // open the new group

    for (int p : members) {
      int target = unif(rng) < 0.5 ? gu : gv;
      scratch_move(s, sc, p, target, gv);
    }
    for (int scan = 0; scan < tuning.restricted_gibbs_scans; ++scan)
      for (int p : members) restricted_gibbs_assign(s, sc, p, gu, gv, prior_only, rng);

    double log_q = 0.0;
    for (int p : members) log_q += restricted_gibbs_assign(s, sc, p, gu, gv, prior_only, rng);

    const double prop_target = state_log_target(sc.alloc, sc.counts, py, hyper, prior_only);
    if (prop_target == neg_inf) return false;
    if (accept_log_ratio(prop_target - cur_target - log_q, rng)) {
      s.alloc = std::move(sc.alloc);
      s.counts = std::move(sc.counts);
      return true;
    }
    return false;
  }

  // Merge proposal: group of u joins group of v. The reverse move is the
  // split above, so its final-scan probability of reproducing the current
  // configuration enters the ratio.
  const int gu = s.alloc.z[u];
  const int gv = s.alloc.z[v];
  std::vector<int> members;
  for (int p = 0; p < n; ++p)
    if (p != u && p != v && (s.alloc.z[p] == gu || s.alloc.z[p] == gv)) members.push_back(p);

  double log_q_rev = 0.0;
  {
    ScratchAlloc sc{s.alloc, s.counts};
    std::vector<int> original;
    original.reserve(members.size());
    for (int p : members) original.push_back(s.alloc.z[p]);

    int ga = gu, gb = gv;
    for (int p : members) {
      int target = unif(rng) < 0.5 ? ga : gb;
      scratch_move(s, sc, p, target, target == ga ? gb : ga);
    }
    for (int scan = 0; scan < tuning.restricted_gibbs_scans; ++scan)
      for (int p : members) restricted_gibbs_assign(s, sc, p, ga, gb, prior_only, rng);
    for (size_t i = 0; i < members.size(); ++i)
      log_q_rev +=
          restricted_gibbs_assign(s, sc, members[i], ga, gb, prior_only, rng, original[i]);
  }

  ScratchAlloc sc{s.alloc, s.counts};
  std::vector<int> moving;
  for (int p = 0; p < n; ++p)
    if (s.alloc.z[p] == gu) moving.push_back(p);
  int target = gv, dummy = gu;
  for (int p : moving) scratch_move(s, sc, p, target, dummy);

  const double prop_target = state_log_target(sc.alloc, sc.counts, py, hyper, prior_only);
  if (prop_target == neg_inf) return false;
  if (accept_log_ratio(prop_target - cur_target + log_q_rev, rng)) {
    s.alloc = std::move(sc.alloc);
    s.counts = std::move(sc.counts);
    return true;
  }
  return false;
}

OrderingState leap_shift_propose(const OrderingState& ord, int node, int m, int leap_L) {
  const int n = ord.size();
  if (node < 0 || node >= n) throw std::invalid_argument("leap_shift_propose: node out of range");
  if (m == 0 || std::abs(m) > leap_L)
    throw std::invalid_argument("leap_shift_propose: need 0 < |m| <= L");

  const int r = ord.phi[node];
  OrderingState next = ord;
  apply_shift(next, node, r, wrap_leap(m, r, n));
  return next;
}

void update_ordering(ChainState& s, const TuningConfig& tuning, Rng& rng) {
  const Dag& g = *s.dag;
  const int n = g.node_count();
  if (n < 2) return;
  const int L = std::min(tuning.leap_L, n - 1);
  const int K = s.alloc.group_count();
  std::uniform_int_distribution<int> mdraw(1, 2 * L);
  std::vector<double> group_delta(K, 0.0);

  for (int p = 0; p < n; ++p) {
    int m = mdraw(rng);
    if (m > L) m = -(m - L);  // uniform over {-L..-1, 1..L}

    const int r = s.ord.phi[p];
    const int meff = wrap_leap(m, r, n);
    const int t = r + meff;

    // Topology: the proposal flips the relative order of p and the shifted
    // block only, so it stays topological iff p has no edge into/from it.
    bool blocked = false;
    if (meff > 0) {
      for (const auto& [q, c] : g.out(p))
        if (s.ord.phi[q] <= t) {
          blocked = true;
          break;
        }
    } else {
      for (const auto& [q, c] : g.in(p))
        if (s.ord.phi[q] >= t) {
          blocked = true;
          break;
        }
    }
    if (blocked) continue;

    const int zp = s.alloc.z[p];
    const double xip = s.xi.xi[p];
    const int lo = meff > 0 ? r + 1 : t;
    const int hi = meff > 0 ? t : r - 1;

    std::fill(group_delta.begin(), group_delta.end(), 0.0);
    for (int pos = lo; pos <= hi; ++pos) {
      const int q = s.ord.sigma[pos];
      group_delta[s.alloc.z[q]] += s.xi.xi[q];
    }

    // Dyads (p, block) swap direction: row cell (zp, j) loses what column
    // cell (j, zp) gains, or vice versa. Same-group flips cancel.
    double dll = 0.0;
    if (!tuning.prior_only) {
      const double sign = meff > 0 ? -1.0 : 1.0;
      for (int j = 0; j < K; ++j) {
        if (j == zp || group_delta[j] == 0.0) continue;
        const double d = sign * xip * group_delta[j];
        dll += cell_delta(s.counts.e_at(zp, j), s.counts.m_at(zp, j), 0, d, s.a, s.b);
        dll += cell_delta(s.counts.e_at(j, zp), s.counts.m_at(j, zp), 0, -d, s.a, s.b);
      }
    }

    if (!accept_log_ratio(dll, rng)) continue;

    const double sign = meff > 0 ? -1.0 : 1.0;
    for (int j = 0; j < K; ++j) {
      if (j == zp || group_delta[j] == 0.0) continue;
      s.counts.m_at(zp, j) += sign * xip * group_delta[j];
      s.counts.m_at(j, zp) -= sign * xip * group_delta[j];
    }
    apply_shift(s.ord, p, r, meff);
  }
}

void update_degree_corrections(ChainState& s, const PriorConfig& priors, const TuningConfig& tuning,
                               Rng& rng) {
  if (tuning.fix_xi) return;
  const Dag& g = *s.dag;
  const int n = g.node_count();
  const int K = s.alloc.group_count();
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> pre(K, 0.0), suf(K, 0.0);
  for (int r = 1; r < n; ++r) {
    const int q = s.ord.sigma[r];
    suf[s.alloc.z[q]] += s.xi.xi[q];
  }

  for (int w = 0; w < n; ++w) {
    const int u = s.ord.sigma[w];
    const int zu = s.alloc.z[u];
    const double cur = s.xi.xi[u];
    const double prop = cur + effective_xi_sd(tuning, u) * normal(rng);

    if (prop > 0.0) {
      const double dxi = prop - cur;
      double dll = priors.xi_prior.log_density(prop) - priors.xi_prior.log_density(cur);
      if (!tuning.prior_only) {
        dll += static_cast<double>(g.weighted_degree(u)) * (std::log(prop) - std::log(cur));
        for (int j = 0; j < K; ++j) {
          double dm = dxi * suf[j];
          if (j == zu) dm += dxi * pre[zu];
          dll += cell_delta(s.counts.e_at(zu, j), s.counts.m_at(zu, j), 0, dm, s.a, s.b);
        }
        for (int i = 0; i < K; ++i) {
          if (i == zu) continue;
          dll += cell_delta(s.counts.e_at(i, zu), s.counts.m_at(i, zu), 0, dxi * pre[i], s.a, s.b);
        }
      }
      if (accept_log_ratio(dll, rng)) {
        for (int j = 0; j < K; ++j) {
          double dm = dxi * suf[j];
          if (j == zu) dm += dxi * pre[zu];
          s.counts.m_at(zu, j) += dm;
        }
        for (int i = 0; i < K; ++i) {
          if (i == zu) continue;
          s.counts.m_at(i, zu) += dxi * pre[i];
        }
        s.xi.xi[u] = prop;
      }
    }

    pre[zu] += s.xi.xi[u];
    if (w + 1 < n) {
      const int v = s.ord.sigma[w + 1];
      suf[s.alloc.z[v]] -= s.xi.xi[v];
    }
  }
}

void update_gamma_hyper(ChainState& s, HyperParam which, const PriorConfig& priors,
                        const TuningConfig& tuning, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double cur = which == HyperParam::a ? s.a : s.b;
  const double sd = which == HyperParam::a ? tuning.s_a : tuning.s_b;
  const double prop = cur + sd * normal(rng);
  if (prop <= 0.0) return;

  const GammaPrior& prior = which == HyperParam::a ? priors.a_prior : priors.b_prior;
  double dll = prior.log_density(prop) - prior.log_density(cur);
  if (!tuning.prior_only) {
    GammaHyper hp = s.hyper();
    GammaHyper hc = hp;
    (which == HyperParam::a ? hp.a : hp.b) = prop;
    dll += log_lik_collapsed_counts(s.counts, hp) - log_lik_collapsed_counts(s.counts, hc);
  }
  if (accept_log_ratio(dll, rng)) (which == HyperParam::a ? s.a : s.b) = prop;
}

void update_py_params(ChainState& s, const PriorConfig& priors, const TuningConfig& tuning,
                      Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  if (s.regime == Regime::infinite) {
    auto log_target = [&](double alpha, double theta) {
      if (!(alpha >= 0.0 && alpha < 1.0) || !(theta > -alpha)) return neg_inf;
      return log_eppf(s.alloc.sizes, PyParams::infinite_regime(alpha, theta)) +
             uniform01_log_density(alpha) +
             priors.theta_plus_alpha_prior.log_density(theta + alpha);
    };
    const double alpha_prop = s.alpha + tuning.s_alpha * normal(rng);
    if (accept_log_ratio(log_target(alpha_prop, s.theta) - log_target(s.alpha, s.theta), rng))
      s.alpha = alpha_prop;
    const double theta_prop = s.theta + tuning.s_theta * normal(rng);
    if (accept_log_ratio(log_target(s.alpha, theta_prop) - log_target(s.alpha, s.theta), rng))
      s.theta = theta_prop;
    return;
  }

  // Finite regime: lognormal walk on gamma (Jacobian gamma'/gamma) and a
  // symmetric +-geometric step on k.
  auto log_target = [&](double gamma, int k) {
    if (!(gamma > 0.0) || k < 1) return neg_inf;
    return log_eppf(s.alloc.sizes, PyParams::finite_regime(gamma, k)) +
           priors.gamma_prior.log_density(gamma) + log_prior_k(k, priors.k_a, priors.k_b);
  };
  const double gamma_prop = std::exp(std::log(s.gamma) + tuning.s_gamma * normal(rng));
  const double lr = log_target(gamma_prop, s.k) - log_target(s.gamma, s.k) +
                    std::log(gamma_prop) - std::log(s.gamma);
  if (accept_log_ratio(lr, rng)) s.gamma = gamma_prop;

  int step = 1;
  if (tuning.p_k < 1.0) {
    std::geometric_distribution<int> geom(tuning.p_k);
    step += geom(rng);
  }
  const int k_prop = unif(rng) < 0.5 ? s.k + step : s.k - step;
  if (k_prop >= 1 &&
      accept_log_ratio(log_target(s.gamma, k_prop) - log_target(s.gamma, s.k), rng))
    s.k = k_prop;
}

void sweep(ChainState& s, const PriorConfig& priors, const TuningConfig& tuning, Rng& rng) {
  gibbs_sweep_allocations(s, tuning, rng);
  for (int i = 0; i < tuning.split_merge_per_sweep; ++i) split_merge_move(s, tuning, rng);
  update_ordering(s, tuning, rng);
  update_degree_corrections(s, priors, tuning, rng);
  update_gamma_hyper(s, HyperParam::a, priors, tuning, rng);
  update_gamma_hyper(s, HyperParam::b, priors, tuning, rng);
  update_py_params(s, priors, tuning, rng);
  if (s.regime == Regime::finite && s.alloc.group_count() > s.k)
    throw NumericError("finite regime invariant violated: K_n exceeds k");
}

void run_chain(const Dag& g, const PriorConfig& priors, const TuningConfig& tuning, ChainMode mode,
               const TraceSink& sink, const PseudoPrior* pseudo) {
  if (mode == ChainMode::select) {
    if (!(priors.prior_r1 > 0.0 && priors.prior_r1 < 1.0))
      throw std::invalid_argument("select mode requires P(r=1) strictly inside (0,1)");
    if (pseudo == nullptr)
      throw std::invalid_argument("select mode requires fitted pseudopriors");
  }
  Rng rng(tuning.seed);
  ChainState s = init_chain(g, priors, tuning, mode, rng);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const long long total = tuning.burn_in + tuning.iterations;
  for (long long it = 0; it < total; ++it) {
    sweep(s, priors, tuning, rng);
    if (mode == ChainMode::select) regime_gibbs_step(s, *pseudo, priors, rng);
    if (tuning.refresh_every > 0 && (it + 1) % tuning.refresh_every == 0) s.rebuild_counts();

    if (it < tuning.burn_in || (it - tuning.burn_in) % tuning.thinning != 0) continue;
    TraceRecord rec;
    rec.iteration = it;
    rec.k_groups = s.alloc.group_count();
    rec.a = s.a;
    rec.b = s.b;
    rec.regime = s.regime;
    const bool have_eta0 = mode != ChainMode::finite;
    const bool have_eta1 = mode != ChainMode::infinite;
    rec.alpha = have_eta0 ? s.alpha : nan;
    rec.theta = have_eta0 ? s.theta : nan;
    rec.gamma = have_eta1 ? s.gamma : nan;
    rec.k = have_eta1 ? s.k : 0;
    rec.log_lik = s.collapsed_log_lik();
    rec.z = s.alloc.z;
    rec.sigma = s.ord.sigma;
    rec.xi = s.xi.xi;
    sink(rec);
  }
}

}  // namespace dagsbm
