// Acceptance suite: one self-contained check per criterion, each printing a
// PASS/FAIL/SKIP line. The process exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "dagsbm/io.hpp"
#include "dagsbm/likelihood.hpp"
#include "dagsbm/posterior.hpp"
#include "dagsbm/sampler.hpp"
#include "dagsbm/selection.hpp"
#include "dagsbm/synth.hpp"
#include "oracles.hpp"

using namespace dagsbm;

namespace {

struct Outcome {
  enum class Status { pass, fail, skip } status = Status::pass;
  std::string detail;
};

Outcome ok(std::string detail = "") { return {Outcome::Status::pass, std::move(detail)}; }
Outcome bad(std::string detail) { return {Outcome::Status::fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Outcome::Status::skip, std::move(detail)}; }

double log_sum_exp(const std::vector<double>& v) {
  double mx = neg_inf;
  for (double x : v) mx = std::max(mx, x);
  if (mx == neg_inf) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

std::string partition_key(const std::vector<int>& z) {
  std::vector<int> remap(z.size(), -1);
  std::string key;
  int next = 0;
  for (int v : z) {
    if (remap[v] < 0) remap[v] = next++;
    key.push_back(static_cast<char>('a' + remap[v]));
  }
  return key;
}

// ---------------------------------------------------------------------------
// C1: collapsed likelihood vs quadrature and Monte-Carlo collapsing
// ---------------------------------------------------------------------------
Outcome c1_collapsed_exactness() {
  {
    Dag g = oracles::dag_from_pairs(2, {{1, 2}});
    const double quad =
        oracles::integrate([](double c) { return c * std::exp(-2.0 * c); }, 0.0, 60.0, 1e-14);
    const double collapsed =
        std::exp(log_lik_collapsed(g, OrderingState::identity(2),
                                   AllocationState::from_labels({0, 0}),
                                   DegreeCorrections::ones(2), {1.0, 1.0}));
    if (std::abs(collapsed - quad) > 1e-10)
      return bad("two-node example: |" + std::to_string(collapsed) + " - quadrature| > 1e-10");
  }
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    Dag g = oracles::random_dag(n, 0.5, rng);
    OrderingState ord = kahn_sort(g);
    AllocationState alloc = AllocationState::from_labels(oracles::seq_crp_sample(n, 0.4, 1.0, rng));
    std::uniform_real_distribution<double> xdist(0.6, 1.5);
    DegreeCorrections xi;
    for (int i = 0; i < n; ++i) xi.xi.push_back(xdist(rng));
    GammaHyper hyper{1.0, 1.2};
    const int K = alloc.group_count();
    std::gamma_distribution<double> gam(hyper.a, 1.0 / hyper.b);
    Matrix c(K, K);
    const int draws = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int d = 0; d < draws; ++d) {
      for (double& v : c.data) v = gam(rng);
      const double w = std::exp(log_lik_full(g, ord, alloc, xi, c));
      sum += w;
      sumsq += w * w;
    }
    const double mean = sum / draws;
    const double se = std::sqrt(std::max(0.0, sumsq / draws - mean * mean) / draws);
    const double exact = std::exp(log_lik_collapsed(g, ord, alloc, xi, hyper));
    if (std::abs(mean - exact) > 3.0 * se + 1e-13)
      return bad("instance " + std::to_string(trial) + ": MC mean " + std::to_string(mean) +
                 " vs collapsed " + std::to_string(exact) + " beyond 3 MC se");
  }
  return ok("2-node quadrature match at 1e-10; 10 instances within 3 MC se of 1e6 draws");
}

// ---------------------------------------------------------------------------
// C2: EPPF normalization across partitions
// ---------------------------------------------------------------------------
Outcome c2_eppf_normalization() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ua(0.0, 0.95), ut(0.1, 5.0), ug(0.1, 4.0);
  std::uniform_int_distribution<int> uk(1, 10);
  for (int n = 2; n <= 6; ++n) {
    auto partitions = oracles::all_partitions(n);
    for (int setting = 0; setting < 20; ++setting) {
      PyParams py = setting % 2 == 0 ? PyParams::infinite_regime(ua(rng), ut(rng))
                                     : PyParams::finite_regime(ug(rng), uk(rng));
      double total = 0.0;
      for (const auto& z : partitions)
        total += std::exp(log_eppf(oracles::partition_sizes(z), py));
      if (std::abs(total - 1.0) > 1e-10)
        return bad("n=" + std::to_string(n) + ": EPPF total " + std::to_string(total));
    }
  }
  return ok("sums to 1 within 1e-10 for n=2..6, 20 settings per n, both regimes");
}

// ---------------------------------------------------------------------------
// C3: incremental Gibbs weights vs brute-force full conditional
// ---------------------------------------------------------------------------
Outcome c3_gibbs_conditional() {
  auto check_state = [&](ChainState& s) -> std::string {
    for (int w = 0; w < s.dag->node_count(); ++w) {
      AllocationConditional cond = allocation_conditional(s, w);
      const int node = s.ord.sigma[w];
      const int K = cond.detached.group_count();
      std::vector<double> brute(K + 1);
      for (int c = 0; c <= K; ++c) {
        std::vector<int> z = cond.detached.z;
        z[node] = c;
        AllocationState cand = AllocationState::from_labels(z);
        brute[c] =
            log_eppf(cand.sizes, s.py()) + log_lik_collapsed(*s.dag, s.ord, cand, s.xi, s.hyper());
      }
      const double zs = log_sum_exp(cond.log_weights), zb = log_sum_exp(brute);
      for (int c = 0; c <= K; ++c) {
        const double diff = std::abs(std::exp(cond.log_weights[c] - zs) - std::exp(brute[c] - zb));
        if (diff > 1e-10)
          return "position " + std::to_string(w) + " label " + std::to_string(c) +
                 ": probability gap " + std::to_string(diff);
      }
    }
    return "";
  };

  Dag g3 = oracles::dag_from_pairs(3, {{1, 2}, {1, 3}});
  ChainState s3;
  s3.dag = &g3;
  s3.ord = kahn_sort(g3);
  s3.alloc = AllocationState::from_labels({0, 1, 1});
  s3.xi = DegreeCorrections::ones(3);
  s3.counts = block_counts(g3, s3.ord, s3.alloc, s3.xi);
  s3.a = 1.0;
  s3.b = 1.0;
  s3.alpha = 0.5;
  s3.theta = 1.0;
  if (auto err = check_state(s3); !err.empty()) return bad("n=3 fixture: " + err);

  Dag g5 = oracles::dag_from_pairs(5, {{1, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}, {1, 5}});
  ChainState s5;
  s5.dag = &g5;
  s5.ord = kahn_sort(g5);
  s5.alloc = AllocationState::from_labels({0, 1, 0, 2, 1});
  s5.xi = DegreeCorrections{{0.7, 1.4, 1.1, 0.9, 1.8}};
  s5.counts = block_counts(g5, s5.ord, s5.alloc, s5.xi);
  s5.a = 0.8;
  s5.b = 2.5;
  s5.alpha = 0.25;
  s5.theta = 2.0;
  if (auto err = check_state(s5); !err.empty()) return bad("n=5 infinite fixture: " + err);
  s5.regime = Regime::finite;
  s5.gamma = 1.3;
  s5.k = 4;
  if (auto err = check_state(s5); !err.empty()) return bad("n=5 finite fixture: " + err);
  return ok("weights match brute-force conditionals within 1e-10 on n=3 and n=5 fixtures");
}

// ---------------------------------------------------------------------------
// C4: Leap-and-Shift kernel symmetry by exhaustive enumeration
// ---------------------------------------------------------------------------
Outcome c4_leap_shift_symmetry() {
  const int n = 5, L = 2;
  auto kernel = [&](const OrderingState& from) {
    std::map<std::pair<int, std::vector<int>>, int> counts;
    for (int p = 0; p < n; ++p)
      for (int m = -L; m <= L; ++m) {
        if (m == 0) continue;
        ++counts[{p, leap_shift_propose(from, p, m, L).sigma}];
      }
    return counts;
  };
  // every permutation of 5 elements as a source state
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int pairs = 0;
  do {
    OrderingState from = OrderingState::from_sigma(perm);
    for (const auto& [key, mult] : kernel(from)) {
      OrderingState to = OrderingState::from_sigma(key.second);
      auto reverse = kernel(to);
      auto it = reverse.find({key.first, from.sigma});
      if (it == reverse.end() || it->second != mult)
        return bad("asymmetric pair found for node " + std::to_string(key.first));
      ++pairs;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ok("q(sigma'|sigma) = q(sigma|sigma') exactly over " + std::to_string(pairs) +
            " enumerated (p,m) transitions from all 120 states");
}

// ---------------------------------------------------------------------------
// C5: Geweke getting-it-right
// ---------------------------------------------------------------------------
struct GewekeStats {
  std::vector<double> k_groups, a, b, extra;  // extra = alpha or k
  void record(const ChainState& s) {
    k_groups.push_back(s.alloc.group_count());
    a.push_back(s.a);
    b.push_back(s.b);
    extra.push_back(s.regime == Regime::finite ? static_cast<double>(s.k) : s.alpha);
  }
};

Outcome c5_geweke() {
  const int n = 10;
  const int iters = 120000;

  PriorConfig priors;
  priors.a_prior = {2.0, 1.0};
  priors.b_prior = {2.0, 1.0};
  priors.xi_prior = {2.0, 2.0};
  priors.theta_plus_alpha_prior = {2.0, 1.0};
  priors.gamma_prior = {2.0, 1.0};
  priors.k_a = 1.0;
  priors.k_b = 0.3;

  TuningConfig tuning;
  tuning.leap_L = 3;
  tuning.s_xi_default = 0.6;
  tuning.s_a = 0.8;
  tuning.s_b = 0.8;
  tuning.s_alpha = 0.15;
  tuning.s_theta = 0.8;
  tuning.s_gamma = 0.6;
  tuning.p_k = 0.5;
  tuning.restricted_gibbs_scans = 2;

  TruncNegBinParams k_prior{priors.k_a, priors.k_b};

  auto draw_prior_state = [&](Regime regime, Rng& rng, ChainState& s) {
    std::gamma_distribution<double> ga(priors.a_prior.shape, 1.0 / priors.a_prior.rate);
    std::gamma_distribution<double> gb(priors.b_prior.shape, 1.0 / priors.b_prior.rate);
    std::gamma_distribution<double> gx(priors.xi_prior.shape, 1.0 / priors.xi_prior.rate);
    std::gamma_distribution<double> gpsi(priors.theta_plus_alpha_prior.shape,
                                         1.0 / priors.theta_plus_alpha_prior.rate);
    std::gamma_distribution<double> ggam(priors.gamma_prior.shape, 1.0 / priors.gamma_prior.rate);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    s.regime = regime;
    s.a = ga(rng);
    s.b = gb(rng);
    s.xi.xi.resize(n);
    for (double& x : s.xi.xi) x = gx(rng);
    double alpha_eff, theta_eff;
    if (regime == Regime::infinite) {
      s.alpha = unif(rng);
      s.theta = gpsi(rng) - s.alpha;
      alpha_eff = s.alpha;
      theta_eff = s.theta;
    } else {
      s.gamma = ggam(rng);
      s.k = k_prior.sample(rng);
      alpha_eff = -s.gamma;
      theta_eff = s.k * s.gamma;
    }
    s.alloc = AllocationState::from_labels(oracles::seq_crp_sample(n, alpha_eff, theta_eff, rng));
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    s.ord = OrderingState::from_sigma(sigma);
  };

  auto regenerate_data = [&](ChainState& s, Rng& rng) {
    const int K = s.alloc.group_count();
    std::gamma_distribution<double> gc(s.a, 1.0 / s.b);
    Matrix c(K, K);
    for (double& v : c.data) v = gc(rng);
    return generate_dag(n, s.ord, s.alloc, c, s.xi, rng, false);
  };

  auto run_regime = [&](Regime regime, const char* extra_name) -> std::string {
    Rng rng(regime == Regime::infinite ? 61001 : 61002);

    // marginal-conditional simulator: iid draws from the prior
    GewekeStats prior_stats;
    {
      ChainState scratch;
      for (int it = 0; it < iters; ++it) {
        draw_prior_state(regime, rng, scratch);
        prior_stats.record(scratch);
      }
    }

    // successive-conditional simulator: sweep, then regenerate the data
    GewekeStats chain_stats;
    {
      ChainState s;
      draw_prior_state(regime, rng, s);
      SynthResult data = regenerate_data(s, rng);
      Dag dag = data.dag;
      s.dag = &dag;
      s.counts = block_counts(dag, s.ord, s.alloc, s.xi);
      for (int it = 0; it < iters; ++it) {
        sweep(s, priors, tuning, rng);
        SynthResult fresh = regenerate_data(s, rng);
        dag = fresh.dag;
        s.counts = block_counts(dag, s.ord, s.alloc, s.xi);
        chain_stats.record(s);
      }
    }

    auto compare = [&](const std::vector<double>& prior_xs, const std::vector<double>& chain_xs,
                       const std::string& name) -> std::string {
      auto moment = [&](int power) -> std::string {
        std::vector<double> ps(prior_xs.size()), cs(chain_xs.size());
        for (size_t i = 0; i < prior_xs.size(); ++i)
          ps[i] = power == 1 ? prior_xs[i] : prior_xs[i] * prior_xs[i];
        for (size_t i = 0; i < chain_xs.size(); ++i)
          cs[i] = power == 1 ? chain_xs[i] : chain_xs[i] * chain_xs[i];
        auto p = oracles::iid_stats(ps);
        auto c = oracles::batch_means(cs, 200);
        const double se = std::sqrt(p.se * p.se + c.se * c.se);
        if (std::abs(p.mean - c.mean) > 3.0 * se)
          return name + (power == 1 ? " mean" : " 2nd moment") + ": prior " +
                 std::to_string(p.mean) + " vs chain " + std::to_string(c.mean) + " (3se=" +
                 std::to_string(3.0 * se) + ")";
        return "";
      };
      if (auto e = moment(1); !e.empty()) return e;
      return moment(2);
    };

    if (auto e = compare(prior_stats.k_groups, chain_stats.k_groups, "K_n"); !e.empty()) return e;
    if (auto e = compare(prior_stats.a, chain_stats.a, "a"); !e.empty()) return e;
    if (auto e = compare(prior_stats.b, chain_stats.b, "b"); !e.empty()) return e;
    if (auto e = compare(prior_stats.extra, chain_stats.extra, extra_name); !e.empty()) return e;
    return "";
  };

  if (auto e = run_regime(Regime::infinite, "alpha"); !e.empty())
    return bad(std::string("infinite regime: ") + e);
  if (auto e = run_regime(Regime::finite, "k"); !e.empty())
    return bad(std::string("finite regime: ") + e);
  return ok("prior vs successive-conditional moments of K_n, a, b, alpha/k within 3se, both "
            "regimes, " + std::to_string(iters) + " samples each");
}

// ---------------------------------------------------------------------------
// C6: prior-only partition law with eta sampled (steps 1, 2, 7, 8)
// ---------------------------------------------------------------------------
Outcome c6_prior_partition_law() {
  const int n = 5;
  PriorConfig priors;
  priors.theta_plus_alpha_prior = {2.0, 2.0};
  priors.gamma_prior = {2.0, 2.0};
  priors.k_a = 1.0;
  priors.k_b = 0.3;

  auto partitions = oracles::all_partitions(n);

  auto reference = [&](Regime regime, const std::vector<int>& sizes) {
    const std::vector<double> psi_segments = oracles::positive_axis_segments(40.0);
    if (regime == Regime::infinite) {
      return oracles::integrate_segments(
          [&](double alpha) {
            return oracles::integrate_segments(
                [&](double psi) {
                  const double theta = psi - alpha;
                  if (!(theta > -alpha)) return 0.0;
                  return std::exp(log_eppf(sizes, PyParams::infinite_regime(alpha, theta)) +
                                  gamma_log_density(psi, 2.0, 2.0));
                },
                psi_segments, 1e-12);
          },
          {1e-9, 0.25, 0.5, 0.75, 1.0 - 1e-9}, 1e-9);
    }
    double total = 0.0;
    for (int k = static_cast<int>(sizes.size()); k <= 150; ++k) {
      total += std::exp(log_prior_k(k, priors.k_a, priors.k_b)) *
               oracles::integrate_segments(
                   [&](double gamma) {
                     return std::exp(log_eppf(sizes, PyParams::finite_regime(gamma, k)) +
                                     gamma_log_density(gamma, 2.0, 2.0));
                   },
                   psi_segments, 1e-12);
    }
    return total;
  };

  TuningConfig tuning;
  tuning.prior_only = true;
  tuning.restricted_gibbs_scans = 2;
  tuning.s_alpha = 0.2;
  tuning.s_theta = 0.6;
  tuning.s_gamma = 0.6;
  tuning.p_k = 0.4;

  Dag g(n, {});
  for (Regime regime : {Regime::infinite, Regime::finite}) {
    ChainState s;
    s.dag = &g;
    s.ord = OrderingState::identity(n);
    s.alloc = AllocationState::from_labels({0, 0, 0, 0, 0});
    s.xi = DegreeCorrections::ones(n);
    s.counts = block_counts(g, s.ord, s.alloc, s.xi);
    s.regime = regime;
    s.alpha = 0.3;
    s.theta = 1.0;
    s.gamma = 1.0;
    s.k = 2;

    Rng rng(regime == Regime::infinite ? 407 : 408);
    const int sweeps = 150000;
    std::vector<std::string> visited;
    visited.reserve(sweeps);
    for (int it = 0; it < sweeps; ++it) {
      gibbs_sweep_allocations(s, tuning, rng);
      split_merge_move(s, tuning, rng);
      update_py_params(s, priors, tuning, rng);
      visited.push_back(partition_key(s.alloc.z));
    }
    for (const auto& z : partitions) {
      const double expect = reference(regime, oracles::partition_sizes(z));
      const std::string key = partition_key(z);
      std::vector<double> indicator;
      indicator.reserve(sweeps);
      for (const auto& k : visited) indicator.push_back(k == key ? 1.0 : 0.0);
      auto stats = oracles::batch_means(indicator, 150);
      if (std::abs(stats.mean - expect) > 3.0 * stats.se + 3e-4)
        return bad(std::string(regime == Regime::infinite ? "infinite" : "finite") +
                   " regime partition " + key + ": freq " + std::to_string(stats.mean) +
                   " vs prior " + std::to_string(expect));
    }
  }
  return ok("52 partition frequencies match the eta-integrated EPPF within 3se, both regimes");
}

// ---------------------------------------------------------------------------
// C7: synthetic recovery on the planted model
// ---------------------------------------------------------------------------
Outcome c7_synthetic_recovery() {
  PriorConfig priors;
  priors.a_prior = {1.0, 1.0};
  priors.b_prior = {1.0, 1.0};
  priors.theta_plus_alpha_prior = {1.0, 0.1};

  TuningConfig tuning;
  tuning.iterations = 4000;
  tuning.burn_in = 1000;
  tuning.thinning = 10;
  tuning.leap_L = 10;
  tuning.split_merge_per_sweep = 2;
  tuning.restricted_gibbs_scans = 3;
  tuning.fix_xi = true;  // planted truth has xi = 1
  tuning.s_a = 0.5;
  tuning.s_b = 0.5;

  int successes = 0;
  std::ostringstream aris;
  for (int seed = 1; seed <= 10; ++seed) {
    PlantedResult planted = generate_planted(150, 3, 0.8, 0.02, 5000 + seed);
    tuning.seed = seed;
    PartitionSamples samples;
    run_chain(planted.dag, priors, tuning, ChainMode::infinite,
              [&](const TraceRecord& rec) { samples.push_back(rec.z); });
    Rng rng(900 + seed);
    std::vector<int> est = salso_estimate(samples, 0, 8, rng);
    const double ari = oracles::adjusted_rand_index(est, planted.truth.alloc.z);
    aris << (seed > 1 ? " " : "") << ari;
    if (ari >= 0.9) ++successes;
  }
  if (successes < 9)
    return bad("ARI >= 0.9 in only " + std::to_string(successes) + "/10 seeds (" + aris.str() + ")");
  return ok("ARI >= 0.9 in " + std::to_string(successes) + "/10 seeds (" + aris.str() + ")");
}

// ---------------------------------------------------------------------------
// C8: Bayes factor arithmetic
// ---------------------------------------------------------------------------
Outcome c8_bayes_factor() {
  const BayesFactor bf = bayes_factor(0.5602, 0.2);
  if (bf.boundary || std::abs(bf.value - 5.094) > 0.01)
    return bad("B_10(0.5602, 0.2) = " + std::to_string(bf.value));
  return ok("B_10(0.5602, 0.2) = " + std::to_string(bf.value) + " within 5.094 +- 0.01");
}

// ---------------------------------------------------------------------------
// C9: throughput report (non-blocking)
// ---------------------------------------------------------------------------
Outcome c9_throughput() {
  // SNA-scale synthetic stand-in: n = 135, about 1100 edges.
  PlantedResult planted = generate_planted(135, 3, 0.30, 0.0587, 4242);
  PriorConfig priors;
  priors.a_prior = {1.0, 1.0};
  priors.b_prior = {1.0, 1.0};
  TuningConfig tuning;
  tuning.iterations = 600;
  tuning.burn_in = 0;
  tuning.thinning = 600;  // keep recording cost out of the loop
  tuning.seed = 9;

  long long recorded = 0;
  const auto start = std::chrono::steady_clock::now();
  run_chain(planted.dag, priors, tuning, ChainMode::infinite,
            [&](const TraceRecord&) { ++recorded; });
  const auto stop = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(stop - start).count();
  const double rate = tuning.iterations / secs;
  std::ostringstream msg;
  msg << "n=135, " << planted.dag.edge_count() << " edges: " << rate << " iterations/s "
      << (rate >= 200.0 ? "(meets the 200 it/s target)" : "(below the 200 it/s target; non-blocking)");
  return ok(msg.str());
}

// ---------------------------------------------------------------------------
// C10: SALSO vs exhaustive minimizer at n=6
// ---------------------------------------------------------------------------
Outcome c10_salso_oracle() {
  auto partitions = oracles::all_partitions(6);
  if (partitions.size() != 203) return bad("partition enumeration is off");
  std::mt19937_64 sample_rng(3001);
  int optimal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    PartitionSamples samples;
    for (int i = 0; i < 50; ++i)
      samples.push_back(oracles::seq_crp_sample(6, 0.5, 1.2, sample_rng));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : partitions) best = std::min(best, expected_vi(z, samples));
    Rng rng(7000 + trial);
    std::vector<int> est = salso_estimate(samples, 0, 16, rng);
    if (expected_vi(est, samples) <= best + 1e-10) ++optimal;
  }
  if (optimal < 95) return bad("global optimum reached in only " + std::to_string(optimal) + "/100");
  return ok("global optimum reached in " + std::to_string(optimal) + "/100 seeded trials");
}

// ---------------------------------------------------------------------------
// C11: statistics-network cleaning (skipped without the data file)
// ---------------------------------------------------------------------------
Outcome c11_statistics_network() {
  std::vector<std::filesystem::path> candidates;
  if (const char* env = std::getenv("DAGSBM_STATS_EDGES")) candidates.emplace_back(env);
  candidates.emplace_back("data/statistics_citations.txt");
  candidates.emplace_back("../data/statistics_citations.txt");
  for (const auto& path : candidates) {
    if (!std::filesystem::exists(path)) continue;
    RawDigraph raw = read_edge_list_file(path);
    CleanResult clean = break_cycles(raw);
    ComponentResult comp = largest_weak_component(clean.dag);
    if (comp.dag.node_count() != 2248 || comp.dag.edge_count() != 5563)
      return bad("cleaned to " + std::to_string(comp.dag.node_count()) + " nodes / " +
                 std::to_string(comp.dag.edge_count()) + " edges, expected 2248 / 5563");
    return ok("largest component: 2248 nodes, 5563 edges");
  }
  return skip("raw statistics citation data not present (set DAGSBM_STATS_EDGES to enable)");
}

}  // namespace

int main() {
  struct Entry {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {"C1", "collapsed-likelihood exactness", c1_collapsed_exactness},
      {"C2", "EPPF normalization", c2_eppf_normalization},
      {"C3", "Gibbs full-conditional oracle", c3_gibbs_conditional},
      {"C4", "Leap-and-Shift symmetry", c4_leap_shift_symmetry},
      {"C5", "Geweke getting-it-right", c5_geweke},
      {"C6", "prior-only partition law", c6_prior_partition_law},
      {"C7", "synthetic recovery", c7_synthetic_recovery},
      {"C8", "Bayes-factor arithmetic", c8_bayes_factor},
      {"C9", "throughput target (non-blocking)", c9_throughput},
      {"C10", "SALSO exhaustive oracle", c10_salso_oracle},
      {"C11", "statistics-network cleaning", c11_statistics_network},
  };

  bool any_failed = false;
  for (const auto& entry : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.run();
    } catch (const std::exception& e) {
      outcome = bad(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = outcome.status == Outcome::Status::pass   ? "PASS"
                      : outcome.status == Outcome::Status::skip ? "SKIP"
                                                                : "FAIL";
    std::cout << "[" << tag << "] " << entry.id << " " << entry.name << " (" << secs << "s)";
    if (!outcome.detail.empty()) std::cout << " - " << outcome.detail;
    std::cout << std::endl;
    if (outcome.status == Outcome::Status::fail) any_failed = true;
  }
  return any_failed ? 1 : 0;
}
