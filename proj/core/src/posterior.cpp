#include "dagsbm/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dagsbm {

namespace {

int max_label(const std::vector<int>& z) {
  int mx = -1;
  for (int v : z) mx = std::max(mx, v);
  return mx;
}

void check_samples(const PartitionSamples& samples) {
  if (samples.empty()) throw std::invalid_argument("need at least one partition sample");
  const size_t n = samples.front().size();
  for (const auto& z : samples)
    if (z.size() != n) throw std::invalid_argument("partition samples have inconsistent lengths");
}

// x log x with the 0 log 0 = 0 convention.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Greedy VI minimizer working on n * f(x) = x log x scale. Holds, per
// sample, the contingency row of each node's sample-label against the
// candidate labels.
struct SalsoSearch {
  const PartitionSamples& samples;
  int n;
  int max_k;
  std::vector<int> sample_k;           // groups per sample
  std::vector<std::vector<int>> cont;  // per sample: sample_k x max_k counts
  std::vector<int> zhat;
  std::vector<int> nhat;

  SalsoSearch(const PartitionSamples& s, int mk)
      : samples(s), n(static_cast<int>(s.front().size())), max_k(mk), zhat(n, -1), nhat(mk, 0) {
    sample_k.reserve(s.size());
    cont.reserve(s.size());
    for (const auto& z : s) {
      sample_k.push_back(max_label(z) + 1);
      cont.emplace_back(static_cast<size_t>(sample_k.back()) * max_k, 0);
    }
  }

  int& cell(size_t s, int i, int c) { return cont[s][static_cast<size_t>(i) * max_k + c]; }

  // Objective change (up to the fixed per-sample entropy terms) of putting
  // node w into label c.
  double add_score(int w, int c) const {
    double d = xlogx(nhat[c] + 1.0) - xlogx(static_cast<double>(nhat[c]));
    double cross = 0.0;
    for (size_t s = 0; s < samples.size(); ++s) {
      const int m = cont[s][static_cast<size_t>(samples[s][w]) * max_k + c];
      cross += xlogx(m + 1.0) - xlogx(static_cast<double>(m));
    }
    return d - 2.0 * cross / static_cast<double>(samples.size());
  }

  void place(int w, int c) {
    zhat[w] = c;
    ++nhat[c];
    for (size_t s = 0; s < samples.size(); ++s) ++cell(s, samples[s][w], c);
  }

  void remove(int w) {
    const int c = zhat[w];
    zhat[w] = -1;
    --nhat[c];
    for (size_t s = 0; s < samples.size(); ++s) --cell(s, samples[s][w], c);
  }

  // Highest occupied label + 1; sweeps can leave holes, which stay eligible.
  int used_labels() const {
    int k = 0;
    for (int c = 0; c < max_k; ++c)
      if (nhat[c] > 0) k = c + 1;
    return k;
  }

  int best_label(int w) {
    const int k_used = used_labels();
    const int limit = std::min(max_k, k_used + 1);
    int best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (int c = 0; c < limit; ++c) {
      const double sc = add_score(w, c);
      if (sc < best_score - 1e-15) {
        best_score = sc;
        best = c;
      }
    }
    return best;
  }
};

std::vector<int> compact_labels(const std::vector<int>& z) {
  std::vector<int> remap(max_label(z) + 1, -1);
  std::vector<int> out(z.size());
  int next = 0;
  for (size_t i = 0; i < z.size(); ++i) {
    if (remap[z[i]] < 0) remap[z[i]] = next++;
    out[i] = remap[z[i]];
  }
  return out;
}

}  // namespace

Matrix similarity_matrix(const PartitionSamples& samples) {
  check_samples(samples);
  const int n = static_cast<int>(samples.front().size());
  Matrix sim(n, n, 0.0);
  std::vector<std::vector<int>> buckets;
  for (const auto& z : samples) {
    buckets.assign(max_label(z) + 1, {});
    for (int p = 0; p < n; ++p) buckets[z[p]].push_back(p);
    for (const auto& group : buckets)
      for (size_t i = 0; i < group.size(); ++i)
        for (size_t j = i; j < group.size(); ++j) {
          sim.at(group[i], group[j]) += 1.0;
          if (i != j) sim.at(group[j], group[i]) += 1.0;
        }
  }
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (double& v : sim.data) v *= inv;
  return sim;
}

double vi_distance(const std::vector<int>& z1, const std::vector<int>& z2) {
  if (z1.size() != z2.size()) throw std::invalid_argument("vi_distance: length mismatch");
  const int n = static_cast<int>(z1.size());
  if (n == 0) throw std::invalid_argument("vi_distance: empty partitions");
  const int k1 = max_label(z1) + 1, k2 = max_label(z2) + 1;
  std::vector<int> joint(static_cast<size_t>(k1) * k2, 0), row(k1, 0), col(k2, 0);
  for (int p = 0; p < n; ++p) {
    ++joint[static_cast<size_t>(z1[p]) * k2 + z2[p]];
    ++row[z1[p]];
    ++col[z2[p]];
  }
  const double dn = n;
  double vi = 0.0;
  for (int c : row) vi += xlogx(c / dn);
  for (int c : col) vi += xlogx(c / dn);
  for (int c : joint) vi -= 2.0 * xlogx(c / dn);
  // identical partitions cancel term by term; snap the rounding residue so
  // equality up to relabeling gives exactly zero (the smallest genuine VI is
  // orders of magnitude larger for any feasible n)
  return vi < 1e-12 ? 0.0 : vi;
}

double expected_vi(const std::vector<int>& candidate, const PartitionSamples& samples) {
  check_samples(samples);
  double total = 0.0;
  for (const auto& z : samples) total += vi_distance(z, candidate);
  return total / static_cast<double>(samples.size());
}

std::vector<int> salso_estimate(const PartitionSamples& samples, int max_k, int runs, Rng& rng) {
  check_samples(samples);
  const int n = static_cast<int>(samples.front().size());
  if (runs < 1) throw std::invalid_argument("salso_estimate: need at least one run");
  if (max_k <= 0) {
    max_k = 1;
    for (const auto& z : samples) max_k = std::max(max_k, max_label(z) + 1);
  }

  std::vector<int> best;
  double best_loss = std::numeric_limits<double>::infinity();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int run = 0; run < runs; ++run) {
    std::shuffle(order.begin(), order.end(), rng);
    SalsoSearch search(samples, max_k);
    for (int w : order) search.place(w, search.best_label(w));

    constexpr int max_sweeps = 50;
    for (int pass = 0; pass < max_sweeps; ++pass) {
      bool changed = false;
      for (int w = 0; w < n; ++w) {
        const int old = search.zhat[w];
        search.remove(w);
        const int now = search.best_label(w);
        search.place(w, now);
        if (now != old) changed = true;
      }
      if (!changed) break;
    }

    std::vector<int> candidate = compact_labels(search.zhat);
    const double loss = expected_vi(candidate, samples);
    if (loss < best_loss - 1e-12) {
      best_loss = loss;
      best = std::move(candidate);
    }
  }

  // The minimizer should never do worse than the best partition actually
  // sampled; evaluate those as candidates too.
  for (const auto& z : samples) {
    const double loss = expected_vi(z, samples);
    if (loss < best_loss - 1e-12) {
      best_loss = loss;
      best = compact_labels(z);
    }
  }
  return best;
}

OrderingSummary ordering_density(const std::vector<std::vector<int>>& sigma_samples) {
  if (sigma_samples.empty()) throw std::invalid_argument("ordering_density: no samples");
  const int n = static_cast<int>(sigma_samples.front().size());
  OrderingSummary out;
  out.density = Matrix(n, n, 0.0);
  out.mean_position.assign(n, 0.0);
  for (const auto& sigma : sigma_samples) {
    if (static_cast<int>(sigma.size()) != n)
      throw std::invalid_argument("ordering_density: inconsistent sample lengths");
    for (int r = 0; r < n; ++r) {
      out.density.at(sigma[r], r) += 1.0;
      out.mean_position[sigma[r]] += r;
    }
  }
  const double inv = 1.0 / static_cast<double>(sigma_samples.size());
  for (double& v : out.density.data) v *= inv;
  for (double& v : out.mean_position) v *= inv;
  return out;
}

}  // namespace dagsbm
