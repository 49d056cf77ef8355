#include "dagsbm/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dagsbm {

bool AllocationState::compact() const {
  std::vector<int> counted(sizes.size(), 0);
  for (int label : z) {
    if (label < 0 || label >= group_count()) return false;
    ++counted[label];
  }
  for (int g = 0; g < group_count(); ++g)
    if (counted[g] != sizes[g] || sizes[g] == 0) return false;
  return true;
}

AllocationState AllocationState::from_labels(const std::vector<int>& labels) {
  AllocationState alloc;
  alloc.z.resize(labels.size());
  std::vector<int> remap;
  for (size_t p = 0; p < labels.size(); ++p) {
    int raw = labels[p];
    int found = -1;
    for (size_t g = 0; g < remap.size(); ++g)
      if (remap[g] == raw) {
        found = static_cast<int>(g);
        break;
      }
    if (found < 0) {
      found = static_cast<int>(remap.size());
      remap.push_back(raw);
      alloc.sizes.push_back(0);
    }
    alloc.z[p] = found;
    ++alloc.sizes[found];
  }
  return alloc;
}

long long BlockCounts::e_total() const { return std::accumulate(e.begin(), e.end(), 0LL); }

double BlockCounts::m_total() const { return std::accumulate(m.begin(), m.end(), 0.0); }

void BlockCounts::grow() {
  BlockCounts bigger(k + 1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      bigger.e_at(i, j) = e_at(i, j);
      bigger.m_at(i, j) = m_at(i, j);
    }
  *this = std::move(bigger);
}

void BlockCounts::swap_remove(int label) {
  const int last = k - 1;
  if (label != last) {
    for (int j = 0; j < k; ++j) {
      e_at(label, j) = e_at(last, j);
      m_at(label, j) = m_at(last, j);
    }
    for (int i = 0; i < k; ++i) {
      e_at(i, label) = e_at(i, last);
      m_at(i, label) = m_at(i, last);
    }
  }
  BlockCounts smaller(last);
  for (int i = 0; i < last; ++i)
    for (int j = 0; j < last; ++j) {
      smaller.e_at(i, j) = e_at(i, j);
      smaller.m_at(i, j) = m_at(i, j);
    }
  *this = std::move(smaller);
}

double BlockCounts::max_abs_diff(const BlockCounts& other) const {
  if (k != other.k) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    worst = std::max(worst, std::abs(m[i] - other.m[i]));
    worst = std::max(worst, static_cast<double>(std::llabs(e[i] - other.e[i])));
  }
  return worst;
}

BlockCounts block_counts(const Dag& g, const OrderingState& ord, const AllocationState& alloc,
                         const DegreeCorrections& xi) {
  if (!check_topological(g, ord))
    throw std::invalid_argument("block_counts: ordering is not topological");
  const int n = g.node_count();
  const int K = alloc.group_count();
  BlockCounts counts(K);

  for (const auto& e : g.edges()) counts.e_at(alloc.z[e.src], alloc.z[e.dst]) += e.count;

  // Sweep positions in order, accumulating per-group xi totals of everything
  // seen so far; each new node closes the dyads (earlier, here).
  std::vector<double> seen(K, 0.0);
  for (int r = 0; r < n; ++r) {
    const int q = ord.sigma[r];
    const int zq = alloc.z[q];
    for (int i = 0; i < K; ++i) counts.m_at(i, zq) += seen[i] * xi.xi[q];
    seen[zq] += xi.xi[q];
  }
  return counts;
}

NodeProfile node_profile(const Dag& g, const OrderingState& ord, const AllocationState& alloc,
                         const DegreeCorrections& xi, int position) {
  const int n = g.node_count();
  const int K = alloc.group_count();
  NodeProfile prof;
  prof.position = position;
  prof.node = ord.sigma[position];
  prof.m_out.assign(K, 0.0);
  prof.m_in.assign(K, 0.0);
  prof.e_out.assign(K, 0);
  prof.e_in.assign(K, 0);

  for (int r = 0; r < position; ++r) {
    const int p = ord.sigma[r];
    prof.m_in[alloc.z[p]] += xi.xi[p];
  }
  for (int r = position + 1; r < n; ++r) {
    const int q = ord.sigma[r];
    prof.m_out[alloc.z[q]] += xi.xi[q];
  }
  // With a topological ordering all out-edges point to later positions and
  // all in-edges come from earlier ones.
  for (const auto& [q, c] : g.out(prof.node)) prof.e_out[alloc.z[q]] += c;
  for (const auto& [p, c] : g.in(prof.node)) prof.e_in[alloc.z[p]] += c;
  return prof;
}

DetachResult detach_node(BlockCounts& counts, AllocationState& alloc, NodeProfile& prof,
                         double xi_w) {
  const int k = alloc.z[prof.node];
  const int K = counts.k;
  DetachResult res;
  res.old_label = k;

  for (int j = 0; j < K; ++j) {
    counts.m_at(k, j) -= xi_w * prof.m_out[j];
    counts.e_at(k, j) -= prof.e_out[j];
  }
  for (int i = 0; i < K; ++i) {
    counts.m_at(i, k) -= xi_w * prof.m_in[i];
    counts.e_at(i, k) -= prof.e_in[i];
  }

  alloc.z[prof.node] = -1;
  if (--alloc.sizes[k] == 0) {
    res.removed_group = true;
    const int last = K - 1;
    res.moved_label = last;
    counts.swap_remove(k);
    alloc.sizes[k] = alloc.sizes[last];
    alloc.sizes.pop_back();
    if (k != last)
      for (int& label : alloc.z)
        if (label == last) label = k;
    auto remap = [&](auto& v) {
      if (k != last) v[k] = v[last];
      v.pop_back();
    };
    remap(prof.m_out);
    remap(prof.m_in);
    remap(prof.e_out);
    remap(prof.e_in);
  }
  return res;
}

void attach_node(BlockCounts& counts, AllocationState& alloc, NodeProfile& prof, double xi_w,
                 int label) {
  const int K = counts.k;
  if (label < 0 || label > K) throw std::invalid_argument("attach_node: label out of range");
  if (label == K) {
    counts.grow();
    alloc.sizes.push_back(0);
    prof.m_out.push_back(0.0);
    prof.m_in.push_back(0.0);
    prof.e_out.push_back(0);
    prof.e_in.push_back(0);
  }
  const int Knew = counts.k;
  for (int j = 0; j < Knew; ++j) {
    counts.m_at(label, j) += xi_w * prof.m_out[j];
    counts.e_at(label, j) += prof.e_out[j];
  }
  for (int i = 0; i < Knew; ++i) {
    counts.m_at(i, label) += xi_w * prof.m_in[i];
    counts.e_at(i, label) += prof.e_in[i];
  }
  alloc.z[prof.node] = label;
  ++alloc.sizes[label];
}

}  // namespace dagsbm
