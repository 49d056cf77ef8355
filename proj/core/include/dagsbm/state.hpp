#pragma once

#include <vector>

#include "dagsbm/dag.hpp"
#include "dagsbm/util.hpp"

namespace dagsbm {

// Group labels 0..K-1, every label occupied, sizes sum to n.
struct AllocationState {
  std::vector<int> z;
  std::vector<int> sizes;

  int group_count() const { return static_cast<int>(sizes.size()); }
  int node_count() const { return static_cast<int>(z.size()); }
  bool compact() const;

  // Builds from an arbitrary label vector, compacting labels in
  // first-appearance order.
  static AllocationState from_labels(const std::vector<int>& labels);
};

// Per-node positive multipliers xi_p.
struct DegreeCorrections {
  std::vector<double> xi;

  static DegreeCorrections ones(int n) { return DegreeCorrections{std::vector<double>(n, 1.0)}; }
  bool all_positive() const {
    for (double x : xi)
      if (!(x > 0.0)) return false;
    return true;
  }
};

// K x K matrices E (edge counts between groups) and M (xi-weighted dyad
// counts between groups, earlier position first).
struct BlockCounts {
  int k = 0;
  std::vector<long long> e;
  std::vector<double> m;

  BlockCounts() = default;
  explicit BlockCounts(int groups) : k(groups), e(static_cast<size_t>(groups) * groups, 0),
                                     m(static_cast<size_t>(groups) * groups, 0.0) {}

  long long& e_at(int i, int j) { return e[static_cast<size_t>(i) * k + j]; }
  long long e_at(int i, int j) const { return e[static_cast<size_t>(i) * k + j]; }
  double& m_at(int i, int j) { return m[static_cast<size_t>(i) * k + j]; }
  double m_at(int i, int j) const { return m[static_cast<size_t>(i) * k + j]; }

  long long e_total() const;
  double m_total() const;

  // Appends an empty row and column for a new group.
  void grow();
  // Removes row/column `label` by moving the last row/column into its slot.
  void swap_remove(int label);

  double max_abs_diff(const BlockCounts& other) const;  // inf on shape mismatch
};

// From-scratch E and M given the full state. Throws if ord is not
// topological for g.
BlockCounts block_counts(const Dag& g, const OrderingState& ord, const AllocationState& alloc,
                         const DegreeCorrections& xi);

// Dyad contributions of the node at one position, bucketed by the group of
// the opposite endpoint. m_out[j] = sum over later positions q of
// xi_q * I(z_q = j); e_out[j] = outgoing edge count into group j; the *_in
// variants cover earlier positions / incoming edges.
struct NodeProfile {
  int node = -1;
  int position = -1;
  std::vector<double> m_out, m_in;
  std::vector<long long> e_out, e_in;
};

NodeProfile node_profile(const Dag& g, const OrderingState& ord, const AllocationState& alloc,
                         const DegreeCorrections& xi, int position);

struct DetachResult {
  int old_label = -1;
  bool removed_group = false;
  // When removed_group, the former last label now occupies old_label's slot.
  int moved_label = -1;
};

// Removes the contributions of the node described by `prof` from counts and
// allocation; compacts labels via swap-remove when its group empties. The
// profile's group-indexed vectors are remapped alongside so it stays usable
// for the subsequent attach.
DetachResult detach_node(BlockCounts& counts, AllocationState& alloc, NodeProfile& prof,
                         double xi_w);

// Adds the node's contributions under `label`; label == K opens a new group.
void attach_node(BlockCounts& counts, AllocationState& alloc, NodeProfile& prof, double xi_w,
                 int label);

}  // namespace dagsbm
