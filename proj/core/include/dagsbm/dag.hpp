#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dagsbm/util.hpp"

namespace dagsbm {

// Thrown when a topological sort is requested for a graph that has none.
// `nodes` holds the 0-based indices left over when the sort stalled.
struct CycleError : std::runtime_error {
  std::vector<int> nodes;
  explicit CycleError(std::vector<int> remaining)
      : std::runtime_error("graph contains a directed cycle"), nodes(std::move(remaining)) {}
};

struct Edge {
  int src = 0;
  int dst = 0;
  int count = 1;  // multiplicity; 1 for binary data

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed graph as parsed, before any cleaning: may contain cycles and
// multiple weak components. No self-loops, no duplicate edges.
struct RawDigraph {
  int n = 0;
  std::vector<Edge> edges;               // sorted by (src, dst)
  std::vector<std::string> node_labels;  // original identifiers; may be empty

  std::string label(int p) const {
    return node_labels.empty() ? std::to_string(p + 1) : node_labels[p];
  }
};

// Permutation sigma (position -> node) together with its inverse
// phi (node -> position). All indices 0-based.
struct OrderingState {
  std::vector<int> sigma;
  std::vector<int> phi;

  OrderingState() = default;
  static OrderingState identity(int n);
  static OrderingState from_sigma(std::vector<int> sigma);

  int size() const { return static_cast<int>(sigma.size()); }
  bool consistent() const;

  friend bool operator==(const OrderingState&, const OrderingState&) = default;
};

// Immutable directed acyclic graph. Construction validates: indices in
// range, no self-loops, no duplicates, acyclic (Kahn). Edge counts > 1 are
// allowed internally (Poisson data); file input is always binary.
class Dag {
 public:
  Dag(int n, std::vector<Edge> edges, std::vector<std::string> node_labels = {});

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  long long total_count() const { return total_count_; }
  bool is_binary() const { return binary_; }

  const std::vector<Edge>& edges() const { return edges_; }
  // (neighbor, count) pairs, sorted by neighbor.
  const std::vector<std::pair<int, int>>& out(int p) const { return out_[p]; }
  const std::vector<std::pair<int, int>>& in(int p) const { return in_[p]; }
  // in-count + out-count of node p, weighted by multiplicities.
  long long weighted_degree(int p) const { return wdeg_[p]; }

  const std::vector<std::string>& node_labels() const { return labels_; }
  std::string label(int p) const { return labels_.empty() ? std::to_string(p + 1) : labels_[p]; }

 private:
  int n_ = 0;
  bool binary_ = true;
  long long total_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> out_;
  std::vector<std::vector<std::pair<int, int>>> in_;
  std::vector<long long> wdeg_;
  std::vector<std::string> labels_;
};

enum class EdgeListFormat { autodetect, two_column, csv };

// Reads "src dst" or "src,dst" lines; '#' starts a comment. Identifiers are
// arbitrary tokens mapped to 0-based indices in first-appearance order, with
// the original strings kept as labels. Duplicate edges collapse; self-loops
// and malformed lines throw DataError.
RawDigraph parse_edge_list(std::istream& in, EdgeListFormat format = EdgeListFormat::autodetect);
void serialize_edge_list(std::ostream& out, const RawDigraph& g);
void serialize_edge_list(std::ostream& out, const Dag& g);

// Deterministic topological sort, smallest node index first among ties.
// Throws CycleError listing the nodes left when no zero-in-degree node
// remains.
OrderingState kahn_sort(const RawDigraph& g);
OrderingState kahn_sort(const Dag& g);

// True iff every edge goes from an earlier to a later position under ord.
bool check_topological(const Dag& g, const OrderingState& ord);

struct RemovedEdge {
  int src = 0;
  int dst = 0;
  std::string reason;  // "mutual-pair" or "cycle"
};

struct CleanResult {
  Dag dag;
  std::vector<RemovedEdge> removed;
};

// Makes g acyclic: drops one edge of every mutual pair (keeping the one with
// the smaller source index), then removes DFS-detected cycle-closing edges
// until Kahn's algorithm succeeds. Every removal is logged.
CleanResult break_cycles(const RawDigraph& g);

struct ComponentResult {
  Dag dag;
  std::vector<int> original_index;  // original_index[new] = old node index
};

// Induced subgraph on the largest weakly connected node set (ties broken by
// the smallest member index), relabeled 0..n'-1 preserving relative order.
ComponentResult largest_weak_component(const Dag& g);

}  // namespace dagsbm
