#include "dagsbm/dag.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace dagsbm {

namespace {

// Kahn's algorithm over an explicit edge list; returns the ordering via
// `sigma` and leaves the stuck nodes in `remaining` when a cycle exists.
bool kahn_impl(int n, const std::vector<Edge>& edges, std::vector<int>& sigma,
               std::vector<int>& remaining) {
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const auto& e : edges) {
    out[e.src].push_back(e.dst);
    ++indeg[e.dst];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int p = 0; p < n; ++p)
    if (indeg[p] == 0) ready.push(p);

  sigma.clear();
  sigma.reserve(n);
  while (!ready.empty()) {
    int p = ready.top();
    ready.pop();
    sigma.push_back(p);
    for (int q : out[p])
      if (--indeg[q] == 0) ready.push(q);
  }
  if (static_cast<int>(sigma.size()) == n) return true;

  remaining.clear();
  std::vector<char> placed(n, 0);
  for (int p : sigma) placed[p] = 1;
  for (int p = 0; p < n; ++p)
    if (!placed[p]) remaining.push_back(p);
  return false;
}

void sort_and_validate_edges(int n, std::vector<Edge>& edges) {
  if (n <= 0) throw std::invalid_argument("graph must have at least one node");
  for (const auto& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.src == e.dst) throw std::invalid_argument("self-loop not allowed");
    if (e.count < 1) throw std::invalid_argument("edge count must be positive");
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  for (size_t i = 1; i < edges.size(); ++i)
    if (edges[i].src == edges[i - 1].src && edges[i].dst == edges[i - 1].dst)
      throw std::invalid_argument("duplicate edge");
}

}  // namespace

OrderingState OrderingState::identity(int n) {
  OrderingState ord;
  ord.sigma.resize(n);
  ord.phi.resize(n);
  for (int i = 0; i < n; ++i) {
    ord.sigma[i] = i;
    ord.phi[i] = i;
  }
  return ord;
}

OrderingState OrderingState::from_sigma(std::vector<int> sigma) {
  OrderingState ord;
  const int n = static_cast<int>(sigma.size());
  ord.phi.assign(n, -1);
  for (int r = 0; r < n; ++r) {
    int p = sigma[r];
    if (p < 0 || p >= n || ord.phi[p] != -1)
      throw std::invalid_argument("sigma is not a permutation");
    ord.phi[p] = r;
  }
  ord.sigma = std::move(sigma);
  return ord;
}

bool OrderingState::consistent() const {
  if (sigma.size() != phi.size()) return false;
  const int n = size();
  for (int r = 0; r < n; ++r) {
    if (sigma[r] < 0 || sigma[r] >= n) return false;
    if (phi[sigma[r]] != r) return false;
  }
  return true;
}

Dag::Dag(int n, std::vector<Edge> edges, std::vector<std::string> node_labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(node_labels)) {
  sort_and_validate_edges(n_, edges_);
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw std::invalid_argument("label vector size mismatch");

  std::vector<int> sigma, remaining;
  if (!kahn_impl(n_, edges_, sigma, remaining)) throw CycleError(std::move(remaining));

  out_.resize(n_);
  in_.resize(n_);
  wdeg_.assign(n_, 0);
  for (const auto& e : edges_) {
    out_[e.src].emplace_back(e.dst, e.count);
    in_[e.dst].emplace_back(e.src, e.count);
    wdeg_[e.src] += e.count;
    wdeg_[e.dst] += e.count;
    total_count_ += e.count;
    if (e.count != 1) binary_ = false;
  }
  for (auto& v : in_) std::sort(v.begin(), v.end());
}

RawDigraph parse_edge_list(std::istream& in, EdgeListFormat format) {
  RawDigraph g;
  std::unordered_map<std::string, int> index_of;
  std::map<std::pair<int, int>, bool> seen;
  std::string line;
  int lineno = 0;
  auto intern = [&](const std::string& tok) {
    auto it = index_of.find(tok);
    if (it != index_of.end()) return it->second;
    int id = static_cast<int>(g.node_labels.size());
    index_of.emplace(tok, id);
    g.node_labels.push_back(tok);
    return id;
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // strip whitespace-only lines
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

    bool use_csv = format == EdgeListFormat::csv ||
                   (format == EdgeListFormat::autodetect && line.find(',') != std::string::npos);
    if (use_csv)
      for (auto& c : line)
        if (c == ',') c = ' ';

    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw DataError("line " + std::to_string(lineno) + ": expected exactly two tokens");
    int p = intern(a), q = intern(b);
    if (p == q) throw DataError("line " + std::to_string(lineno) + ": self-loop '" + a + "'");
    seen[{p, q}] = true;
  }
  if (seen.empty()) throw DataError("empty edge list");

  g.n = static_cast<int>(g.node_labels.size());
  g.edges.reserve(seen.size());
  for (const auto& [pq, _] : seen) g.edges.push_back({pq.first, pq.second, 1});
  return g;
}

void serialize_edge_list(std::ostream& out, const RawDigraph& g) {
  for (const auto& e : g.edges) out << g.label(e.src) << ' ' << g.label(e.dst) << '\n';
}

void serialize_edge_list(std::ostream& out, const Dag& g) {
  for (const auto& e : g.edges()) out << g.label(e.src) << ' ' << g.label(e.dst) << '\n';
}

OrderingState kahn_sort(const RawDigraph& g) {
  std::vector<int> sigma, remaining;
  if (!kahn_impl(g.n, g.edges, sigma, remaining)) throw CycleError(std::move(remaining));
  return OrderingState::from_sigma(std::move(sigma));
}

OrderingState kahn_sort(const Dag& g) {
  std::vector<int> sigma, remaining;
  kahn_impl(g.node_count(), g.edges(), sigma, remaining);  // cannot fail: Dag is acyclic
  return OrderingState::from_sigma(std::move(sigma));
}

bool check_topological(const Dag& g, const OrderingState& ord) {
  if (ord.size() != g.node_count())
    throw std::invalid_argument("ordering length does not match graph");
  for (const auto& e : g.edges())
    if (ord.phi[e.src] >= ord.phi[e.dst]) return false;
  return true;
}

CleanResult break_cycles(const RawDigraph& g) {
  std::vector<Edge> edges = g.edges;
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  std::vector<RemovedEdge> removed;

  // Mutual pairs first: keep the edge whose source has the smaller index.
  {
    auto has_edge = [&](int p, int q) {
      Edge probe{p, q, 1};
      return std::binary_search(
          edges.begin(), edges.end(), probe,
          [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
    };
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const auto& e : edges) {
      if (e.src > e.dst && has_edge(e.dst, e.src)) {
        removed.push_back({e.src, e.dst, "mutual-pair"});
      } else {
        kept.push_back(e);
      }
    }
    edges.swap(kept);
  }

  // Remaining longer cycles: drop the first back edge found by an
  // index-ordered DFS, repeat until Kahn succeeds.
  std::vector<int> sigma, remaining;
  while (!kahn_impl(g.n, edges, sigma, remaining)) {
    std::vector<std::vector<int>> out(g.n);
    for (const auto& e : edges) out[e.src].push_back(e.dst);
    for (auto& v : out) std::sort(v.begin(), v.end());

    // colors: 0 unvisited, 1 on stack, 2 done
    std::vector<char> color(g.n, 0);
    int back_src = -1, back_dst = -1;
    std::vector<std::pair<int, size_t>> stack;
    for (int start = 0; start < g.n && back_src < 0; ++start) {
      if (color[start] != 0) continue;
      stack.assign(1, {start, 0});
      color[start] = 1;
      while (!stack.empty() && back_src < 0) {
        auto& [u, next] = stack.back();
        if (next < out[u].size()) {
          int v = out[u][next++];
          if (color[v] == 1) {
            back_src = u;
            back_dst = v;
          } else if (color[v] == 0) {
            color[v] = 1;
            stack.push_back({v, 0});
          }
        } else {
          color[u] = 2;
          stack.pop_back();
        }
      }
    }
    if (back_src < 0) throw NumericError("break_cycles: cyclic graph but no back edge found");
    edges.erase(std::find_if(edges.begin(), edges.end(), [&](const Edge& e) {
      return e.src == back_src && e.dst == back_dst;
    }));
    removed.push_back({back_src, back_dst, "cycle"});
  }

  return CleanResult{Dag(g.n, std::move(edges), g.node_labels), std::move(removed)};
}

ComponentResult largest_weak_component(const Dag& g) {
  const int n = g.node_count();
  if (n == 0) throw std::invalid_argument("empty graph");

  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    int a = find(e.src), b = find(e.dst);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<int> comp_size(n, 0);
  for (int i = 0; i < n; ++i) ++comp_size[find(i)];
  // Roots are the minimum index of their component, so the smallest-root
  // tie-break is the smallest-minimum-node-index rule.
  int best_root = 0;
  for (int r = 0; r < n; ++r)
    if (comp_size[r] > comp_size[best_root]) best_root = r;

  std::vector<int> new_index(n, -1), original;
  for (int i = 0; i < n; ++i) {
    if (find(i) == best_root) {
      new_index[i] = static_cast<int>(original.size());
      original.push_back(i);
    }
  }

  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (new_index[e.src] >= 0 && new_index[e.dst] >= 0)
      edges.push_back({new_index[e.src], new_index[e.dst], e.count});

  std::vector<std::string> labels;
  if (!g.node_labels().empty()) {
    labels.reserve(original.size());
    for (int old : original) labels.push_back(g.node_labels()[old]);
  }
  return ComponentResult{Dag(static_cast<int>(original.size()), std::move(edges), std::move(labels)),
                         std::move(original)};
}

}  // namespace dagsbm
