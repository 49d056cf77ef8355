#include "dagsbm/synth.hpp"

#include <stdexcept>

namespace dagsbm {

SynthResult generate_dag(int n, const OrderingState& ord, const AllocationState& alloc,
                         const Matrix& c, const DegreeCorrections& xi, Rng& rng, bool binarize) {
  if (ord.size() != n || alloc.node_count() != n || static_cast<int>(xi.xi.size()) != n)
    throw std::invalid_argument("generate_dag: dimension mismatch");
  const int K = alloc.group_count();
  if (c.rows != K || c.cols != K)
    throw std::invalid_argument("generate_dag: C dimensions do not match the group count");
  for (double v : c.data)
    if (v < 0.0) throw std::invalid_argument("generate_dag: C entries must be nonnegative");

  std::vector<Edge> edges, raw;
  long long total = 0;
  for (int p = 0; p < n - 1; ++p) {
    const int u = ord.sigma[p];
    for (int q = p + 1; q < n; ++q) {
      const int v = ord.sigma[q];
      const double mean = xi.xi[u] * xi.xi[v] * c.at(alloc.z[u], alloc.z[v]);
      int y = 0;
      if (mean > 0.0) {
        std::poisson_distribution<int> pois(mean);
        y = pois(rng);
      }
      if (y > 0) {
        raw.push_back({u, v, y});
        edges.push_back({u, v, binarize ? 1 : y});
        total += y;
      }
    }
  }
  return SynthResult{Dag(n, std::move(edges)), std::move(raw), total};
}

PlantedResult generate_planted(int n, int k, double within, double between, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("generate_planted: need 1 <= k <= n");
  if (!(within > between) || between < 0.0)
    throw std::invalid_argument("generate_planted: need within > between >= 0");

  PlantedTruth truth;
  truth.ord = OrderingState::identity(n);
  truth.alloc.z.resize(n);
  truth.alloc.sizes.assign(k, 0);
  // Contiguous groups of size n/k, the remainder spread over the first ones.
  const int base = n / k, extra = n % k;
  int node = 0;
  for (int g = 0; g < k; ++g) {
    const int size = base + (g < extra ? 1 : 0);
    for (int i = 0; i < size; ++i) truth.alloc.z[node++] = g;
    truth.alloc.sizes[g] = size;
  }
  truth.c = Matrix(k, k, between);
  for (int g = 0; g < k; ++g) truth.c.at(g, g) = within;

  Rng rng(seed);
  SynthResult sim =
      generate_dag(n, truth.ord, truth.alloc, truth.c, DegreeCorrections::ones(n), rng, true);
  return PlantedResult{std::move(sim.dag), std::move(truth)};
}

}  // namespace dagsbm
