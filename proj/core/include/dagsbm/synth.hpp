#pragma once

#include <cstdint>

#include "dagsbm/state.hpp"
#include "dagsbm/util.hpp"

namespace dagsbm {

struct SynthResult {
  Dag dag;
  // Raw Poisson draws for every dyad that came up positive, regardless of
  // binarization; total_count sums them.
  std::vector<Edge> raw_counts;
  long long total_count = 0;
};

// Forward simulation: for each position-ordered dyad p < q draw a Poisson
// count with mean xi_p xi_q C[z_p][z_q]; the lower triangle stays empty, so
// the result is a DAG by construction. With binarize the kept edges carry
// count 1 (presence/absence data); otherwise they carry the raw counts.
SynthResult generate_dag(int n, const OrderingState& ord, const AllocationState& alloc,
                         const Matrix& c, const DegreeCorrections& xi, Rng& rng,
                         bool binarize = true);

struct PlantedTruth {
  AllocationState alloc;
  OrderingState ord;
  Matrix c;
};

struct PlantedResult {
  Dag dag;
  PlantedTruth truth;
};

// Equal-sized contiguous groups, identity ordering, xi = 1, C with `within`
// on the diagonal and `between` off it. Binarized output.
PlantedResult generate_planted(int n, int k, double within, double between, std::uint64_t seed);

}  // namespace dagsbm
