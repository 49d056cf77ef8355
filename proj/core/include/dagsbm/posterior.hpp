#pragma once

#include <vector>

#include "dagsbm/util.hpp"

namespace dagsbm {

// Retained allocation vectors, one per recorded iteration.
using PartitionSamples = std::vector<std::vector<int>>;

// Posterior co-clustering probabilities: entry (p, q) is the fraction of
// samples with z_p == z_q. Symmetric with unit diagonal.
Matrix similarity_matrix(const PartitionSamples& samples);

// Variation of information between two partitions, in nats. Zero iff they
// agree up to relabeling.
double vi_distance(const std::vector<int>& z1, const std::vector<int>& z2);

// Mean VI distance from `candidate` to the samples.
double expected_vi(const std::vector<int>& candidate, const PartitionSamples& samples);

// Greedy sequential allocation plus reallocation sweeps minimizing the
// sample-averaged VI loss, best of `runs` random restarts; the best sampled
// partition is also evaluated as a candidate so the returned loss never
// exceeds it. max_k <= 0 defaults to the largest sampled group count.
std::vector<int> salso_estimate(const PartitionSamples& samples, int max_k, int runs, Rng& rng);

// Position densities from retained orderings: entry (p, r) is the fraction
// of samples placing node p at position r. Rows sum to one.
struct OrderingSummary {
  Matrix density;
  std::vector<double> mean_position;  // 0-based
};
OrderingSummary ordering_density(const std::vector<std::vector<int>>& sigma_samples);

}  // namespace dagsbm
