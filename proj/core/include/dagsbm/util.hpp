#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dagsbm {

using Rng = std::mt19937_64;

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// Raised when a chain reaches a state that should be unreachable with valid
// hyperparameters (all-zero weights, NaN log densities, drifted counts).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed input files or inconsistent data sets.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Dense row-major matrix, just enough for K x K block matrices and
// n x n posterior summaries.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {}

  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
};

// Samples an index proportional to exp(log_w[i]); -inf entries carry zero
// weight. Throws NumericError if every entry is -inf.
inline int sample_from_log_weights(const std::vector<double>& log_w, Rng& rng) {
  double mx = neg_inf;
  for (double w : log_w) mx = std::max(mx, w);
  if (mx == neg_inf) throw NumericError("sample_from_log_weights: all weights are zero");
  double total = 0.0;
  for (double w : log_w) total += std::exp(w - mx);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng) * total;
  double acc = 0.0;
  for (size_t i = 0; i < log_w.size(); ++i) {
    acc += std::exp(log_w[i] - mx);
    if (u <= acc) return static_cast<int>(i);
  }
  return static_cast<int>(log_w.size()) - 1;
}

inline bool accept_log_ratio(double log_ratio, Rng& rng) {
  if (log_ratio >= 0.0) return true;
  if (log_ratio == neg_inf) return false;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return std::log(unif(rng)) < log_ratio;
}

}  // namespace dagsbm
