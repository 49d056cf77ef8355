#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "dagsbm/dag.hpp"
#include "dagsbm/sampler.hpp"
#include "dagsbm/selection.hpp"
#include "dagsbm/util.hpp"

namespace dagsbm {

// Flat "key value" text files; '#' starts a comment, the value is the rest
// of the line. Used for configs, pseudoprior fits, run metadata and truth
// sidecars.
using KeyValues = std::map<std::string, std::string>;

KeyValues read_key_values(std::istream& in);
KeyValues read_key_value_file(const std::filesystem::path& path);
void write_key_values(std::ostream& out, const KeyValues& kv);
void write_key_value_file(const std::filesystem::path& path, const KeyValues& kv);

struct RunConfig {
  PriorConfig priors;
  TuningConfig tuning;
};

// Applies recognized keys onto the defaults; unknown keys raise DataError.
RunConfig config_from_key_values(const KeyValues& kv);
KeyValues key_values_from_config(const RunConfig& config);

RawDigraph read_edge_list_file(const std::filesystem::path& path);
void write_edge_list_file(const std::filesystem::path& path, const Dag& g);
void write_node_labels_file(const std::filesystem::path& path, const std::vector<std::string>& labels);
std::vector<std::string> read_node_labels_file(const std::filesystem::path& path);

void write_removal_log(const std::filesystem::path& path, const std::vector<RemovedEdge>& removed,
                       const RawDigraph& g);

// Streams trace rows into a run directory: trace.csv plus z.txt, sigma.txt
// and xi.txt snapshots (one row per record; node indices and labels are
// written 1-based).
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& dir);
  void operator()(const TraceRecord& rec);
  long long rows_written() const { return rows_; }

 private:
  std::ofstream trace_, z_, sigma_, xi_;
  long long rows_ = 0;
};

struct RunData {
  std::vector<long long> iteration;
  std::vector<int> k_groups;
  std::vector<double> a, b;
  std::vector<int> r;
  std::vector<double> alpha, theta, gamma;
  std::vector<int> k;
  std::vector<double> log_lik;
  std::vector<std::vector<int>> z;      // 0-based labels
  std::vector<std::vector<int>> sigma;  // 0-based node indices
  std::vector<std::vector<double>> xi;
  KeyValues meta;  // run_meta.txt if present
};

RunData read_run_dir(const std::filesystem::path& dir);

void write_pseudoprior_file(const std::filesystem::path& path, const PseudoPrior& pseudo,
                            const std::vector<std::string>& warnings = {});
PseudoPrior read_pseudoprior_file(const std::filesystem::path& path);

// Square matrix with one header row of column labels.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& col_labels);
Matrix read_matrix_csv(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace dagsbm
