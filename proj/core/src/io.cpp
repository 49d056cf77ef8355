#include "dagsbm/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace dagsbm {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("expected a number for " + what + ", got '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("expected an integer for " + what + ", got '" + s + "'");
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sp = line.find_first_of(" \t");
    if (sp == std::string::npos) throw DataError("key without value: '" + line + "'");
    kv[line.substr(0, sp)] = trim(line.substr(sp + 1));
  }
  return kv;
}

KeyValues read_key_value_file(const fs::path& path) {
  auto in = open_in(path);
  return read_key_values(in);
}

void write_key_values(std::ostream& out, const KeyValues& kv) {
  for (const auto& [k, v] : kv) out << k << ' ' << v << '\n';
}

void write_key_value_file(const fs::path& path, const KeyValues& kv) {
  auto out = open_out(path);
  write_key_values(out, kv);
}

RunConfig config_from_key_values(const KeyValues& kv) {
  RunConfig cfg;
  for (const auto& [key, value] : kv) {
    auto d = [&] { return parse_double(value, key); };
    auto i = [&] { return parse_int(value, key); };
    if (key == "a_shape") cfg.priors.a_prior.shape = d();
    else if (key == "a_rate") cfg.priors.a_prior.rate = d();
    else if (key == "b_shape") cfg.priors.b_prior.shape = d();
    else if (key == "b_rate") cfg.priors.b_prior.rate = d();
    else if (key == "xi_shape") cfg.priors.xi_prior.shape = d();
    else if (key == "xi_rate") cfg.priors.xi_prior.rate = d();
    else if (key == "theta_plus_alpha_shape") cfg.priors.theta_plus_alpha_prior.shape = d();
    else if (key == "theta_plus_alpha_rate") cfg.priors.theta_plus_alpha_prior.rate = d();
    else if (key == "gamma_shape") cfg.priors.gamma_prior.shape = d();
    else if (key == "gamma_rate") cfg.priors.gamma_prior.rate = d();
    else if (key == "k_a") cfg.priors.k_a = d();
    else if (key == "k_b") cfg.priors.k_b = d();
    else if (key == "prior_r1") cfg.priors.prior_r1 = d();
    else if (key == "leap_L") cfg.tuning.leap_L = static_cast<int>(i());
    else if (key == "s_xi") cfg.tuning.s_xi_default = d();
    else if (key == "s_a") cfg.tuning.s_a = d();
    else if (key == "s_b") cfg.tuning.s_b = d();
    else if (key == "s_alpha") cfg.tuning.s_alpha = d();
    else if (key == "s_theta") cfg.tuning.s_theta = d();
    else if (key == "s_gamma") cfg.tuning.s_gamma = d();
    else if (key == "p_k") cfg.tuning.p_k = d();
    else if (key == "iterations") cfg.tuning.iterations = i();
    else if (key == "burn_in") cfg.tuning.burn_in = i();
    else if (key == "thinning") cfg.tuning.thinning = i();
    else if (key == "seed") cfg.tuning.seed = static_cast<std::uint64_t>(i());
    else if (key == "split_merge_per_sweep") cfg.tuning.split_merge_per_sweep = static_cast<int>(i());
    else if (key == "restricted_gibbs_scans") cfg.tuning.restricted_gibbs_scans = static_cast<int>(i());
    else if (key == "fix_xi") cfg.tuning.fix_xi = i() != 0;
    else if (key == "prior_only") cfg.tuning.prior_only = i() != 0;
    else if (key == "refresh_every") cfg.tuning.refresh_every = i();
    else throw DataError("unknown config key '" + key + "'");
  }
  return cfg;
}

KeyValues key_values_from_config(const RunConfig& cfg) {
  KeyValues kv;
  kv["a_shape"] = format_double(cfg.priors.a_prior.shape);
  kv["a_rate"] = format_double(cfg.priors.a_prior.rate);
  kv["b_shape"] = format_double(cfg.priors.b_prior.shape);
  kv["b_rate"] = format_double(cfg.priors.b_prior.rate);
  kv["xi_shape"] = format_double(cfg.priors.xi_prior.shape);
  kv["xi_rate"] = format_double(cfg.priors.xi_prior.rate);
  kv["theta_plus_alpha_shape"] = format_double(cfg.priors.theta_plus_alpha_prior.shape);
  kv["theta_plus_alpha_rate"] = format_double(cfg.priors.theta_plus_alpha_prior.rate);
  kv["gamma_shape"] = format_double(cfg.priors.gamma_prior.shape);
  kv["gamma_rate"] = format_double(cfg.priors.gamma_prior.rate);
  kv["k_a"] = format_double(cfg.priors.k_a);
  kv["k_b"] = format_double(cfg.priors.k_b);
  kv["prior_r1"] = format_double(cfg.priors.prior_r1);
  kv["leap_L"] = std::to_string(cfg.tuning.leap_L);
  kv["s_xi"] = format_double(cfg.tuning.s_xi_default);
  kv["s_a"] = format_double(cfg.tuning.s_a);
  kv["s_b"] = format_double(cfg.tuning.s_b);
  kv["s_alpha"] = format_double(cfg.tuning.s_alpha);
  kv["s_theta"] = format_double(cfg.tuning.s_theta);
  kv["s_gamma"] = format_double(cfg.tuning.s_gamma);
  kv["p_k"] = format_double(cfg.tuning.p_k);
  kv["iterations"] = std::to_string(cfg.tuning.iterations);
  kv["burn_in"] = std::to_string(cfg.tuning.burn_in);
  kv["thinning"] = std::to_string(cfg.tuning.thinning);
  kv["seed"] = std::to_string(cfg.tuning.seed);
  kv["split_merge_per_sweep"] = std::to_string(cfg.tuning.split_merge_per_sweep);
  kv["restricted_gibbs_scans"] = std::to_string(cfg.tuning.restricted_gibbs_scans);
  kv["fix_xi"] = cfg.tuning.fix_xi ? "1" : "0";
  kv["prior_only"] = cfg.tuning.prior_only ? "1" : "0";
  kv["refresh_every"] = std::to_string(cfg.tuning.refresh_every);
  return kv;
}

RawDigraph read_edge_list_file(const fs::path& path) {
  auto in = open_in(path);
  return parse_edge_list(in);
}

void write_edge_list_file(const fs::path& path, const Dag& g) {
  auto out = open_out(path);
  serialize_edge_list(out, g);
}

void write_node_labels_file(const fs::path& path, const std::vector<std::string>& labels) {
  auto out = open_out(path);
  for (const auto& l : labels) out << l << '\n';
}

std::vector<std::string> read_node_labels_file(const fs::path& path) {
  auto in = open_in(path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) labels.push_back(line);
  }
  return labels;
}

void write_removal_log(const fs::path& path, const std::vector<RemovedEdge>& removed,
                       const RawDigraph& g) {
  auto out = open_out(path);
  out << "src,dst,reason\n";
  for (const auto& r : removed) out << g.label(r.src) << ',' << g.label(r.dst) << ',' << r.reason << '\n';
}

TraceWriter::TraceWriter(const fs::path& dir) {
  fs::create_directories(dir);
  trace_ = open_out(dir / "trace.csv");
  z_ = open_out(dir / "z.txt");
  sigma_ = open_out(dir / "sigma.txt");
  xi_ = open_out(dir / "xi.txt");
  trace_ << "iter,K_n,a,b,r,alpha,theta,gamma,k,loglik\n";
}

void TraceWriter::operator()(const TraceRecord& rec) {
  trace_ << rec.iteration << ',' << rec.k_groups << ',' << format_double(rec.a) << ','
         << format_double(rec.b) << ',' << (rec.regime == Regime::finite ? 1 : 0) << ','
         << format_double(rec.alpha) << ',' << format_double(rec.theta) << ','
         << format_double(rec.gamma) << ',' << rec.k << ',' << format_double(rec.log_lik) << '\n';
  for (size_t i = 0; i < rec.z.size(); ++i) z_ << (i ? " " : "") << rec.z[i] + 1;
  z_ << '\n';
  for (size_t i = 0; i < rec.sigma.size(); ++i) sigma_ << (i ? " " : "") << rec.sigma[i] + 1;
  sigma_ << '\n';
  for (size_t i = 0; i < rec.xi.size(); ++i) xi_ << (i ? " " : "") << format_double(rec.xi[i]);
  xi_ << '\n';
  ++rows_;
}

RunData read_run_dir(const fs::path& dir) {
  RunData run;
  {
    auto in = open_in(dir / "trace.csv");
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty trace.csv in " + dir.string());
    if (trim(line) != "iter,K_n,a,b,r,alpha,theta,gamma,k,loglik")
      throw DataError("unexpected trace.csv header in " + dir.string());
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      auto f = split_csv(line);
      if (f.size() != 10) throw DataError("malformed trace row: '" + line + "'");
      run.iteration.push_back(parse_int(f[0], "iter"));
      run.k_groups.push_back(static_cast<int>(parse_int(f[1], "K_n")));
      run.a.push_back(parse_double(f[2], "a"));
      run.b.push_back(parse_double(f[3], "b"));
      run.r.push_back(static_cast<int>(parse_int(f[4], "r")));
      run.alpha.push_back(parse_double(f[5], "alpha"));
      run.theta.push_back(parse_double(f[6], "theta"));
      run.gamma.push_back(parse_double(f[7], "gamma"));
      run.k.push_back(static_cast<int>(parse_int(f[8], "k")));
      run.log_lik.push_back(parse_double(f[9], "loglik"));
    }
  }
  auto read_int_rows = [&](const fs::path& path) {
    auto in = open_in(path);
    std::vector<std::vector<int>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      std::istringstream ss(line);
      std::vector<int> row;
      long long v;
      while (ss >> v) row.push_back(static_cast<int>(v) - 1);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  run.z = read_int_rows(dir / "z.txt");
  run.sigma = read_int_rows(dir / "sigma.txt");
  {
    auto in = open_in(dir / "xi.txt");
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      std::istringstream ss(line);
      std::vector<double> row;
      double v;
      while (ss >> v) row.push_back(v);
      run.xi.push_back(std::move(row));
    }
  }
  if (run.z.size() != run.iteration.size() || run.sigma.size() != run.iteration.size())
    throw DataError("trace.csv and snapshot files disagree on the record count");
  for (size_t i = 0; i < run.z.size(); ++i)
    if (run.z[i].size() != run.z.front().size() || run.sigma[i].size() != run.z.front().size())
      throw DataError("snapshot rows have inconsistent lengths");
  if (fs::exists(dir / "run_meta.txt")) run.meta = read_key_value_file(dir / "run_meta.txt");
  return run;
}

void write_pseudoprior_file(const fs::path& path, const PseudoPrior& pseudo,
                            const std::vector<std::string>& warnings) {
  auto out = open_out(path);
  for (const auto& w : warnings) out << "# warning: " << w << '\n';
  KeyValues kv;
  kv["gamma_location"] = format_double(pseudo.gamma_pseudo.location);
  kv["gamma_scale"] = format_double(pseudo.gamma_pseudo.scale);
  kv["k_a"] = format_double(pseudo.k_pseudo.a);
  kv["k_b"] = format_double(pseudo.k_pseudo.b);
  kv["alpha_shape1"] = format_double(pseudo.alpha_pseudo.shape1);
  kv["alpha_shape2"] = format_double(pseudo.alpha_pseudo.shape2);
  kv["theta_plus_alpha_shape"] = format_double(pseudo.theta_plus_alpha_pseudo.shape);
  kv["theta_plus_alpha_rate"] = format_double(pseudo.theta_plus_alpha_pseudo.rate);
  write_key_values(out, kv);
}

PseudoPrior read_pseudoprior_file(const fs::path& path) {
  KeyValues kv = read_key_value_file(path);
  auto need = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw DataError("pseudoprior file missing key '" + key + "'");
    return parse_double(it->second, key);
  };
  PseudoPrior p;
  p.gamma_pseudo = {need("gamma_location"), need("gamma_scale")};
  p.k_pseudo = {need("k_a"), need("k_b")};
  p.alpha_pseudo = {need("alpha_shape1"), need("alpha_shape2")};
  p.theta_plus_alpha_pseudo = {need("theta_plus_alpha_shape"), need("theta_plus_alpha_rate")};
  return p;
}

void write_matrix_csv(const fs::path& path, const Matrix& m,
                      const std::vector<std::string>& col_labels) {
  if (static_cast<int>(col_labels.size()) != m.cols)
    throw std::invalid_argument("write_matrix_csv: header size mismatch");
  auto out = open_out(path);
  for (int j = 0; j < m.cols; ++j) out << (j ? "," : "") << col_labels[j];
  out << '\n';
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) out << (j ? "," : "") << format_double(m.at(i, j));
    out << '\n';
  }
}

Matrix read_matrix_csv(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty matrix file " + path.string());
  const int cols = static_cast<int>(split_csv(line).size());
  std::vector<double> data;
  int rows = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto f = split_csv(line);
    if (static_cast<int>(f.size()) != cols) throw DataError("ragged matrix row in " + path.string());
    for (const auto& s : f) data.push_back(parse_double(s, "matrix entry"));
    ++rows;
  }
  Matrix m(rows, cols);
  m.data = std::move(data);
  return m;
}

}  // namespace dagsbm
