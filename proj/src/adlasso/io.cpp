/*
Copyright 2026 The adlasso Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "adlasso/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adlasso/error.hpp"

namespace adlasso {

namespace fs = std::filesystem;

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double num_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  fail(ErrorCode::kParseError, "expected a number, found " + j.dump());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(num(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (j.is_null()) return Matrix();
  if (!j.is_array()) fail(ErrorCode::kParseError, "matrix must be an array of rows");
  std::vector<Vector> rows;
  for (const auto& r : j) {
    Vector v;
    for (const auto& x : r) v.push_back(num_from(x));
    rows.push_back(std::move(v));
  }
  return Matrix::from_rows(rows);
}

static json index_json(const Index& idx) {
  json a = json::array();
  for (std::size_t i : idx) a.push_back(i);
  return a;
}

static json vector_json(const Vector& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json corruption_to_json(const CorruptionSpec& c) {
  json j;
  j["mode"] = mode_name(c.mode);
  j["budget_r"] = num(c.budget_r);
  j["sigma_e"] = c.sigma_e.empty() ? json(nullptr) : matrix_to_json(c.sigma_e);
  j["sigma_ey"] = num(c.sigma_ey);
  j["mix_weight"] = num(c.mix_weight);
  return j;
}

CorruptionSpec corruption_from_json(const json& j) {
  CorruptionSpec c;
  c.mode = parse_mode(j.at("mode").get<std::string>());
  c.budget_r = num_from(j.at("budget_r"));
  c.sigma_e = matrix_from_json(j.at("sigma_e"));
  c.sigma_ey = num_from(j.at("sigma_ey"));
  c.mix_weight = num_from(j.at("mix_weight"));
  return c;
}

json truth_to_json(const PopulationSpec& t) {
  json j;
  j["p"] = t.p;
  j["k"] = t.k;
  j["support"] = index_json(t.support);
  j["w_star"] = vector_json(t.w_star);
  j["sigma_cov"] = matrix_to_json(t.sigma_cov);
  j["sigma_proxy"] = num(t.sigma_proxy);
  return j;
}

PopulationSpec truth_from_json(const json& j) {
  PopulationSpec t;
  t.p = j.at("p").get<std::size_t>();
  t.k = j.at("k").get<std::size_t>();
  t.support = j.at("support").get<Index>();
  for (const auto& x : j.at("w_star")) t.w_star.push_back(num_from(x));
  t.sigma_cov = matrix_from_json(j.at("sigma_cov"));
  t.sigma_proxy = num_from(j.at("sigma_proxy"));
  t.validate();
  return t;
}

json solution_to_json(const LassoSolution& s) {
  json j;
  j["lambda"] = num(s.lambda);
  json w = json::array();
  for (std::size_t i = 0; i < s.w_hat.size(); ++i)
    if (s.w_hat[i] != 0.0) w.push_back(json::array({i, num(s.w_hat[i])}));
  j["p"] = s.w_hat.size();
  j["w_hat"] = std::move(w);
  j["z_hat"] = s.has_dual ? vector_json(s.z_hat) : json(nullptr);
  j["kkt_residual"] = num(s.kkt_residual);
  j["iterations"] = s.iterations;
  j["objective"] = num(s.objective);
  j["support_tol"] = num(s.support_tol);
  j["support_hat"] = index_json(s.support_hat);
  j["monotone_descent"] = s.monotone_descent;
  return j;
}

json certificate_to_json(const PdwCertificate& c) {
  json j;
  j["z_sc_inf"] = num(c.z_sc_inf);
  j["z_sc_t1_inf"] = num(c.z_sc_t1_inf);
  j["z_sc_t2_inf"] = num(c.z_sc_t2_inf);
  j["min_eig_hessian"] = num(c.min_eig_hessian);
  j["strict_dual_feasible"] = c.strict_dual_feasible;
  j["sign_consistent"] = c.sign_consistent;
  j["w_err_inf"] = num(c.w_err_inf);
  j["reconstruction_error"] = num(c.reconstruction_error);
  return j;
}

json bundle_to_json(const TheoryBundle& b) {
  json j;
  j["n"] = b.n;
  j["p"] = b.p;
  j["k"] = b.k;
  j["gamma"] = num(b.gamma);
  j["incoherence_violated"] = b.incoherence_violated;
  j["c_min"] = num(b.c_min);
  j["c_max"] = num(b.c_max);
  j["d_min"] = num(b.d_min);
  j["d_max"] = num(b.d_max);
  j["f_min"] = num(b.f_min);
  j["f_max"] = num(b.f_max);
  j["g_max"] = num(b.g_max);
  j["h_max"] = num(b.h_max);
  j["xi"] = num(b.xi);
  j["q"] = num(b.q);
  j["q1"] = num(b.q1);
  j["q2"] = num(b.q2);
  j["q3"] = num(b.q3);
  j["b"] = num(b.b);
  j["b2"] = num(b.b2);
  j["b_expanded"] = num(b.b_expanded);
  j["lambda_term_sigma_ey"] = num(b.lambda1);
  j["lambda_term_b"] = num(b.lambda2);
  j["lambda_term_q"] = num(b.lambda3);
  j["appendix_lambda1"] = b.appendix_lambda1;
  j["lambda_lb"] = num(b.lambda_lb);
  j["lambda_eval"] = num(b.lambda_eval);
  j["f_lambda"] = num(b.f_lambda);
  j["min_abs_w"] = num(b.min_abs_w);
  j["min_signal_ok"] = b.min_signal_ok;
  j["b_zero"] = b.b_zero;
  j["estimation_n"] = b.estimation_n;
  return j;
}

json claims_to_json(const ClaimReport& c) {
  json j;
  j["claim1_no_false_positives"] = c.no_false_positives;
  j["claim2_unique"] = c.unique;
  j["claim2_resolve_diff_inf"] = num(c.resolve_diff_inf);
  j["claim3_error_within_bound"] = c.error_within_bound;
  j["claim3_w_err_inf"] = num(c.w_err_inf);
  j["claim3_f_lambda"] = num(c.f_lambda);
  j["claim4_sign_consistent"] = c.sign_consistent;
  j["claim4_min_signal_ok"] = c.min_signal_ok;
  j["claim5_b_zero"] = c.b_zero;
  j["lambda"] = num(c.lambda);
  j["lambda_lb"] = num(c.lambda_lb);
  j["outside_guarantee_regime"] = c.outside_guarantee_regime;
  return j;
}

json pipeline_to_json(const PipelineReport& r) {
  json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["lambda"] = num(r.lambda);
  j["true_support"] = index_json(r.true_support);
  j["perturbed_support"] = index_json(r.perturbed_support);
  j["recall"] = num(r.f1.recall);
  j["precision"] = num(r.f1.precision);
  j["f1"] = num(r.f1.f1);
  return j;
}

json guess_to_json(const SupportGuess& g) {
  json j;
  j["determined"] = g.determined;
  j["low_confidence"] = g.low_confidence;
  j["threshold"] = num(g.threshold);
  j["support"] = index_json(g.support);
  j["means"] = vector_json(g.means);
  return j;
}

static std::string short_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "p,k,n,ratio,trials,successes,prob,mean_f1\n";
  for (const auto& row : r.rows)
    os << row.p << ',' << row.k << ',' << row.n << ',' << short_double(row.ratio) << ',' << row.trials << ','
       << row.successes << ',' << short_double(row.prob) << ',' << short_double(row.mean_f1) << '\n';
  return os.str();
}

std::string tail_csv(const TailBoundReport& r) {
  std::ostringstream os;
  os << "claim_id,delta,empirical_freq,theory_bound,trials,n,p,k\n";
  for (std::size_t i = 0; i < r.delta_grid.size(); ++i)
    os << claim_name(r.claim) << ',' << short_double(r.delta_grid[i]) << ',' << short_double(r.empirical_freq[i])
       << ',' << short_double(r.theory_bound[i]) << ',' << r.trials << ',' << r.n << ',' << r.p << ',' << r.k << '\n';
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::kIo, "write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::string s;
  s.reserve(m.rows() * m.cols() * 24);
  char buf[40];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s.push_back(',');
      const int len = std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      s.append(buf, static_cast<std::size_t>(len));
    }
    s.push_back('\n');
  }
  write_text(path, s);
}

Matrix read_matrix_csv(const std::string& path) {
  const std::string text = read_text(path);
  std::vector<double> vals;
  std::size_t rows = 0, cols = 0, line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t c = 0, start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      const std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      char* e = nullptr;
      const double v = std::strtod(cell.c_str(), &e);
      if (cell.empty() || e != cell.c_str() + cell.size())
        fail(ErrorCode::kParseError, path + ": row " + std::to_string(line_no - 1) + ", column " + std::to_string(c) +
                                         ": non-numeric cell '" + cell + "'");
      vals.push_back(v);
      ++c;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (rows == 0) cols = c;
    if (c != cols) fail(ErrorCode::kParseError, path + ": ragged row " + std::to_string(line_no - 1));
    ++rows;
  }
  Matrix m(rows, cols);
  m.data() = std::move(vals);
  return m;
}

static Matrix as_column(const Vector& v) {
  Matrix m(v.size(), 1);
  m.data() = v;
  return m;
}

static Vector from_column(const Matrix& m, const std::string& what) {
  if (m.cols() != 1 && m.rows() > 0) fail(ErrorCode::kParseError, what + " must have one column");
  return m.data();
}

void save_instance(const ProblemInstance& inst, const std::string& dir, const json& config) {
  inst.validate();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create '" + dir + "': " + ec.message());
  json payloads;
  payloads["X"] = "X.csv";
  payloads["y"] = "y.csv";
  if (inst.X_star) payloads["X_star"] = "X_star.csv";
  if (inst.E_x) payloads["E_x"] = "E_x.csv";
  if (inst.e_y) payloads["e_y"] = "e_y.csv";

  json m;
  m["format"] = "adlasso-instance";
  m["version"] = 1;
  m["n"] = inst.n();
  m["p"] = inst.p();
  m["k"] = inst.truth ? json(inst.truth->k) : json(nullptr);
  m["seed"] = inst.seed;
  m["corruption"] = corruption_to_json(inst.corruption);
  m["support"] = inst.truth ? index_json(inst.truth->support) : json(nullptr);
  m["w_star"] = inst.truth ? vector_json(inst.truth->w_star) : json(nullptr);
  m["truth"] = inst.truth ? truth_to_json(*inst.truth) : json(nullptr);
  m["payloads"] = payloads;
  m["config"] = config;

  const fs::path d(dir);
  write_text((d / "instance.json").string(), m.dump(2) + "\n");
  write_matrix_csv((d / "X.csv").string(), inst.X);
  write_matrix_csv((d / "y.csv").string(), as_column(inst.y));
  if (inst.X_star) write_matrix_csv((d / "X_star.csv").string(), *inst.X_star);
  if (inst.E_x) write_matrix_csv((d / "E_x.csv").string(), *inst.E_x);
  if (inst.e_y) write_matrix_csv((d / "e_y.csv").string(), as_column(*inst.e_y));
}

ProblemInstance load_instance(const std::string& dir, json* manifest) {
  const fs::path d(dir);
  json m;
  try {
    m = json::parse(read_text((d / "instance.json").string()));
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, "instance.json: " + std::string(e.what()));
  }
  ProblemInstance inst;
  try {
    if (m.value("format", "") != "adlasso-instance") fail(ErrorCode::kParseError, "not an adlasso instance manifest");
    const auto& pl = m.at("payloads");
    inst.X = read_matrix_csv((d / pl.at("X").get<std::string>()).string());
    inst.y = from_column(read_matrix_csv((d / pl.at("y").get<std::string>()).string()), "y.csv");
    if (pl.contains("X_star")) inst.X_star = read_matrix_csv((d / pl["X_star"].get<std::string>()).string());
    if (pl.contains("E_x")) inst.E_x = read_matrix_csv((d / pl["E_x"].get<std::string>()).string());
    if (pl.contains("e_y"))
      inst.e_y = from_column(read_matrix_csv((d / pl["e_y"].get<std::string>()).string()), "e_y.csv");
    inst.seed = m.at("seed").get<std::uint64_t>();
    inst.corruption = corruption_from_json(m.at("corruption"));
    if (!m.at("truth").is_null()) inst.truth = truth_from_json(m.at("truth"));
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, "instance.json: " + std::string(e.what()));
  }
  if (inst.X.rows() != m.at("n").get<std::size_t>() || inst.X.cols() != m.at("p").get<std::size_t>())
    fail(ErrorCode::kInvalidDims, "payload dimensions disagree with the manifest");
  inst.validate();
  if (manifest) *manifest = std::move(m);
  return inst;
}

}  // namespace adlasso
