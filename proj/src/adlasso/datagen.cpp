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

#include "adlasso/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adlasso/error.hpp"

namespace adlasso {

void SyntheticConfig::validate() const {
  if (p == 0) fail(ErrorCode::kInvalidDims, "p must be >= 1");
  if (k == 0 || k > p) fail(ErrorCode::kInvalidDims, "k must satisfy 1 <= k <= p (got k=" + std::to_string(k) + ")");
  if (n == 0) fail(ErrorCode::kInvalidDims, "n must be >= 1");
  if (sigma1 < 0 || sigma2 < 0) fail(ErrorCode::kInvalidArgument, "sigma1 and sigma2 must be >= 0");
  if (budget_r < 0) fail(ErrorCode::kInvalidArgument, "r must be >= 0");
  if (mix_weight < 0 || mix_weight > 1) fail(ErrorCode::kInvalidArgument, "mix weight must lie in [0,1]");
}

PopulationSpec sample_ground_truth(std::size_t p, std::size_t k, RngStream& rng) {
  if (k == 0 || k > p) fail(ErrorCode::kInvalidDims, "k must satisfy 1 <= k <= p");
  // Values first, positions second: the value sequence is then the same for
  // every p under a shared stream.
  Vector values(k);
  for (auto& v : values) {
    const double mag = rng.uniform(0.1, 1.0);
    v = rng.coin() ? mag : -mag;
  }
  std::vector<std::size_t> perm(p);
  for (std::size_t i = 0; i < p; ++i) perm[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(p - i));
    std::swap(perm[i], perm[j]);
  }
  PopulationSpec t;
  t.p = p;
  t.k = k;
  t.support.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(t.support.begin(), t.support.end());
  t.w_star.assign(p, 0.0);
  for (std::size_t i = 0; i < k; ++i) t.w_star[t.support[i]] = values[i];
  t.sigma_cov = Matrix::identity(p);
  t.sigma_proxy = 1.0;
  return t;
}

CorruptionSpec synthetic_corruption(const SyntheticConfig& cfg) {
  CorruptionSpec c;
  c.mode = cfg.mode;
  c.sigma_ey = cfg.sigma1;
  c.mix_weight = cfg.mix_weight;
  switch (cfg.mode) {
    case CorruptionMode::kNone:
      c.budget_r = 0.0;
      break;
    case CorruptionMode::kGaussian:
      c.budget_r = 1.0;
      c.sigma_e = scale(Matrix::identity(cfg.p), cfg.sigma2 * cfg.sigma2);
      break;
    default:
      c.budget_r = cfg.budget_r;
      c.sigma_e = scale(Matrix::identity(cfg.p), cfg.budget_r * cfg.budget_r / static_cast<double>(cfg.p));
      break;
  }
  return c;
}

static Vector normalize_to(Vector v, double r) {
  const double nv = norm2(v);
  for (double& x : v) x = r * x / nv;
  return v;
}

static Vector gaussian_vector(std::size_t p, const Vector* scales, RngStream& rng) {
  Vector v(p);
  for (std::size_t i = 0; i < p; ++i) v[i] = rng.gaussian() * (scales ? (*scales)[i] : 1.0);
  return v;
}

Vector perturb_mixture(const Vector& x_star_row, double r, double mix_weight, RngStream& rng) {
  return perturb_real_scaled(x_star_row, r, mix_weight, Vector(), RealVariant::kMixture, rng);
}

Vector perturb_correlated(const Vector& x_star_row, double r, double mix_weight, RngStream& rng) {
  return perturb_real_scaled(x_star_row, r, mix_weight, Vector(), RealVariant::kCorrelated, rng);
}

Vector perturb_real_scaled(const Vector& x_star_row, double r, double mix_weight, const Vector& feature_std,
                           RealVariant variant, RngStream& rng) {
  if (r < 0) fail(ErrorCode::kInvalidArgument, "r must be >= 0");
  const std::size_t p = x_star_row.size();
  const Vector* scales = feature_std.empty() ? nullptr : &feature_std;
  if (scales && scales->size() != p) fail(ErrorCode::kInvalidDims, "feature_std length differs from p");
  if (scales)
    for (double s : *scales)
      if (s < 0) fail(ErrorCode::kInvalidArgument, "feature_std must be >= 0");
  if (r == 0.0) return Vector(p, 0.0);

  for (int attempt = 0; attempt < 2; ++attempt) {
    Vector v;
    const bool first_branch = rng.bernoulli(mix_weight);
    if (first_branch && variant == RealVariant::kMixture) {
      v.resize(p);
      for (std::size_t i = 0; i < p; ++i) v[i] = (rng.coin() ? 1.0 : -1.0) * (scales ? (*scales)[i] : 1.0);
    } else if (first_branch && norm2(x_star_row) > 0.0) {
      const double s = rng.coin() ? 1.0 : -1.0;
      v = x_star_row;
      for (double& x : v) x *= s;
    } else {
      v = gaussian_vector(p, scales, rng);
    }
    if (norm2(v) > 0.0) return normalize_to(std::move(v), r);
  }
  fail(ErrorCode::kDegenerateDirection, "perturbation direction has zero norm after one retry");
}

RowSampler::RowSampler(const PopulationSpec& truth, const CorruptionSpec& corruption, const RngStream& base)
    : truth_(truth),
      corruption_(corruption),
      p_(truth.p),
      x_rng_(base.substream(1)),
      e_rng_(base.substream(2)),
      y_rng_(base.substream(3)) {
  truth.validate();
  corruption.validate(p_);
  l_x_ = cholesky_sqrt(truth.sigma_cov);
  l_x_diag_ = is_diagonal(l_x_);
  if (corruption.mode == CorruptionMode::kGaussian) {
    l_e_ = cholesky_sqrt(corruption.sigma_e_or_zero(p_));
    l_e_diag_ = is_diagonal(l_e_);
  } else {
    l_e_diag_ = true;
  }
  if (corruption.mode == CorruptionMode::kRealScaledMixture ||
      corruption.mode == CorruptionMode::kRealScaledCorrelated) {
    feature_std_.resize(p_);
    for (std::size_t i = 0; i < p_; ++i) feature_std_[i] = std::sqrt(std::max(0.0, truth.sigma_cov(i, i)));
  }
  scratch_.resize(p_);
  row_.resize(p_);
}

void RowSampler::correlate(const Matrix& l, bool diag, double* out) {
  if (diag) {
    for (std::size_t i = 0; i < p_; ++i) out[i] = l(i, i) * scratch_[i];
    return;
  }
  for (std::size_t i = 0; i < p_; ++i) {
    const double* li = l.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += li[j] * scratch_[j];
    out[i] = s;
  }
}

void RowSampler::next(double* x_star, double* e_x, double& y_star, double& e_y) {
  for (std::size_t i = 0; i < p_; ++i) scratch_[i] = x_rng_.gaussian();
  correlate(l_x_, l_x_diag_, x_star);

  const double r = corruption_.budget_r;
  const double mw = corruption_.mix_weight;
  switch (corruption_.mode) {
    case CorruptionMode::kNone:
      std::fill(e_x, e_x + p_, 0.0);
      break;
    case CorruptionMode::kGaussian:
      for (std::size_t i = 0; i < p_; ++i) scratch_[i] = e_rng_.gaussian();
      correlate(l_e_, l_e_diag_, e_x);
      break;
    default: {
      row_.assign(x_star, x_star + p_);
      Vector e;
      switch (corruption_.mode) {
        case CorruptionMode::kMixture: e = perturb_mixture(row_, r, mw, e_rng_); break;
        case CorruptionMode::kCorrelated: e = perturb_correlated(row_, r, mw, e_rng_); break;
        case CorruptionMode::kRealScaledMixture:
          e = perturb_real_scaled(row_, r, mw, feature_std_, RealVariant::kMixture, e_rng_);
          break;
        default: e = perturb_real_scaled(row_, r, mw, feature_std_, RealVariant::kCorrelated, e_rng_); break;
      }
      std::copy(e.begin(), e.end(), e_x);
    }
  }

  double s = 0.0;
  for (std::size_t i : truth_.support) s += x_star[i] * truth_.w_star[i];
  y_star = s;
  e_y = corruption_.sigma_ey > 0.0 ? corruption_.sigma_ey * y_rng_.gaussian() : 0.0;
}

ProblemInstance generate_instance(const PopulationSpec& truth, const CorruptionSpec& corruption, std::size_t n,
                                  const RngStream& rng) {
  if (n == 0) fail(ErrorCode::kInvalidDims, "n must be >= 1");
  const std::size_t p = truth.p;
  RowSampler sampler(truth, corruption, rng);
  ProblemInstance inst;
  inst.X = Matrix(n, p);
  inst.X_star = Matrix(n, p);
  inst.E_x = Matrix(n, p);
  inst.y.resize(n);
  inst.e_y = Vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    double ys = 0.0, ey = 0.0;
    double* xs = inst.X_star->row(i);
    double* ex = inst.E_x->row(i);
    sampler.next(xs, ex, ys, ey);
    double* x = inst.X.row(i);
    for (std::size_t j = 0; j < p; ++j) x[j] = xs[j] + ex[j];
    inst.y[i] = ys + ey;
    (*inst.e_y)[i] = ey;
  }
  inst.truth = truth;
  inst.corruption = corruption;
  inst.seed = rng.master_seed();
  return inst;
}

ProblemInstance generate_synthetic(const SyntheticConfig& cfg) {
  cfg.validate();
  RngStream truth_rng(cfg.seed, 1);
  const PopulationSpec truth = sample_ground_truth(cfg.p, cfg.k, truth_rng);
  const CorruptionSpec corruption = synthetic_corruption(cfg);
  return generate_instance(truth, corruption, cfg.n, RngStream(cfg.seed, 2));
}

void apply_mean_shift(ProblemInstance& inst, double mu_support, double mu_nonsupport) {
  if (!inst.truth) fail(ErrorCode::kMissingTruth, "mean shift needs the true support");
  const std::size_t n = inst.n(), p = inst.p();
  if (!inst.E_x) inst.E_x = Matrix(n, p);
  std::vector<char> in(p, 0);
  for (std::size_t i : inst.truth->support) in[i] = 1;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < p; ++j) {
      const double mu = in[j] ? mu_support : mu_nonsupport;
      (*inst.E_x)(r, j) += mu;
      inst.X(r, j) += mu;
    }
}

Vector column_std(const Matrix& x) {
  const std::size_t n = x.rows(), p = x.cols();
  Vector mean(p, 0.0), sd(p, 0.0);
  if (n < 2) return sd;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) mean[j] += x(i, j);
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const double d = x(i, j) - mean[j];
      sd[j] += d * d;
    }
  for (double& s : sd) s = std::sqrt(s / static_cast<double>(n - 1));
  return sd;
}

static std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

static std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

static bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

TabularDataset load_tabular(const std::string& path, const std::string& target_column) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kEmptyDataset, "'" + path + "' has no header");
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);
  if (!header.empty() && header[0].size() >= 3 && header[0].compare(0, 3, "\xEF\xBB\xBF") == 0)
    header[0] = header[0].substr(3);

  std::size_t target = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == target_column) target = j;
  if (target == header.size()) {
    double idx = 0;
    if (parse_double(target_column, idx) && idx >= 0 && idx == std::floor(idx) &&
        idx < static_cast<double>(header.size()))
      target = static_cast<std::size_t>(idx);
  }
  if (target == header.size()) fail(ErrorCode::kMissingTarget, "target column '" + target_column + "' not found");

  TabularDataset ds;
  ds.target_name = header[target];
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != target) ds.column_names.push_back(header[j]);

  std::vector<double> flat;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      fail(ErrorCode::kParseError, "row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                                       " cells, found " + std::to_string(cells.size()));
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v = 0;
      if (!parse_double(trim(cells[j]), v))
        fail(ErrorCode::kParseError, "row " + std::to_string(row) + ", column " + std::to_string(j) + " ('" +
                                         header[j] + "'): non-numeric cell '" + trim(cells[j]) + "'");
      if (j == target)
        ds.y_raw.push_back(v);
      else
        flat.push_back(v);
    }
    ++row;
  }
  if (row == 0) fail(ErrorCode::kEmptyDataset, "'" + path + "' has no data rows");
  ds.X_raw = Matrix(row, header.size() - 1);
  ds.X_raw.data() = std::move(flat);
  ds.feature_std = column_std(ds.X_raw);
  return ds;
}

}  // namespace adlasso
