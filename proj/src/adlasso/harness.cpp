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

#include "adlasso/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "adlasso/error.hpp"
#include "adlasso/parallel.hpp"
#include "adlasso/theory.hpp"

namespace adlasso {

namespace {

constexpr std::uint64_t kTruthStream = 11;
constexpr std::uint64_t kDataStream = 12;

struct TrialOutcome {
  bool success = false;
  bool incoherent = false;
  double f1 = 0.0;
  std::string error;
};

GramProblem accumulate(RowSampler& sampler, std::size_t n) {
  const std::size_t p = sampler.p();
  constexpr std::size_t kBlock = 4;
  GramProblem g;
  g.n = n;
  g.gram = Matrix(p, p);
  g.xty.assign(p, 0.0);
  Vector xs(p), ex(p);
  Vector buf(kBlock * p), ybuf(kBlock);
  double yy = 0.0;
  double* gram = g.gram.data().data();
  // Rows are buffered in blocks of four so each Gram entry is loaded and
  // stored once per block.
  for (std::size_t r0 = 0; r0 < n; r0 += kBlock) {
    const std::size_t m = std::min(kBlock, n - r0);
    for (std::size_t b = 0; b < kBlock; ++b) {
      double* x = buf.data() + b * p;
      if (b >= m) {
        std::fill(x, x + p, 0.0);
        ybuf[b] = 0.0;
        continue;
      }
      double ys = 0.0, ey = 0.0;
      sampler.next(xs.data(), ex.data(), ys, ey);
      for (std::size_t j = 0; j < p; ++j) x[j] = xs[j] + ex[j];
      ybuf[b] = ys + ey;
      yy += ybuf[b] * ybuf[b];
    }
    const double* x0 = buf.data();
    const double* x1 = x0 + p;
    const double* x2 = x1 + p;
    const double* x3 = x2 + p;
    for (std::size_t i = 0; i < p; ++i) {
      const double a0 = x0[i], a1 = x1[i], a2 = x2[i], a3 = x3[i];
      double* gi = gram + i * p;
      for (std::size_t j = i; j < p; ++j) gi[j] += a0 * x0[j] + a1 * x1[j] + a2 * x2[j] + a3 * x3[j];
      g.xty[i] += a0 * ybuf[0] + a1 * ybuf[1] + a2 * ybuf[2] + a3 * ybuf[3];
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      const double v = gram[i * p + j] * inv;
      gram[i * p + j] = v;
      gram[j * p + i] = v;
    }
    g.xty[i] *= inv;
  }
  g.yty = yy * inv;
  return g;
}

}  // namespace

const char* policy_name(LambdaPolicyKind k) {
  switch (k) {
    case LambdaPolicyKind::kTwiceLowerBound: return "twice_lower_bound";
    case LambdaPolicyKind::kFixed: return "fixed";
    case LambdaPolicyKind::kScaled: return "scaled";
  }
  return "unknown";
}

double scaled_lambda(double c, std::size_t p, std::size_t n) {
  return c * std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

void SweepConfig::validate() const {
  if (p_list.empty()) fail(ErrorCode::kInvalidArgument, "p list is empty");
  for (std::size_t p : p_list)
    if (k == 0 || k > p) fail(ErrorCode::kInvalidDims, "k must satisfy 1 <= k <= p for every p");
  if (ratio_grid.empty()) fail(ErrorCode::kInvalidArgument, "ratio grid is empty");
  for (std::size_t i = 0; i < ratio_grid.size(); ++i) {
    if (!(ratio_grid[i] > 0)) fail(ErrorCode::kInvalidArgument, "ratios must be positive");
    if (i > 0 && !(ratio_grid[i] > ratio_grid[i - 1]))
      fail(ErrorCode::kInvalidArgument, "ratio grid must be strictly increasing");
  }
  if (trials == 0) fail(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (sigma1 < 0 || sigma2 < 0 || budget_r < 0) fail(ErrorCode::kInvalidArgument, "noise scales must be >= 0");
  if (lambda_policy.kind != LambdaPolicyKind::kTwiceLowerBound && !(lambda_policy.value >= 0))
    fail(ErrorCode::kInvalidArgument, "lambda policy value must be >= 0");
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::size_t np = cfg.p_list.size(), nr = cfg.ratio_grid.size(), nt = cfg.trials;

  std::vector<std::size_t> ns(np * nr);
  for (std::size_t pi = 0; pi < np; ++pi)
    for (std::size_t ri = 0; ri < nr; ++ri) {
      const double n = std::round(cfg.ratio_grid[ri] * std::log(static_cast<double>(cfg.p_list[pi])));
      ns[pi * nr + ri] = static_cast<std::size_t>(std::max(1.0, n));
    }

  std::vector<CorruptionSpec> corruption(np);
  std::vector<std::unique_ptr<TheoryModel>> models(np);
  for (std::size_t pi = 0; pi < np; ++pi) {
    SyntheticConfig sc;
    sc.p = cfg.p_list[pi];
    sc.k = cfg.k;
    sc.n = 1;
    sc.sigma1 = cfg.sigma1;
    sc.sigma2 = cfg.sigma2;
    sc.mode = cfg.mode;
    sc.budget_r = cfg.budget_r;
    sc.mix_weight = cfg.mix_weight;
    corruption[pi] = synthetic_corruption(sc);
    if (cfg.lambda_policy.kind == LambdaPolicyKind::kTwiceLowerBound) {
      // the model depends on Σ and the corruption only, not on w*
      RngStream r(cfg.master_seed, kTruthStream);
      const PopulationSpec probe = sample_ground_truth(sc.p, sc.k, r);
      models[pi] = std::make_unique<TheoryModel>(theory_model(probe, corruption[pi], 20000, cfg.master_seed));
    }
  }

  std::vector<TrialOutcome> out(np * nr * nt);
  parallel_for(out.size(), cfg.jobs, [&](std::size_t idx) {
    const std::size_t t = idx % nt;
    const std::size_t cell = idx / nt;
    const std::size_t pi = cell / nr, ri = cell % nr;
    const std::size_t p = cfg.p_list[pi], n = ns[cell];
    TrialOutcome& o = out[idx];
    try {
      RngStream truth_rng = cfg.paired_truth ? RngStream(cfg.master_seed, kTruthStream).substream(t)
                                             : RngStream(cfg.master_seed, kTruthStream).substream(pi, ri).substream(t);
      const PopulationSpec truth = sample_ground_truth(p, cfg.k, truth_rng);
      const RngStream data_rng = RngStream(cfg.master_seed, kDataStream).substream(pi, ri).substream(t);
      RowSampler sampler(truth, corruption[pi], data_rng);
      const GramProblem g = accumulate(sampler, n);

      double lambda = 0.0;
      switch (cfg.lambda_policy.kind) {
        case LambdaPolicyKind::kTwiceLowerBound: {
          const TheoryBundle b = compute_bundle(truth, corruption[pi], *models[pi], n);
          if (!std::isfinite(b.lambda_lb)) fail(ErrorCode::kInvalidArgument, "lambda lower bound is infinite");
          lambda = 2.0 * b.lambda_lb;
          break;
        }
        case LambdaPolicyKind::kFixed: lambda = cfg.lambda_policy.value; break;
        case LambdaPolicyKind::kScaled: lambda = scaled_lambda(cfg.lambda_policy.value, p, n); break;
      }
      const LassoSolution sol = solve_lasso_gram(g, lambda, cfg.solver);
      o.success = sol.support_hat == truth.support;
      o.f1 = f1_score(truth.support, sol.support_hat).f1;
      if (o.success) {
        for (std::size_t i : truth.support)
          if ((sol.w_hat[i] > 0) != (truth.w_star[i] > 0)) o.incoherent = true;
      }
    } catch (const Error& e) {
      o = TrialOutcome{};
      o.error = error_tag(e.code());
    } catch (const std::exception& e) {
      o = TrialOutcome{};
      o.error = "Internal";
    }
  });

  SweepResult res;
  for (std::size_t pi = 0; pi < np; ++pi)
    for (std::size_t ri = 0; ri < nr; ++ri) {
      const std::size_t cell = pi * nr + ri;
      SweepRow row;
      row.p = cfg.p_list[pi];
      row.k = cfg.k;
      row.n = ns[cell];
      row.ratio = cfg.ratio_grid[ri];
      row.trials = nt;
      double f1 = 0.0;
      for (std::size_t t = 0; t < nt; ++t) {
        const TrialOutcome& o = out[cell * nt + t];
        row.successes += o.success;
        row.incoherent_successes += o.incoherent;
        f1 += o.f1;
        if (!o.error.empty()) {
          ++row.errors;
          ++res.error_tags[o.error];
        }
      }
      row.prob = static_cast<double>(row.successes) / static_cast<double>(nt);
      row.mean_f1 = f1 / static_cast<double>(nt);
      res.rows.push_back(row);
    }
  std::stable_sort(res.rows.begin(), res.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.p != b.p ? a.p < b.p : a.ratio < b.ratio;
  });
  return res;
}

Vector isotonic_fit(const Vector& y) {
  std::vector<double> val;
  std::vector<std::size_t> cnt;
  for (double v : y) {
    val.push_back(v);
    cnt.push_back(1);
    while (val.size() > 1 && val[val.size() - 2] > val.back()) {
      const std::size_t c = cnt.back() + cnt[cnt.size() - 2];
      const double m = (val.back() * cnt.back() + val[val.size() - 2] * cnt[cnt.size() - 2]) / c;
      val.pop_back();
      cnt.pop_back();
      val.back() = m;
      cnt.back() = c;
    }
  }
  Vector out;
  for (std::size_t b = 0; b < val.size(); ++b) out.insert(out.end(), cnt[b], val[b]);
  return out;
}

double isotonic_deviation(const Vector& y) {
  const Vector f = isotonic_fit(y);
  double m = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) m = std::max(m, std::abs(y[i] - f[i]));
  return m;
}

double crossing_ratio(const std::vector<double>& ratios, const std::vector<double>& prob, double level) {
  if (ratios.size() != prob.size()) fail(ErrorCode::kInvalidDims, "ratio and probability lists differ in length");
  for (std::size_t i = 0; i < prob.size(); ++i) {
    if (prob[i] < level) continue;
    if (i == 0) return ratios[0];
    const double a = std::log(ratios[i - 1]), b = std::log(ratios[i]);
    const double w = (level - prob[i - 1]) / (prob[i] - prob[i - 1]);
    return std::exp(a + w * (b - a));
  }
  return std::numeric_limits<double>::infinity();
}

F1Score f1_score(const Index& true_support, const Index& perturbed_support, bool conventional) {
  F1Score s;
  if (true_support.empty() && perturbed_support.empty()) {
    s.recall = s.precision = s.f1 = 1.0;
    return s;
  }
  std::size_t common = 0;
  for (std::size_t i : perturbed_support)
    if (std::binary_search(true_support.begin(), true_support.end(), i)) ++common;
  const double c = static_cast<double>(common);
  const double np = static_cast<double>(perturbed_support.size());
  const double nt = static_cast<double>(true_support.size());
  s.recall = np > 0 ? c / np : 0.0;
  s.precision = nt > 0 ? c / nt : 0.0;
  if (conventional) std::swap(s.recall, s.precision);
  s.f1 = (s.recall + s.precision) > 0 ? 2.0 * s.recall * s.precision / (s.recall + s.precision) : 0.0;
  return s;
}

const char* perturbation_name(RealPerturbation p) {
  switch (p) {
    case RealPerturbation::kNone: return "none";
    case RealPerturbation::kGaussianVar: return "gaussian-var";
    case RealPerturbation::kScaledMixture: return "real-mixture";
    case RealPerturbation::kScaledCorrelated: return "real-correlated";
  }
  return "none";
}

RealPerturbation parse_perturbation(const std::string& s) {
  for (auto p : {RealPerturbation::kNone, RealPerturbation::kGaussianVar, RealPerturbation::kScaledMixture,
                 RealPerturbation::kScaledCorrelated})
    if (s == perturbation_name(p)) return p;
  fail(ErrorCode::kInvalidArgument, "unknown perturbation '" + s + "'");
}

namespace {

struct Standardizer {
  Vector mean, scale;
  double y_mean = 0.0, y_scale = 1.0;

  static Standardizer fit(const Matrix& x, const Vector& y) {
    Standardizer s;
    const std::size_t n = x.rows(), p = x.cols();
    s.mean.assign(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) s.mean[j] += x(i, j);
    for (double& m : s.mean) m /= static_cast<double>(n);
    s.scale = column_std(x);
    for (double& v : s.scale)
      if (!(v > 0)) v = 1.0;
    for (double v : y) s.y_mean += v;
    s.y_mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : y) ss += (v - s.y_mean) * (v - s.y_mean);
    s.y_scale = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 1.0;
    if (!(s.y_scale > 0)) s.y_scale = 1.0;
    return s;
  }

  GramProblem apply(const Matrix& x, const Vector& y) const {
    Matrix z(x.rows(), x.cols());
    Vector yz(y.size());
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) z(i, j) = (x(i, j) - mean[j]) / scale[j];
      yz[i] = (y[i] - y_mean) / y_scale;
    }
    return gram_problem(z, yz);
  }
};

}  // namespace

PipelineReport run_real_pipeline(const TabularDataset& data, const RealPipelineConfig& cfg, const RngStream& rng) {
  const std::size_t n = data.X_raw.rows(), p = data.X_raw.cols();
  if (n == 0 || p == 0) fail(ErrorCode::kEmptyDataset, "dataset is empty");
  if (data.y_raw.size() != n) fail(ErrorCode::kInvalidDims, "target length differs from n");
  if (cfg.noise_frac < 0 || cfg.budget_r < 0) fail(ErrorCode::kInvalidArgument, "noise parameters must be >= 0");

  PipelineReport rep;
  rep.n = n;
  rep.p = p;
  switch (cfg.lambda_policy.kind) {
    case LambdaPolicyKind::kFixed: rep.lambda = cfg.lambda_policy.value; break;
    case LambdaPolicyKind::kScaled: rep.lambda = scaled_lambda(cfg.lambda_policy.value, p, n); break;
    default: fail(ErrorCode::kInvalidArgument, "real-data pipeline needs a fixed or scaled lambda policy");
  }

  const Standardizer st = Standardizer::fit(data.X_raw, data.y_raw);
  rep.true_support = solve_lasso_gram(st.apply(data.X_raw, data.y_raw), rep.lambda, cfg.solver).support_hat;

  Matrix xp = data.X_raw;
  RngStream r = rng.substream(1);
  if (cfg.perturbation == RealPerturbation::kGaussianVar) {
    const double f = std::sqrt(cfg.noise_frac);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) xp(i, j) += f * data.feature_std[j] * r.gaussian();
  } else if (cfg.perturbation != RealPerturbation::kNone) {
    const RealVariant v =
        cfg.perturbation == RealPerturbation::kScaledMixture ? RealVariant::kMixture : RealVariant::kCorrelated;
    Vector row(p);
    for (std::size_t i = 0; i < n; ++i) {
      std::copy(data.X_raw.row(i), data.X_raw.row(i) + p, row.begin());
      const Vector e = perturb_real_scaled(row, cfg.budget_r, cfg.mix_weight, data.feature_std, v, r);
      for (std::size_t j = 0; j < p; ++j) xp(i, j) += e[j];
    }
  }
  // same transform as the clean run
  rep.perturbed_support = solve_lasso_gram(st.apply(xp, data.y_raw), rep.lambda, cfg.solver).support_hat;
  rep.f1 = f1_score(rep.true_support, rep.perturbed_support, cfg.conventional_f1);
  return rep;
}

TabularDataset make_proxy_tabular(std::size_t n, std::size_t p, std::size_t k, double noise_std, const RngStream& rng) {
  if (n < 2 || k == 0 || k > p) fail(ErrorCode::kInvalidDims, "need n >= 2 and 1 <= k <= p");
  RngStream r = rng.substream(7);
  const PopulationSpec truth = sample_ground_truth(p, k, r);
  Vector sc(p), off(p);
  for (std::size_t j = 0; j < p; ++j) {
    sc[j] = std::pow(10.0, r.uniform(-2.0, 2.0));
    off[j] = r.uniform(-10.0, 10.0) * sc[j];
  }
  TabularDataset ds;
  ds.X_raw = Matrix(n, p);
  ds.y_raw.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double y = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double z = r.gaussian();
      ds.X_raw(i, j) = off[j] + sc[j] * z;
      y += truth.w_star[j] * z;
    }
    ds.y_raw[i] = y + noise_std * r.gaussian();
  }
  for (std::size_t j = 0; j < p; ++j) ds.column_names.push_back("x" + std::to_string(j));
  ds.target_name = "y";
  ds.feature_std = column_std(ds.X_raw);
  return ds;
}

}  // namespace adlasso
