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

#include "adlasso/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "adlasso/datagen.hpp"
#include "adlasso/error.hpp"

namespace adlasso {

static constexpr double kInf = std::numeric_limits<double>::infinity();

TheoryModel theory_model(const PopulationSpec& truth, const CorruptionSpec& corruption, std::size_t pilot_n,
                         std::uint64_t pilot_seed) {
  const std::size_t p = truth.p;
  TheoryModel m;
  m.cross_cov = Matrix(p, p);
  switch (corruption.mode) {
    case CorruptionMode::kNone:
      m.sigma_e = Matrix(p, p);
      m.r_proxy = 0.0;
      return m;
    case CorruptionMode::kGaussian:
      m.sigma_e = corruption.sigma_e_or_zero(p);
      m.r_proxy = 1.0;
      return m;
    case CorruptionMode::kMixture:
      // both branches give a direction with covariance I/p, independent of x*
      m.sigma_e = scale(Matrix::identity(p), corruption.budget_r * corruption.budget_r / static_cast<double>(p));
      m.r_proxy = 1.0;
      return m;
    default:
      break;
  }
  if (pilot_n == 0) fail(ErrorCode::kInvalidArgument, "pilot sample size must be >= 1");
  RowSampler sampler(truth, corruption, RngStream(pilot_seed, 0x7069'6c6f'74ULL));
  Vector xs(p), ex(p);
  m.sigma_e = Matrix(p, p);
  for (std::size_t r = 0; r < pilot_n; ++r) {
    double ys = 0, ey = 0;
    sampler.next(xs.data(), ex.data(), ys, ey);
    for (std::size_t i = 0; i < p; ++i) {
      double* ce = m.sigma_e.row(i);
      double* cx = m.cross_cov.row(i);
      for (std::size_t j = 0; j < p; ++j) {
        ce[j] += ex[i] * ex[j];
        cx[j] += xs[i] * ex[j];
      }
    }
  }
  m.sigma_e = scale(m.sigma_e, 1.0 / static_cast<double>(pilot_n));
  m.cross_cov = scale(m.cross_cov, 1.0 / static_cast<double>(pilot_n));
  m.r_proxy = 1.0;
  m.estimation_n = pilot_n;
  return m;
}

TheoryModel estimate_theory_model(const ProblemInstance& inst) {
  if (!inst.X_star || !inst.E_x) fail(ErrorCode::kMissingCleanData, "estimation needs retained X* and E_x");
  const double dn = static_cast<double>(inst.n());
  TheoryModel m;
  m.sigma_e = scale(matmul_tn(*inst.E_x, *inst.E_x), 1.0 / dn);
  m.cross_cov = scale(matmul_tn(*inst.X_star, *inst.E_x), 1.0 / dn);
  m.r_proxy = inst.corruption.mode == CorruptionMode::kNone ? 0.0 : 1.0;
  m.estimation_n = inst.n();
  return m;
}

Matrix corrupted_covariance(const PopulationSpec& truth, const TheoryModel& model) {
  const Matrix& c = model.cross_cov;
  return add(add(truth.sigma_cov, add(c, c.transpose())), model.sigma_e);
}

double mutual_incoherence(const Matrix& sigma_x, const Index& support) {
  const std::size_t p = sigma_x.rows();
  const Index sc = complement(support, p);
  if (sc.empty()) return 1.0;
  const Matrix ss = submatrix(sigma_x, support, support);
  Matrix inv;
  try {
    inv = spd_inverse(ss);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSingularGram) fail(ErrorCode::kSingularSubmatrix, "Sigma_x[S,S] is not invertible");
    throw;
  }
  return 1.0 - induced_inf_norm(matmul(submatrix(sigma_x, sc, support), inv));
}

static std::pair<double, double> extremes(const Matrix& m, bool require_psd, const char* what) {
  if (m.rows() == 0) return {0.0, 0.0};
  const EigenResult e = symmetric_eigen(m);
  const double lo = e.values.front(), hi = e.values.back();
  if (require_psd && lo < -1e-10 * std::max(1.0, std::abs(hi)))
    fail(ErrorCode::kNonPsdCovariance, std::string(what) + " has a negative eigenvalue");
  return {lo, hi};
}

TheoryBundle compute_bundle(const PopulationSpec& truth, const CorruptionSpec& corruption, const TheoryModel& model,
                            std::size_t n, const TheoryOptions& opts) {
  truth.validate();
  const std::size_t p = truth.p;
  if (n == 0) fail(ErrorCode::kInvalidDims, "n must be >= 1");
  if (model.sigma_e.rows() != p || model.cross_cov.rows() != p || model.cross_cov.cols() != p)
    fail(ErrorCode::kInvalidDims, "theory model must be p x p");
  const Index& s = truth.support;
  const Index sc = complement(s, p);
  const Matrix& sig = truth.sigma_cov;
  const Matrix& sig_e = model.sigma_e;
  const Matrix& cross = model.cross_cov;

  TheoryBundle b;
  b.n = n;
  b.p = p;
  b.k = truth.k;
  b.estimation_n = model.estimation_n;
  b.appendix_lambda1 = opts.appendix_lambda1;

  const Matrix sig_x = corrupted_covariance(truth, model);
  b.gamma = mutual_incoherence(sig_x, s);
  b.incoherence_violated = !(b.gamma > 0.0);

  std::tie(b.c_min, b.c_max) = extremes(sig, true, "Sigma");
  std::tie(b.d_min, b.d_max) = extremes(submatrix(sig_e, s, s), true, "Sigma_e[S,S]");
  std::tie(b.f_min, b.f_max) = extremes(scale(add(cross, cross.transpose()), 0.5), false, "Sigma_ex");

  try {
    b.g_max = induced_inf_norm(spd_inverse(submatrix(sig_x, s, s)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSingularGram) fail(ErrorCode::kSingularSubmatrix, "Sigma_x[S,S] is not invertible");
    throw;
  }
  b.h_max = induced_inf_norm(submatrix(sig_x, sc, s));

  const double sigma = truth.sigma_proxy, r = model.r_proxy;
  auto proxy = [&](std::size_t i) {
    return sigma * std::sqrt(std::max(0.0, sig(i, i))) + r * std::sqrt(std::max(0.0, sig_e(i, i)));
  };
  auto max_over = [&](const Index& idx) {
    double m = 0.0;
    for (std::size_t i : idx) m = std::max(m, proxy(i));
    return m;
  };
  Index all(p);
  for (std::size_t i = 0; i < p; ++i) all[i] = i;
  b.xi = max_over(s) * max_over(sc);

  const Vector ws = select(truth.w_star, s);
  const double quad = std::max(0.0, dot(ws, matvec(submatrix(sig_e, s, s), ws)));
  const double lead = r * std::sqrt(quad);
  b.q = lead * max_over(all);
  b.q2 = lead * max_over(sc);
  b.q3 = lead * max_over(s);
  b.q1 = std::sqrt(std::max(0.0, 3.0 * (b.c_max + 2.0 * b.f_max + b.d_max)));

  const Vector cross_w = matvec(submatrix(cross, all, s), ws);
  b.b = norm_inf(cross_w);
  b.b2 = norm_inf(select(cross_w, sc));
  b.b_expanded = norm_inf(matvec(add(submatrix(cross, all, s), submatrix(sig_e, all, s)), ws));
  b.b_zero = max_abs(submatrix(cross, all, s)) == 0.0;

  const double logp = std::log(static_cast<double>(p));
  const double dn = static_cast<double>(n);
  if (b.incoherence_violated) {
    b.lambda1 = b.lambda2 = b.lambda3 = b.lambda_lb = kInf;
  } else {
    const double g = b.gamma;
    b.lambda1 = opts.appendix_lambda1 ? (8.0 * b.q1 * corruption.sigma_ey / g) * std::sqrt(4.0 * logp / dn)
                                      : (b.q1 * corruption.sigma_ey / g) * std::sqrt(2.0 * logp / dn);
    b.lambda2 = 16.0 * b.b / g;
    b.lambda3 = (16.0 * b.q / g) * std::sqrt(4.0 * logp / dn);
    b.lambda_lb = std::max({b.lambda1, b.lambda2, b.lambda3});
  }
  b.lambda_eval = opts.lambda_eval.value_or(b.lambda_lb);
  b.f_lambda = b.f_of(b.lambda_eval);
  b.min_abs_w = kInf;
  for (double w : ws) b.min_abs_w = std::min(b.min_abs_w, std::abs(w));
  b.min_signal_ok = b.min_abs_w >= 2.0 * b.f_lambda;
  return b;
}

SupportGuess trivial_support_guess(const ProblemInstance& inst, const ThresholdPolicy& policy, AttackSide side) {
  const std::size_t n = inst.n(), p = inst.p();
  if (n == 0) fail(ErrorCode::kInvalidDims, "n must be >= 1");
  SupportGuess g;
  g.means.assign(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) g.means[j] += inst.X(i, j);
  for (double& m : g.means) m /= static_cast<double>(n);
  g.low_confidence = n == 1;

  const double top = norm_inf(g.means);
  std::vector<int> cls(p, 0);  // 1 shifted, -1 unshifted
  bool ambiguous = false;
  if (policy.automatic) {
    g.threshold = top / 3.0;
    for (std::size_t j = 0; j < p; ++j) cls[j] = std::abs(g.means[j]) > g.threshold ? 1 : -1;
    if (n > 1) {
      // the largest mean must stand out from sampling noise
      const Vector sd = column_std(inst.X);
      const double crit = std::sqrt(2.0 * std::log(2.0 * static_cast<double>(p))) + 2.0;
      double zmax = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        if (sd[j] > 0)
          zmax = std::max(zmax, std::abs(g.means[j]) * std::sqrt(static_cast<double>(n)) / sd[j]);
        else if (g.means[j] != 0)
          zmax = kInf;
      }
      if (zmax < crit) ambiguous = true;
    } else if (top == 0.0) {
      ambiguous = true;
    }
  } else {
    g.threshold = policy.t;
    for (std::size_t j = 0; j < p; ++j) cls[j] = std::abs(g.means[j]) > policy.t ? 1 : -1;
  }
  const int want = side == AttackSide::kNonSupport ? -1 : 1;
  Index guess;
  for (std::size_t j = 0; j < p; ++j)
    if (cls[j] == want) guess.push_back(j);
  const bool split = std::any_of(cls.begin(), cls.end(), [](int c) { return c == 1; }) &&
                     std::any_of(cls.begin(), cls.end(), [](int c) { return c == -1; });
  g.determined = !ambiguous && split;
  if (g.determined) g.support = std::move(guess);
  return g;
}

ClaimReport check_theorem1(const ProblemInstance& inst, const LassoSolution& sol, const PdwCertificate& cert,
                           const TheoryBundle& bundle, const SolverOptions& opts) {
  if (!inst.truth) fail(ErrorCode::kMissingTruth, "claim report needs the true support");
  const auto& truth = *inst.truth;
  ClaimReport c;
  c.lambda = sol.lambda;
  c.lambda_lb = bundle.lambda_lb;
  c.outside_guarantee_regime = !(sol.lambda >= bundle.lambda_lb);

  std::vector<char> in(truth.p, 0);
  for (std::size_t i : truth.support) in[i] = 1;
  c.no_false_positives = std::all_of(sol.support_hat.begin(), sol.support_hat.end(), [&](std::size_t i) { return in[i] != 0; });

  // restart from a random point drawn from the instance seed
  RngStream rng(inst.seed, 0x756e69717565ULL);
  SolverOptions o = opts;
  o.initial = Vector(truth.p);
  for (double& v : *o.initial) v = rng.gaussian();
  const LassoSolution again = solve_lasso(inst, sol.lambda, o);
  double diff = 0.0;
  for (std::size_t i = 0; i < truth.p; ++i) diff = std::max(diff, std::abs(again.w_hat[i] - sol.w_hat[i]));
  c.resolve_diff_inf = diff;
  c.unique = diff <= 1e-6;

  c.f_lambda = bundle.f_of(sol.lambda);
  c.w_err_inf = cert.w_err_inf;
  c.error_within_bound = cert.w_err_inf <= c.f_lambda;
  c.sign_consistent = cert.sign_consistent;
  c.min_signal_ok = bundle.min_abs_w >= 2.0 * c.f_lambda;
  c.b_zero = bundle.b_zero;
  return c;
}

}  // namespace adlasso
