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

#include "adlasso/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adlasso/error.hpp"

namespace adlasso {

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

Index support_of(const Vector& w, double tol) {
  Index s;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (std::abs(w[i]) > tol) s.push_back(i);
  return s;
}

static double l1(const Vector& w) {
  double s = 0.0;
  for (double v : w) s += std::abs(v);
  return s;
}

// Fills ẑ and the KKT residual from the gradient of the smooth part.
static void finalize_dual(LassoSolution& sol, const Vector& grad) {
  const std::size_t p = grad.size();
  const double lam = sol.lambda;
  sol.z_hat.assign(p, 0.0);
  double kkt = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    if (sol.w_hat[i] != 0.0) {
      const double s = sol.w_hat[i] > 0 ? 1.0 : -1.0;
      sol.z_hat[i] = s;
      kkt = std::max(kkt, std::abs(grad[i] + lam * s));
    } else {
      double z = -grad[i] / lam;
      if (std::abs(z) > 1.0 + 1e-6)
        fail(ErrorCode::kKktViolation, "|z_" + std::to_string(i) + "| = " + std::to_string(std::abs(z)));
      z = std::clamp(z, -1.0, 1.0);
      sol.z_hat[i] = z;
      kkt = std::max(kkt, std::abs(grad[i] + lam * z));
    }
  }
  sol.kkt_residual = kkt;
  sol.has_dual = true;
}

static double kkt_of(const Vector& w, const Vector& grad, double lam) {
  double kkt = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0)
      kkt = std::max(kkt, std::abs(grad[i] + lam * (w[i] > 0 ? 1.0 : -1.0)));
    else
      kkt = std::max(kkt, std::max(0.0, std::abs(grad[i]) - lam));
  }
  return kkt;
}

static bool descent_ok(double prev, double cur) { return cur <= prev + 1e-12 * std::max(1.0, std::abs(prev)); }

// λ = 0: normal equations, else minimum-norm least squares.
static Vector least_squares(const Matrix& gram, const Vector& xty) {
  try {
    return spd_solve(gram, xty);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularGram) throw;
  }
  const EigenResult eig = symmetric_eigen(gram);
  const std::size_t p = xty.size();
  const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  Vector w(p, 0.0);
  for (std::size_t c = 0; c < p; ++c) {
    if (eig.values[c] <= 1e-12 * top) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < p; ++i) proj += eig.vectors(i, c) * xty[i];
    proj /= eig.values[c];
    for (std::size_t i = 0; i < p; ++i) w[i] += proj * eig.vectors(i, c);
  }
  return w;
}

static void check_common(double lambda, const SolverOptions& opts, std::size_t p) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail(ErrorCode::kInvalidArgument, "lambda must be finite and >= 0");
  if (lambda == 0.0 && opts.require_dual) fail(ErrorCode::kLambdaZeroDual, "dual vector undefined at lambda = 0");
  if (opts.initial && opts.initial->size() != p) fail(ErrorCode::kInvalidDims, "initial vector has the wrong length");
}

GramProblem gram_problem(const Matrix& X, const Vector& y) {
  const std::size_t n = X.rows();
  if (y.size() != n) fail(ErrorCode::kInvalidDims, "y length differs from n");
  GramProblem g;
  g.n = n;
  g.gram = scale(matmul_tn(X, X), 1.0 / static_cast<double>(n));
  g.xty = matvec_t(X, y);
  for (double& v : g.xty) v /= static_cast<double>(n);
  g.yty = dot(y, y) / static_cast<double>(n);
  return g;
}

LassoSolution solve_lasso(const Matrix& X, const Vector& y, double lambda, const SolverOptions& opts) {
  const std::size_t n = X.rows(), p = X.cols();
  if (n == 0) fail(ErrorCode::kInvalidDims, "n must be >= 1");
  if (y.size() != n) fail(ErrorCode::kInvalidDims, "y length differs from n");
  check_common(lambda, opts, p);
  const double dn = static_cast<double>(n);

  LassoSolution sol;
  sol.lambda = lambda;
  sol.support_tol = opts.support_tol;

  if (lambda == 0.0) {
    const GramProblem g = gram_problem(X, y);
    sol.w_hat = least_squares(g.gram, g.xty);
    Vector grad = matvec(g.gram, sol.w_hat);
    for (std::size_t i = 0; i < p; ++i) grad[i] -= g.xty[i];
    sol.kkt_residual = norm_inf(grad);
    sol.support_hat = support_of(sol.w_hat, opts.support_tol);
    Vector r = y;
    const Vector xw = matvec(X, sol.w_hat);
    for (std::size_t i = 0; i < n; ++i) r[i] -= xw[i];
    sol.objective = dot(r, r) / (2 * dn);
    return sol;
  }

  // column-major copy for contiguous coordinate updates
  std::vector<double> cols(n * p);
  Vector colsq(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = X.row(i);
    for (std::size_t j = 0; j < p; ++j) cols[j * n + i] = xi[j];
  }
  for (std::size_t j = 0; j < p; ++j) {
    const double* c = &cols[j * n];
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += c[i] * c[i];
    colsq[j] = s / dn;
  }

  Vector w = opts.initial ? *opts.initial : Vector(p, 0.0);
  Vector r = y;
  for (std::size_t j = 0; j < p; ++j) {
    if (w[j] == 0.0) continue;
    const double* c = &cols[j * n];
    for (std::size_t i = 0; i < n; ++i) r[i] -= w[j] * c[i];
  }
  auto objective = [&] { return dot(r, r) / (2 * dn) + lambda * l1(w); };
  auto gradient = [&] {
    // fresh residual to avoid drift
    Vector rr = y;
    for (std::size_t j = 0; j < p; ++j) {
      if (w[j] == 0.0) continue;
      const double* c = &cols[j * n];
      for (std::size_t i = 0; i < n; ++i) rr[i] -= w[j] * c[i];
    }
    r = rr;
    Vector g(p);
    for (std::size_t j = 0; j < p; ++j) {
      const double* c = &cols[j * n];
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += c[i] * rr[i];
      g[j] = -s / dn;
    }
    return g;
  };

  double prev = objective();
  bool converged = false;
  std::size_t sweep = 0;
  Vector grad;
  while (sweep < opts.max_iter) {
    ++sweep;
    double max_change = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double* c = &cols[j * n];
      double nw = 0.0;
      if (colsq[j] > 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += c[i] * r[i];
        nw = soft_threshold(s / dn + colsq[j] * w[j], lambda) / colsq[j];
      }
      const double d = nw - w[j];
      if (d != 0.0) {
        for (std::size_t i = 0; i < n; ++i) r[i] -= d * c[i];
        w[j] = nw;
        max_change = std::max(max_change, std::abs(d));
      }
    }
    const double cur = objective();
    if (!descent_ok(prev, cur)) sol.monotone_descent = false;
    prev = cur;
    if (max_change < opts.coord_tol) {
      grad = gradient();
      if (kkt_of(w, grad, lambda) <= opts.tol) {
        converged = true;
        break;
      }
    }
  }
  if (!converged)
    fail(ErrorCode::kNoConvergence, "coordinate descent did not converge in " + std::to_string(opts.max_iter) + " sweeps");
  sol.w_hat = w;
  sol.iterations = sweep;
  sol.objective = objective();
  sol.support_hat = support_of(w, opts.support_tol);
  finalize_dual(sol, grad);
  return sol;
}

LassoSolution solve_lasso(const ProblemInstance& inst, double lambda, const SolverOptions& opts) {
  return solve_lasso(inst.X, inst.y, lambda, opts);
}

LassoSolution solve_lasso_gram(const GramProblem& g, double lambda, const SolverOptions& opts) {
  const std::size_t p = g.xty.size();
  if (g.gram.rows() != p || g.gram.cols() != p) fail(ErrorCode::kInvalidDims, "gram must be p x p");
  check_common(lambda, opts, p);

  LassoSolution sol;
  sol.lambda = lambda;
  sol.support_tol = opts.support_tol;
  if (lambda == 0.0) {
    sol.w_hat = least_squares(g.gram, g.xty);
    Vector grad = matvec(g.gram, sol.w_hat);
    for (std::size_t i = 0; i < p; ++i) grad[i] -= g.xty[i];
    sol.kkt_residual = norm_inf(grad);
    sol.support_hat = support_of(sol.w_hat, opts.support_tol);
    sol.objective = 0.5 * (g.yty - 2 * dot(sol.w_hat, g.xty) + dot(sol.w_hat, matvec(g.gram, sol.w_hat)));
    return sol;
  }

  Vector w = opts.initial ? *opts.initial : Vector(p, 0.0);
  Vector gw = matvec(g.gram, w);  // G w, kept current
  auto objective = [&] { return 0.5 * (g.yty - 2 * dot(w, g.xty) + dot(w, gw)) + lambda * l1(w); };

  double prev = objective();
  bool converged = false;
  std::size_t sweep = 0;
  Vector grad(p);
  while (sweep < opts.max_iter) {
    ++sweep;
    double max_change = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double gjj = g.gram(j, j);
      double nw = 0.0;
      if (gjj > 0.0) nw = soft_threshold(g.xty[j] - gw[j] + gjj * w[j], lambda) / gjj;
      const double d = nw - w[j];
      if (d != 0.0) {
        const double* col = g.gram.row(j);  // symmetric: row j is column j
        for (std::size_t i = 0; i < p; ++i) gw[i] += d * col[i];
        w[j] = nw;
        max_change = std::max(max_change, std::abs(d));
      }
    }
    const double cur = objective();
    if (!descent_ok(prev, cur)) sol.monotone_descent = false;
    prev = cur;
    if (max_change < opts.coord_tol) {
      gw = matvec(g.gram, w);
      for (std::size_t i = 0; i < p; ++i) grad[i] = gw[i] - g.xty[i];
      if (kkt_of(w, grad, lambda) <= opts.tol) {
        converged = true;
        break;
      }
    }
  }
  if (!converged)
    fail(ErrorCode::kNoConvergence, "coordinate descent did not converge in " + std::to_string(opts.max_iter) + " sweeps");
  sol.w_hat = w;
  sol.iterations = sweep;
  sol.objective = objective();
  sol.support_hat = support_of(w, opts.support_tol);
  finalize_dual(sol, grad);
  return sol;
}

Matrix projection_matrix(const Matrix& x_s) {
  const std::size_t n = x_s.rows(), k = x_s.cols();
  const Matrix h = matmul_tn(x_s, x_s);
  if (k > 0) {
    const EigenResult eig = symmetric_eigen(h);
    if (!(eig.values.front() > 1e-10 * h.trace() / static_cast<double>(k)))
      fail(ErrorCode::kSingularGram, "X_S^T X_S is not invertible");
  }
  Matrix p = Matrix::identity(n);
  if (k == 0) return p;
  const Matrix hinv = spd_inverse(h);
  const Matrix a = matmul(x_s, hinv);  // n×k
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < k; ++t) s += a(i, t) * x_s(j, t);
      p(i, j) -= s;
      if (i != j) p(j, i) = p(i, j);
    }
  return p;
}

PdwCertificate pdw_certificate(const ProblemInstance& inst, const LassoSolution& sol) {
  if (!inst.truth) fail(ErrorCode::kMissingTruth, "certificate needs the true support");
  if (!inst.E_x || !inst.e_y) fail(ErrorCode::kMissingCleanData, "certificate needs retained E_x and e_y");
  if (!sol.has_dual) fail(ErrorCode::kLambdaZeroDual, "certificate needs a dual vector (lambda > 0)");
  const auto& truth = *inst.truth;
  const std::size_t n = inst.n(), p = inst.p();
  const Index& s = truth.support;
  const Index sc = complement(s, p);
  const double dn = static_cast<double>(n);

  const Matrix xs = select_columns(inst.X, s);
  const Matrix xsc = select_columns(inst.X, sc);
  const Matrix h = matmul_tn(xs, xs);

  PdwCertificate c;
  c.min_eig_hessian = symmetric_eigen(scale(h, 1.0 / dn)).values.front();

  // t1 = X_Scᵀ X_S H⁻¹ ẑ_S
  const Vector a = spd_solve(h, select(sol.z_hat, s));
  const Vector t1 = matvec_t(xsc, matvec(xs, a));

  // t2 = X_Scᵀ P (e_y − E_S w*_S) / (λ n)
  Vector eps = *inst.e_y;
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (std::size_t j : s) v += (*inst.E_x)(i, j) * truth.w_star[j];
    eps[i] -= v;
  }
  const Vector coef = spd_solve(h, matvec_t(xs, eps));
  const Vector fit = matvec(xs, coef);
  for (std::size_t i = 0; i < n; ++i) eps[i] -= fit[i];
  Vector t2 = matvec_t(xsc, eps);
  for (double& v : t2) v /= sol.lambda * dn;

  const Vector zsc = select(sol.z_hat, sc);
  c.z_sc_inf = norm_inf(zsc);
  c.z_sc_t1_inf = norm_inf(t1);
  c.z_sc_t2_inf = norm_inf(t2);
  c.strict_dual_feasible = c.z_sc_inf < 1.0;
  double rec = 0.0;
  for (std::size_t i = 0; i < sc.size(); ++i) rec = std::max(rec, std::abs(zsc[i] - t1[i] - t2[i]));
  c.reconstruction_error = rec;

  c.sign_consistent = true;
  double err = 0.0;
  for (std::size_t j : s) {
    const double wh = sol.w_hat[j], ws = truth.w_star[j];
    if (wh == 0.0 || (wh > 0) != (ws > 0)) c.sign_consistent = false;
    err = std::max(err, std::abs(wh - ws));
  }
  c.w_err_inf = err;
  return c;
}

}  // namespace adlasso
