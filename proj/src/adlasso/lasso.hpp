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

#pragma once

#include <optional>

#include "adlasso/types.hpp"

namespace adlasso {

struct SolverOptions {
  double tol = 1e-7;         // KKT residual
  double coord_tol = 1e-10;  // max coordinate change per sweep
  std::size_t max_iter = 100000;
  double support_tol = 1e-6;
  bool require_dual = false;
  std::optional<Vector> initial;
};

struct LassoSolution {
  Vector w_hat;
  Vector z_hat;  // empty when λ = 0
  double lambda = 0.0;
  std::size_t iterations = 0;
  double kkt_residual = 0.0;
  Index support_hat;
  double support_tol = 1e-6;
  double objective = 0.0;
  bool has_dual = false;
  bool monotone_descent = true;
};

struct PdwCertificate {
  double z_sc_inf = 0.0;
  double z_sc_t1_inf = 0.0;
  double z_sc_t2_inf = 0.0;
  double min_eig_hessian = 0.0;
  bool strict_dual_feasible = false;
  bool sign_consistent = false;
  double w_err_inf = 0.0;
  // ‖ẑ_{S^c} − (t1 + t2)‖∞; small whenever S(ŵ) ⊆ S
  double reconstruction_error = 0.0;
};

// Sufficient statistics of a design: gram = XᵀX/n, xty = Xᵀy/n, yty = yᵀy/n.
struct GramProblem {
  Matrix gram;
  Vector xty;
  double yty = 0.0;
  std::size_t n = 0;
};

double soft_threshold(double x, double t);

LassoSolution solve_lasso(const Matrix& X, const Vector& y, double lambda, const SolverOptions& opts = {});
LassoSolution solve_lasso(const ProblemInstance& inst, double lambda, const SolverOptions& opts = {});
// Covariance-update coordinate descent on the Gram form. Same minimizer.
LassoSolution solve_lasso_gram(const GramProblem& g, double lambda, const SolverOptions& opts = {});

GramProblem gram_problem(const Matrix& X, const Vector& y);

// I − X_S(X_SᵀX_S)⁻¹X_Sᵀ
Matrix projection_matrix(const Matrix& x_s);

PdwCertificate pdw_certificate(const ProblemInstance& inst, const LassoSolution& sol);

Index support_of(const Vector& w, double tol);

}  // namespace adlasso
