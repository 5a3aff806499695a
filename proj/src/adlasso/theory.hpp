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

#include "adlasso/lasso.hpp"
#include "adlasso/types.hpp"

namespace adlasso {

// Second-order description of the perturbation used by the bounds.
struct TheoryModel {
  Matrix sigma_e;     // Cov(e)
  Matrix cross_cov;   // (i, j) = E[x*_i e_j]
  double r_proxy = 0.0;
  std::size_t estimation_n = 0;  // 0 when analytic
};

// Analytic where the mode allows it; the correlated modes are estimated from
// a pilot sample of pilot_n rows.
TheoryModel theory_model(const PopulationSpec& truth, const CorruptionSpec& corruption, std::size_t pilot_n = 20000,
                         std::uint64_t pilot_seed = 0);
// Empirical second moments of the retained X*, E_x.
TheoryModel estimate_theory_model(const ProblemInstance& inst);

struct TheoryOptions {
  bool appendix_lambda1 = false;  // (8 q1 σ_ey / γ)√(4 log p / n)
  std::optional<double> lambda_eval;
};

struct TheoryBundle {
  std::size_t n = 0, p = 0, k = 0;
  double gamma = 0.0;
  bool incoherence_violated = false;
  double c_min = 0, c_max = 0, d_min = 0, d_max = 0, f_min = 0, f_max = 0;
  double g_max = 0, h_max = 0;
  double xi = 0, q = 0, q1 = 0, q2 = 0, q3 = 0;
  double b = 0, b2 = 0;
  double b_expanded = 0;  // with Σ_e added to the cross block, informational
  double lambda1 = 0, lambda2 = 0, lambda3 = 0, lambda_lb = 0;
  bool appendix_lambda1 = false;
  double lambda_eval = 0, f_lambda = 0;
  double min_abs_w = 0;
  bool min_signal_ok = false;
  bool b_zero = false;
  std::size_t estimation_n = 0;

  double f_of(double lambda) const { return lambda * (1.0 + gamma / 4.0) * (1.5 * g_max); }
};

Matrix corrupted_covariance(const PopulationSpec& truth, const TheoryModel& model);

double mutual_incoherence(const Matrix& sigma_x, const Index& support);

TheoryBundle compute_bundle(const PopulationSpec& truth, const CorruptionSpec& corruption, const TheoryModel& model,
                            std::size_t n, const TheoryOptions& opts = {});

struct ThresholdPolicy {
  bool automatic = true;
  double t = 0.0;
};

enum class AttackSide { kNonSupport, kSupport };

struct SupportGuess {
  Index support;
  bool determined = false;
  bool low_confidence = false;
  double threshold = 0.0;
  Vector means;
};

SupportGuess trivial_support_guess(const ProblemInstance& inst, const ThresholdPolicy& policy,
                                   AttackSide side = AttackSide::kNonSupport);

struct ClaimReport {
  bool no_false_positives = false;   // claim 1
  bool unique = false;               // claim 2, re-solve proxy
  double resolve_diff_inf = 0.0;
  bool error_within_bound = false;   // claim 3
  double w_err_inf = 0.0;
  double f_lambda = 0.0;
  bool sign_consistent = false;      // claim 4
  bool min_signal_ok = false;
  bool b_zero = false;               // claim 5
  double lambda = 0.0;
  double lambda_lb = 0.0;
  bool outside_guarantee_regime = false;
};

ClaimReport check_theorem1(const ProblemInstance& inst, const LassoSolution& sol, const PdwCertificate& cert,
                           const TheoryBundle& bundle, const SolverOptions& opts = {});

}  // namespace adlasso
