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

#include "adlasso/types.hpp"

#include <algorithm>
#include <cmath>

#include "adlasso/error.hpp"

namespace adlasso {

const char* error_tag(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidDims: return "InvalidDims";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kIndefiniteMatrix: return "IndefiniteMatrix";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kEigenFailure: return "EigenFailure";
    case ErrorCode::kSingularGram: return "SingularGram";
    case ErrorCode::kSingularSubmatrix: return "SingularSubmatrix";
    case ErrorCode::kNonPsdCovariance: return "NonPsdCovariance";
    case ErrorCode::kLambdaZeroDual: return "LambdaZeroDual";
    case ErrorCode::kKktViolation: return "KktViolation";
    case ErrorCode::kMissingTruth: return "MissingTruth";
    case ErrorCode::kMissingCleanData: return "MissingCleanData";
    case ErrorCode::kDegenerateDirection: return "DegenerateDirection";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingTarget: return "MissingTarget";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kUnknownClaim: return "UnknownClaim";
    case ErrorCode::kInvalidDeltaRange: return "InvalidDeltaRange";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

const char* mode_name(CorruptionMode m) {
  switch (m) {
    case CorruptionMode::kNone: return "none";
    case CorruptionMode::kGaussian: return "gaussian";
    case CorruptionMode::kMixture: return "mixture";
    case CorruptionMode::kCorrelated: return "correlated";
    case CorruptionMode::kRealScaledMixture: return "real_scaled_mixture";
    case CorruptionMode::kRealScaledCorrelated: return "real_scaled_correlated";
  }
  return "none";
}

CorruptionMode parse_mode(const std::string& s) {
  for (auto m : {CorruptionMode::kNone, CorruptionMode::kGaussian, CorruptionMode::kMixture,
                 CorruptionMode::kCorrelated, CorruptionMode::kRealScaledMixture,
                 CorruptionMode::kRealScaledCorrelated})
    if (s == mode_name(m)) return m;
  fail(ErrorCode::kInvalidArgument, "unknown corruption mode '" + s + "'");
}

// Eigenvalues >= 0 up to rounding. Diagonal matrices skip the factorization.
static void require_psd(const Matrix& m, const char* what) {
  if (is_diagonal(m)) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, i) < -1e-12) fail(ErrorCode::kNonPsdCovariance, std::string(what) + " has a negative diagonal entry");
    return;
  }
  try {
    cholesky_sqrt(m);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIndefiniteMatrix)
      fail(ErrorCode::kNonPsdCovariance, std::string(what) + " has a negative eigenvalue");
    throw;
  }
}

void PopulationSpec::validate() const {
  if (k == 0 || k > p) fail(ErrorCode::kInvalidDims, "need 1 <= k <= p");
  if (support.size() != k) fail(ErrorCode::kInvalidDims, "support size differs from k");
  if (w_star.size() != p) fail(ErrorCode::kInvalidDims, "w_star length differs from p");
  if (!std::is_sorted(support.begin(), support.end())) fail(ErrorCode::kInvalidArgument, "support must be sorted");
  std::vector<char> in(p, 0);
  for (std::size_t i : support) {
    if (i >= p) fail(ErrorCode::kInvalidDims, "support index out of range");
    in[i] = 1;
  }
  for (std::size_t i = 0; i < p; ++i)
    if ((w_star[i] != 0.0) != (in[i] != 0))
      fail(ErrorCode::kInvalidArgument, "w_star nonzeros must coincide with the support");
  if (sigma_cov.rows() != p || sigma_cov.cols() != p) fail(ErrorCode::kInvalidDims, "sigma_cov must be p x p");
  if (max_asymmetry(sigma_cov) > 1e-12) fail(ErrorCode::kNotSymmetric, "sigma_cov is not symmetric");
  require_psd(sigma_cov, "sigma_cov");
}

void CorruptionSpec::validate(std::size_t p) const {
  if (budget_r < 0 || sigma_ey < 0) fail(ErrorCode::kInvalidArgument, "budget_r and sigma_ey must be >= 0");
  if (mix_weight < 0 || mix_weight > 1) fail(ErrorCode::kInvalidArgument, "mix_weight must lie in [0,1]");
  if (!sigma_e.empty()) {
    if (sigma_e.rows() != p || sigma_e.cols() != p) fail(ErrorCode::kInvalidDims, "sigma_e must be p x p");
    if (max_asymmetry(sigma_e) > 1e-12) fail(ErrorCode::kNotSymmetric, "sigma_e is not symmetric");
    require_psd(sigma_e, "sigma_e");
  }
  if (mode == CorruptionMode::kNone) {
    if (budget_r != 0.0) fail(ErrorCode::kInvalidArgument, "mode none requires r = 0");
    if (!sigma_e.empty() && max_abs(sigma_e) != 0.0)
      fail(ErrorCode::kInvalidArgument, "mode none requires sigma_e = 0");
  }
}

Matrix CorruptionSpec::sigma_e_or_zero(std::size_t p) const { return sigma_e.empty() ? Matrix(p, p) : sigma_e; }

void ProblemInstance::validate() const {
  if (X.rows() == 0) fail(ErrorCode::kInvalidDims, "instance needs n >= 1");
  if (y.size() != X.rows()) fail(ErrorCode::kInvalidDims, "y length differs from n");
  for (const auto* m : {X_star ? &*X_star : nullptr, E_x ? &*E_x : nullptr})
    if (m && (m->rows() != X.rows() || m->cols() != X.cols()))
      fail(ErrorCode::kInvalidDims, "retained design has the wrong shape");
  if (e_y && e_y->size() != X.rows()) fail(ErrorCode::kInvalidDims, "e_y length differs from n");
  if (truth && truth->p != X.cols()) fail(ErrorCode::kInvalidDims, "truth dimension differs from p");
  if (X_star && E_x) {
    const auto& x = X.data();
    const auto& xs = X_star->data();
    const auto& ex = E_x->data();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(x[i] - (xs[i] + ex[i])) > 1e-12)
        fail(ErrorCode::kInvalidArgument, "X differs from X_star + E_x at entry " + std::to_string(i));
  }
}

}  // namespace adlasso
