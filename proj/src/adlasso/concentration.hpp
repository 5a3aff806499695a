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

#include <cstdint>
#include <string>
#include <utility>

#include "adlasso/linalg.hpp"

namespace adlasso {

enum class ClaimId {
  kB2Spectral,
  kM1Indinf,
  kM2Inverse,
  kMinEigHessian,
  kMinEigXstar,
  kMinEigEx,
  kProdSubgauss,
  kSumSubgauss,
};

const char* claim_name(ClaimId c);
// Accepts the full id (e.g. "B2_spectral") or a short alias ("b2", "m1", "m2",
// "hess", "xstar", "ex", "prod", "sum").
ClaimId parse_claim(const std::string& s);

// [[0, B], [Bᵀ, 0]]
Matrix symmetrize_embed(const Matrix& b);

struct VEigenSummary {
  Vector eigenvalues;  // ascending, 2k values
  std::size_t nonzero_count = 0;
  double predicted = 0.0;  // magnitude of each nonzero eigenvalue
  double max_rel_error = 0.0;
  double threshold = 0.0;
  bool rank_ok = false;
};

VEigenSummary v_matrix_eigenvalues(const Vector& sigma_e_diag, double r, double sigma, double max_sigma_jj,
                                   std::size_t n);

enum class Dependence { kIndependent, kCorrelated };

// Diagonal population: Σ = sigma_x·I, Σ_e = sigma_e·I. The correlated regime
// draws e = ρ√(σ_e/σ_x)·x* + √(1−ρ²)√σ_e·z, so Cov(e, x*) = ρ√(σ_e σ_x)·I.
// prod/sum claims use scalar X ~ N(0, sx²), Y ~ N(0, sy²); the dependent case
// takes Y = (sy/sx)·X.
struct TailParams {
  std::size_t n = 500;
  std::size_t p = 64;
  std::size_t k = 5;
  double sigma_x = 1.0;
  double sigma_e = 1.0;
  Dependence dependence = Dependence::kIndependent;
  double rho = 0.5;
  double r = 1.0;
  double sigma = 1.0;
  double sx = 1.0;
  double sy = 1.0;
};

struct TailBoundReport {
  ClaimId claim = ClaimId::kB2Spectral;
  Vector delta_grid;
  Vector empirical_freq;
  Vector theory_bound;
  Vector std_error;
  std::size_t trials = 0;
  std::size_t n = 0, p = 0, k = 0;
  bool violated = false;
  bool fitted = false;      // bound carries a fitted rate, not a stated constant
  double fitted_rate = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;   // validity window used (intersection when two are stated)
  double window_statement = 0.0;
  double window_proof = 0.0;
};

std::pair<double, double> validity_window(ClaimId claim, const TailParams& tp);
Vector default_delta_grid(ClaimId claim, const TailParams& tp);

TailBoundReport verify_tail_bound(ClaimId claim, const TailParams& tp, std::size_t trials, const Vector& delta_grid,
                                  std::uint64_t seed, int jobs = 1);

}  // namespace adlasso
