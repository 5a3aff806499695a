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

#include "adlasso/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "adlasso/error.hpp"
#include "adlasso/parallel.hpp"
#include "adlasso/rng.hpp"

namespace adlasso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ClaimName {
  ClaimId id;
  const char* full;
  const char* alias;
};

constexpr ClaimName kClaims[] = {
    {ClaimId::kB2Spectral, "B2_spectral", "b2"},   {ClaimId::kM1Indinf, "m1_indinf", "m1"},
    {ClaimId::kM2Inverse, "m2_inverse", "m2"},     {ClaimId::kMinEigHessian, "min_eig_hessian", "hess"},
    {ClaimId::kMinEigXstar, "min_eig_xstar", "xstar"}, {ClaimId::kMinEigEx, "min_eig_ex", "ex"},
    {ClaimId::kProdSubgauss, "prod_subgauss", "prod"}, {ClaimId::kSumSubgauss, "sum_subgauss", "sum"},
};

bool is_fitted(ClaimId c) {
  return c == ClaimId::kM2Inverse || c == ClaimId::kMinEigHessian || c == ClaimId::kMinEigXstar ||
         c == ClaimId::kMinEigEx;
}

bool is_min_eig(ClaimId c) {
  return c == ClaimId::kMinEigHessian || c == ClaimId::kMinEigXstar || c == ClaimId::kMinEigEx;
}

// Population quantities of the diagonal model.
double cross_scale(const TailParams& tp) {
  return tp.dependence == Dependence::kCorrelated ? tp.rho * std::sqrt(tp.sigma_e * tp.sigma_x) : 0.0;
}

// Diagonal entry of Cov(x* + e).
double corrupted_var(const TailParams& tp) { return tp.sigma_x + 2.0 * cross_scale(tp) + tp.sigma_e; }

double xi_of(const TailParams& tp) {
  const double c = tp.sigma * std::sqrt(tp.sigma_x) + tp.r * std::sqrt(tp.sigma_e);
  return c * c;
}

// Fills an n×cols block of x* and e draws.
void draw_pair(const TailParams& tp, std::size_t cols, RngStream& rng, Matrix& xs, Matrix& ex) {
  const std::size_t n = tp.n;
  xs = Matrix(n, cols);
  ex = Matrix(n, cols);
  const double sx = std::sqrt(tp.sigma_x), se = std::sqrt(tp.sigma_e);
  const bool corr = tp.dependence == Dependence::kCorrelated;
  const double a = corr ? tp.rho * se / sx : 0.0;
  const double b = corr ? std::sqrt(std::max(0.0, 1.0 - tp.rho * tp.rho)) * se : se;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = sx * rng.gaussian();
      xs(i, j) = x;
      ex(i, j) = a * x + b * rng.gaussian();
    }
}

Matrix gram_over_n(const Matrix& a, const Matrix& b) {
  return scale(matmul_tn(a, b), 1.0 / static_cast<double>(a.rows()));
}

double min_eig(const Matrix& m) { return symmetric_eigen(m).values.front(); }

// Reference level the min-eigenvalue claims compare against.
double min_eig_level(ClaimId c, const TailParams& tp) {
  switch (c) {
    case ClaimId::kMinEigHessian: return corrupted_var(tp);
    case ClaimId::kMinEigXstar: return tp.sigma_x;
    default: return tp.sigma_e;
  }
}

double statistic(ClaimId claim, const TailParams& tp, RngStream& rng) {
  const std::size_t k = tp.k, p = tp.p;
  Matrix xs, ex;
  switch (claim) {
    case ClaimId::kB2Spectral: {
      draw_pair(tp, k, rng, xs, ex);
      Matrix dev = gram_over_n(ex, xs);
      const double c = cross_scale(tp);
      for (std::size_t i = 0; i < k; ++i) dev(i, i) -= c;
      return spectral_norm(dev);
    }
    case ClaimId::kM1Indinf: {
      draw_pair(tp, p, rng, xs, ex);
      const Matrix x = add(xs, ex);
      Index s(k), sc(p - k);
      for (std::size_t i = 0; i < k; ++i) s[i] = i;
      for (std::size_t i = k; i < p; ++i) sc[i - k] = i;
      // population cross block is zero in the diagonal model
      return induced_inf_norm(gram_over_n(select_columns(x, sc), select_columns(x, s)));
    }
    case ClaimId::kM2Inverse: {
      draw_pair(tp, k, rng, xs, ex);
      const Matrix x = add(xs, ex);
      Matrix inv = spd_inverse(gram_over_n(x, x));
      const double pop = 1.0 / corrupted_var(tp);
      for (std::size_t i = 0; i < k; ++i) inv(i, i) -= pop;
      // relative to G_max = ‖|Σ_x,SS⁻¹|‖∞
      return induced_inf_norm(inv) / pop;
    }
    case ClaimId::kMinEigHessian:
    case ClaimId::kMinEigXstar:
    case ClaimId::kMinEigEx: {
      draw_pair(tp, k, rng, xs, ex);
      const Matrix m = claim == ClaimId::kMinEigHessian ? [&] {
        const Matrix x = add(xs, ex);
        return gram_over_n(x, x);
      }()
                       : claim == ClaimId::kMinEigXstar ? gram_over_n(xs, xs)
                                                        : gram_over_n(ex, ex);
      // relative shortfall below the population level
      return 1.0 - min_eig(m) / min_eig_level(claim, tp);
    }
    case ClaimId::kProdSubgauss: {
      const double x = tp.sx * rng.gaussian();
      if (tp.dependence == Dependence::kCorrelated) {
        const double y = tp.sy / tp.sx * x;
        return std::abs(x * y - tp.sx * tp.sy);
      }
      return std::abs(x * tp.sy * rng.gaussian());
    }
    case ClaimId::kSumSubgauss: {
      const double x = tp.sx * rng.gaussian();
      const double y = tp.dependence == Dependence::kCorrelated ? tp.sy / tp.sx * x : tp.sy * rng.gaussian();
      return std::abs(x + y);
    }
  }
  fail(ErrorCode::kUnknownClaim, "unhandled claim");
}

// Stated bounds; fitted claims are handled separately.
double stated_bound(ClaimId claim, const TailParams& tp, double d) {
  const double n = static_cast<double>(tp.n), k = static_cast<double>(tp.k);
  switch (claim) {
    case ClaimId::kB2Spectral: {
      const double a = std::sqrt(tp.sigma_x);
      const double bk = std::sqrt(k * k * tp.sigma_e * tp.sigma_e);
      return 4.0 * std::exp(-n * d * d / (256.0 * tp.r * tp.r * tp.sigma * tp.sigma * a * bk));
    }
    case ClaimId::kM1Indinf: {
      // entries are means of n products with SE(8√2 ξ, 4ξ) tails
      const double xi = xi_of(tp);
      const double nu2 = 128.0 * xi * xi / n;
      return 2.0 * static_cast<double>(tp.p - tp.k) * k * std::exp(-d * d / (2.0 * k * k * nu2));
    }
    case ClaimId::kProdSubgauss: {
      const bool dep = tp.dependence == Dependence::kCorrelated;
      const double s = tp.sx * tp.sy;
      const double nu = (dep ? 8.0 * std::sqrt(2.0) : 4.0 * std::sqrt(2.0)) * s;
      const double alpha = (dep ? 4.0 : 2.0) * s;
      if (d <= nu * nu / alpha) return 2.0 * std::exp(-d * d / (2.0 * nu * nu));
      return 2.0 * std::exp(-d / (2.0 * alpha));
    }
    case ClaimId::kSumSubgauss: {
      const double v = tp.dependence == Dependence::kCorrelated ? (tp.sx + tp.sy) * (tp.sx + tp.sy)
                                                                : tp.sx * tp.sx + tp.sy * tp.sy;
      return 2.0 * std::exp(-d * d / (2.0 * v));
    }
    default:
      fail(ErrorCode::kInternal, "claim has no stated bound");
  }
}

// Prefactor and exponent scale of the fitted forms A·exp(−c·x(δ)).
std::pair<double, double> fitted_form(ClaimId claim, const TailParams& tp, double d) {
  const double n = static_cast<double>(tp.n), k = static_cast<double>(tp.k);
  if (claim == ClaimId::kM2Inverse) return {2.0 * k * k, n * d * d / (k * k)};
  return {2.0 * std::exp(k), n * d * d};
}

}  // namespace

const char* claim_name(ClaimId c) {
  for (const auto& e : kClaims)
    if (e.id == c) return e.full;
  return "unknown";
}

ClaimId parse_claim(const std::string& s) {
  for (const auto& e : kClaims)
    if (s == e.full || s == e.alias) return e.id;
  fail(ErrorCode::kUnknownClaim, "unknown claim '" + s + "'");
}

Matrix symmetrize_embed(const Matrix& b) {
  if (b.rows() != b.cols()) fail(ErrorCode::kInvalidDims, "symmetrize_embed needs a square matrix");
  const std::size_t k = b.rows();
  Matrix m(2 * k, 2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      m(i, k + j) = b(i, j);
      m(k + j, i) = b(i, j);
    }
  return m;
}

VEigenSummary v_matrix_eigenvalues(const Vector& sigma_e_diag, double r, double sigma, double max_sigma_jj,
                                   std::size_t n) {
  if (r < 0 || sigma < 0 || max_sigma_jj < 0 || n == 0)
    fail(ErrorCode::kInvalidArgument, "v_matrix_eigenvalues needs nonnegative inputs and n >= 1");
  const std::size_t k = sigma_e_diag.size();
  double sq = 0.0;
  for (double a : sigma_e_diag) {
    if (a < 0) fail(ErrorCode::kInvalidArgument, "Sigma_e diagonal must be >= 0");
    sq += a * a;
  }
  const double c = 128.0 * r * r * sigma * sigma * max_sigma_jj / static_cast<double>(n);
  // V1 has constant rows: row i is c·Σe_ii
  Matrix v1(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) v1(i, j) = c * sigma_e_diag[i];
  const Matrix v = symmetrize_embed(v1);

  VEigenSummary out;
  out.eigenvalues = symmetric_eigen(v).values;
  out.predicted = c * std::sqrt(static_cast<double>(k) * sq);
  double top = 0.0;
  for (double e : out.eigenvalues) top = std::max(top, std::abs(e));
  out.threshold = 1e-9 * top;
  double err = 0.0;
  for (double e : out.eigenvalues) {
    if (std::abs(e) > out.threshold && top > 0) {
      ++out.nonzero_count;
      err = std::max(err, std::abs(std::abs(e) - out.predicted) / out.predicted);
    }
  }
  out.max_rel_error = err;
  const bool zero_input = sq == 0.0 || c == 0.0;
  out.rank_ok = zero_input ? out.nonzero_count == 0 : out.nonzero_count == 2;
  return out;
}

std::pair<double, double> validity_window(ClaimId claim, const TailParams& tp) {
  const double n = static_cast<double>(tp.n), k = static_cast<double>(tp.k);
  switch (claim) {
    case ClaimId::kB2Spectral: {
      const double a = std::sqrt(tp.sigma_x);
      const double bk = k * tp.sigma_e;
      const double statement = 32.0 * tp.r * tp.sigma * a * bk / n;
      const double proof = 32.0 * std::sqrt(k) * tp.r * tp.sigma * tp.sigma_x * std::sqrt(k * tp.sigma_e * tp.sigma_e);
      return {0.0, std::min(statement, proof)};
    }
    case ClaimId::kM1Indinf:
      return {0.0, 32.0 * xi_of(tp) * k};
    case ClaimId::kMinEigHessian:
    case ClaimId::kMinEigXstar:
    case ClaimId::kMinEigEx:
      return {0.0, 1.0};
    default:
      return {0.0, kInf};
  }
}

Vector default_delta_grid(ClaimId claim, const TailParams& tp) {
  switch (claim) {
    case ClaimId::kProdSubgauss:
      return {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    case ClaimId::kSumSubgauss: {
      const double s = tp.sx + tp.sy;
      return {0.5 * s, s, 1.5 * s, 2.0 * s, 3.0 * s, 4.0 * s};
    }
    case ClaimId::kM2Inverse:
      return {0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    default: {
      const double hi = validity_window(claim, tp).second;
      Vector g(6);
      for (int i = 0; i < 6; ++i) g[i] = hi * (i + 1) / 7.0;
      return g;
    }
  }
}

TailBoundReport verify_tail_bound(ClaimId claim, const TailParams& tp, std::size_t trials, const Vector& delta_grid,
                                  std::uint64_t seed, int jobs) {
  const bool scalar_claim = claim == ClaimId::kProdSubgauss || claim == ClaimId::kSumSubgauss;
  if (trials < 100) fail(ErrorCode::kInvalidArgument, "trials must be >= 100");
  if (!scalar_claim) {
    if (tp.n == 0 || tp.k == 0 || tp.k > tp.p) fail(ErrorCode::kInvalidDims, "need n >= 1 and 1 <= k <= p");
    if (claim == ClaimId::kM1Indinf && tp.k == tp.p) fail(ErrorCode::kInvalidDims, "m1_indinf needs k < p");
  }
  if (tp.sigma_x <= 0 || tp.sigma_e < 0 || tp.sx <= 0 || tp.sy <= 0 || tp.rho < -1 || tp.rho > 1)
    fail(ErrorCode::kInvalidArgument, "invalid population parameters");
  if (claim == ClaimId::kMinEigEx && tp.sigma_e == 0)
    fail(ErrorCode::kInvalidArgument, "min_eig_ex needs sigma_e > 0");

  TailBoundReport rep;
  rep.claim = claim;
  rep.trials = trials;
  rep.n = scalar_claim ? 1 : tp.n;
  rep.p = scalar_claim ? 1 : tp.p;
  rep.k = scalar_claim ? 1 : tp.k;
  rep.fitted = is_fitted(claim);
  rep.delta_grid = delta_grid.empty() ? default_delta_grid(claim, tp) : delta_grid;
  const auto [lo, hi] = validity_window(claim, tp);
  rep.window_lo = lo;
  rep.window_hi = hi;
  if (claim == ClaimId::kB2Spectral) {
    const double k = static_cast<double>(tp.k);
    rep.window_statement = 32.0 * tp.r * tp.sigma * std::sqrt(tp.sigma_x) * k * tp.sigma_e / static_cast<double>(tp.n);
    rep.window_proof = 32.0 * std::sqrt(k) * tp.r * tp.sigma * tp.sigma_x * std::sqrt(k) * tp.sigma_e;
  } else {
    rep.window_statement = rep.window_proof = hi;
  }
  for (double d : rep.delta_grid) {
    const bool closed_hi = claim == ClaimId::kM1Indinf;
    const bool ok = d > lo && (closed_hi ? d <= hi : d < hi);
    if (!ok)
      fail(ErrorCode::kInvalidDeltaRange, "delta " + std::to_string(d) + " outside (" + std::to_string(lo) + ", " +
                                              std::to_string(hi) + ")");
  }

  std::vector<double> stats(trials);
  const RngStream base(seed, 0x636c61696dULL + static_cast<std::uint64_t>(claim));
  parallel_for(trials, jobs, [&](std::size_t t) {
    RngStream rng = base.substream(t);
    stats[t] = statistic(claim, tp, rng);
  });

  const double tt = static_cast<double>(trials);
  for (double d : rep.delta_grid) {
    std::size_t hits = 0;
    for (double s : stats) hits += is_min_eig(claim) ? (s >= d) : (s > d);
    rep.empirical_freq.push_back(static_cast<double>(hits) / tt);
  }

  if (rep.fitted) {
    // largest rate whose bound form still covers every observed frequency
    double c = kInf;
    for (std::size_t i = 0; i < rep.delta_grid.size(); ++i) {
      const auto [a, x] = fitted_form(claim, tp, rep.delta_grid[i]);
      const double f = std::max(rep.empirical_freq[i], 0.5 / tt);
      c = std::min(c, (std::log(a) - std::log(f)) / x);
    }
    rep.fitted_rate = c;
    for (double d : rep.delta_grid) {
      const auto [a, x] = fitted_form(claim, tp, d);
      rep.theory_bound.push_back(a * std::exp(-c * x));
    }
  } else {
    for (double d : rep.delta_grid) rep.theory_bound.push_back(stated_bound(claim, tp, d));
  }

  for (std::size_t i = 0; i < rep.delta_grid.size(); ++i) {
    const double b = std::min(1.0, rep.theory_bound[i]);
    const double se = std::sqrt(b * (1.0 - b) / tt);
    rep.std_error.push_back(se);
    if (rep.empirical_freq[i] > b + 3.0 * se) rep.violated = true;
  }
  return rep;
}

}  // namespace adlasso
