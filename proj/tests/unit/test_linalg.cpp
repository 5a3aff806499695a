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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "adlasso/error.hpp"
#include "adlasso/linalg.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace adlasso;

using testutil::code_of;

TEST(Linalg, MatmulAgreesWithNaiveProduct) {
  std::mt19937_64 g(1);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = oracle::random_matrix(7, 5, g), b = oracle::random_matrix(5, 4, g);
    EXPECT_LT(oracle::max_abs_diff(matmul(a, b), oracle::naive_matmul(a, b)), 1e-12);
    const Matrix c = oracle::random_matrix(7, 3, g);
    EXPECT_LT(oracle::max_abs_diff(matmul_tn(a, c), oracle::naive_matmul(a.transpose(), c)), 1e-12);
  }
}

TEST(Linalg, MatvecAndTransposedMatvec) {
  const Matrix a = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(matvec(a, {1, 0, -1}), (Vector{-2, -2}));
  EXPECT_EQ(matvec_t(a, {1, 1}), (Vector{5, 7, 9}));
}

TEST(Linalg, SelectionHelpers) {
  const Matrix a = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  EXPECT_EQ(submatrix(a, {0, 2}, {1}), Matrix::from_rows({{2}, {8}}));
  EXPECT_EQ(select_columns(a, {2, 0}), Matrix::from_rows({{3, 1}, {6, 4}, {9, 7}}));
  EXPECT_EQ(select(Vector{5, 6, 7}, {2}), (Vector{7}));
  EXPECT_EQ(complement({1, 3}, 5), (Index{0, 2, 4}));
  EXPECT_EQ(complement({}, 2), (Index{0, 1}));
}

TEST(Linalg, InducedInfNorm) {
  // row sums are 3 and 3
  EXPECT_DOUBLE_EQ(induced_inf_norm(Matrix::from_rows({{1, -2}, {3, 0}})), 3.0);
  EXPECT_DOUBLE_EQ(induced_inf_norm(Matrix::identity(4)), 1.0);
  EXPECT_DOUBLE_EQ(induced_inf_norm(Matrix(3, 2)), 0.0);
}

TEST(Linalg, InducedInfNormBoundsImageOfUnitVectors) {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Matrix a = oracle::random_matrix(4, 6, g);
    Vector x(6);
    for (auto& v : x) v = u(g);
    EXPECT_LE(norm_inf(matvec(a, x)), induced_inf_norm(a) + 1e-12);
  }
}

TEST(Linalg, CholeskyExamples) {
  EXPECT_EQ(cholesky_sqrt(Matrix::identity(3)), Matrix::identity(3));
  const Matrix l = cholesky_sqrt(Matrix::from_rows({{4, 2}, {2, 5}}));
  EXPECT_LT(oracle::max_abs_diff(l, Matrix::from_rows({{2, 0}, {1, 2}})), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(oracle::naive_matmul(l, l.transpose()), Matrix::from_rows({{4, 2}, {2, 5}})), 1e-12);
  EXPECT_EQ(cholesky_sqrt(Matrix(3, 3)), Matrix(3, 3));
}

TEST(Linalg, CholeskyRankDeficientReconstructs) {
  std::mt19937_64 g(2);
  for (int t = 0; t < 20; ++t) {
    const Matrix b = oracle::random_matrix(6, 3, g);
    const Matrix m = oracle::naive_matmul(b, b.transpose());  // rank 3
    const Matrix l = cholesky_sqrt(m);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j) EXPECT_EQ(l(i, j), 0.0);
    EXPECT_LE(oracle::max_abs_diff(oracle::naive_matmul(l, l.transpose()), m), 1e-9 * std::max(1.0, max_abs(m)));
  }
}

TEST(Linalg, CholeskyErrors) {
  EXPECT_EQ(code_of([] { cholesky_sqrt(Matrix::from_rows({{1, 0.5}, {0.4, 1}})); }), ErrorCode::kNotSymmetric);
  EXPECT_EQ(code_of([] { cholesky_sqrt(Matrix::from_rows({{1, 2}, {2, 1}})); }), ErrorCode::kIndefiniteMatrix);
  EXPECT_EQ(code_of([] { cholesky_sqrt(Matrix(2, 3)); }), ErrorCode::kInvalidDims);
}

TEST(Linalg, SpdSolveMatchesElimination) {
  std::mt19937_64 g(3);
  for (int t = 0; t < 20; ++t) {
    const Matrix b = oracle::random_matrix(8, 5, g);
    const Matrix m = matmul_tn(b, b);
    const Vector rhs = oracle::random_vector(5, g);
    EXPECT_LT(oracle::max_abs_diff(spd_solve(m, rhs), oracle::gauss_solve(m, rhs)), 1e-9);
  }
  EXPECT_EQ(code_of([] { spd_solve(Matrix::from_rows({{1, 1}, {1, 1}}), {1, 2}); }), ErrorCode::kSingularGram);
}

TEST(Linalg, SymmetricEigenMatchesReferenceAndReconstructs) {
  std::mt19937_64 g(4);
  for (int t = 0; t < 20; ++t) {
    const Matrix b = oracle::random_matrix(6, 6, g);
    const Matrix m = add(b, b.transpose());
    const EigenResult er = symmetric_eigen(m);
    const auto ref = oracle::sym_eigenvalues(m);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(er.values[i], ref[i], 1e-9);
    for (std::size_t i = 1; i < 6; ++i) EXPECT_LE(er.values[i - 1], er.values[i]);
    // V diag(λ) Vᵀ = M and VᵀV = I
    const Matrix v = er.vectors;
    const Matrix rec = matmul(matmul(v, Matrix::diagonal(er.values)), v.transpose());
    EXPECT_LT(oracle::max_abs_diff(rec, m), 1e-9);
    EXPECT_LT(oracle::max_abs_diff(matmul_tn(v, v), Matrix::identity(6)), 1e-10);
  }
}

TEST(Linalg, SpectralNormExamples) {
  EXPECT_NEAR(spectral_norm(Matrix::diagonal({1, 2, 3})), 3.0, 1e-12);
  EXPECT_NEAR(spectral_norm(Matrix::from_rows({{0, 1}, {0, 0}})), 1.0, 1e-12);
  EXPECT_EQ(spectral_norm(Matrix(3, 2)), 0.0);
}

TEST(Linalg, SpectralNormMatchesJacobiAndSvd) {
  std::mt19937_64 g(5);
  for (int t = 0; t < 50; ++t) {
    const Matrix b = oracle::random_matrix(5, 3, g);
    const double s = spectral_norm(b);
    const EigenResult er = symmetric_eigen(matmul_tn(b, b));
    EXPECT_NEAR(s, std::sqrt(er.values.back()), 1e-8 * std::max(1.0, s));
    EXPECT_NEAR(s, oracle::largest_singular_value(b), 1e-8 * std::max(1.0, s));
  }
}

TEST(Linalg, SpectralNormTransposeInvariant) {
  std::mt19937_64 g(6);
  for (int t = 0; t < 50; ++t) {
    const Matrix b = oracle::random_matrix(4 + t % 5, 2 + t % 7, g);
    EXPECT_NEAR(spectral_norm(b), spectral_norm(b.transpose()), 1e-9 * std::max(1.0, spectral_norm(b)));
  }
}

TEST(Linalg, SpectralNormOfPsdIsTopEigenvalue) {
  std::mt19937_64 g(7);
  for (int t = 0; t < 30; ++t) {
    const Matrix b = oracle::random_matrix(9, 6, g);
    const Matrix m = matmul_tn(b, b);
    EXPECT_NEAR(spectral_norm(m), symmetric_eigen(m).values.back(), 1e-8 * std::max(1.0, spectral_norm(m)));
  }
}

TEST(Linalg, SpectralNormNoConvergenceWithTinyBudget) {
  std::mt19937_64 g(8);
  const Matrix b = oracle::random_matrix(30, 30, g);
  EXPECT_EQ(code_of([&] { spectral_norm(b, 1e-15, 2); }), ErrorCode::kNoConvergence);
}
