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

#include <cstddef>
#include <vector>

namespace adlasso {

using Vector = std::vector<double>;
using Index = std::vector<std::size_t>;

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Matrix transpose() const;
  Vector column(std::size_t j) const;
  double trace() const;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
// aᵀb without forming the transpose.
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
Vector matvec_t(const Matrix& a, const Vector& x);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);

Matrix submatrix(const Matrix& a, const Index& rows, const Index& cols);
Matrix select_columns(const Matrix& a, const Index& cols);
Vector select(const Vector& v, const Index& idx);
Index complement(const Index& idx, std::size_t p);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double norm_inf(const Vector& a);
// Max absolute entry.
double max_abs(const Matrix& a);
double max_asymmetry(const Matrix& a);
bool is_diagonal(const Matrix& a);

// max_i Σ_j |A_ij|
double induced_inf_norm(const Matrix& a);

// Lower-triangular L with LLᵀ = M. Zero pivots of a PSD matrix give zero columns.
Matrix cholesky_sqrt(const Matrix& m, double sym_tol = 1e-10);

// Solves M x = b for symmetric positive definite M.
Vector spd_solve(const Matrix& m, const Vector& b);
Matrix spd_inverse(const Matrix& m);

struct EigenResult {
  Vector values;   // ascending
  Matrix vectors;  // columns are eigenvectors
  int sweeps = 0;
};

// Cyclic Jacobi. Stops when the off-diagonal Frobenius norm falls below
// tol·‖M‖_F.
EigenResult symmetric_eigen(const Matrix& m, double tol = 1e-12, int max_sweeps = 100);

// σ_max(B) by power iteration on BᵀB.
double spectral_norm(const Matrix& b, double tol = 1e-12, int max_iter = 10000);

}  // namespace adlasso
