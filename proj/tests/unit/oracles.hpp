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

// Reference computations for tests. Deliberately independent of the library
// routines they check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "adlasso/linalg.hpp"

namespace oracle {

using adlasso::Matrix;
using adlasso::Vector;

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

inline double largest_singular_value(const Matrix& b) {
  if (b.rows() == 0 || b.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(b));
  return svd.singularValues()(0);
}

inline std::vector<double> sym_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m), Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

// Naive triple loop.
inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
      c(i, j) = s;
    }
  return c;
}

// Gaussian elimination with partial pivoting.
inline Vector gauss_solve(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) throw std::runtime_error("singular");
    for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

inline Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& g, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Matrix m(r, c);
  for (auto& v : m.data()) v = d(g);
  return m;
}

inline Vector random_vector(std::size_t n, std::mt19937_64& g, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Vector v(n);
  for (auto& x : v) x = d(g);
  return v;
}

// n×p design with XᵀX/n = I: modified Gram–Schmidt on random columns,
// then scaled by √n.
inline Matrix orthogonal_design(std::size_t n, std::size_t p, std::mt19937_64& g) {
  Matrix q = random_matrix(n, p, g);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t l = 0; l < j; ++l) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += q(i, l) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= d * q(i, l);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += q(i, j) * q(i, j);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
  }
  const double s = std::sqrt(static_cast<double>(n));
  for (auto& v : q.data()) v *= s;
  return q;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double soft(double x, double t) { return x > t ? x - t : (x < -t ? x + t : 0.0); }

}  // namespace oracle
