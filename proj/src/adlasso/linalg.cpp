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

#include "adlasso/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "adlasso/error.hpp"

namespace adlasso {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) fail(ErrorCode::kInvalidDims, "ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i));
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

static void check_same(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::kInvalidDims, std::string(what) + ": shape mismatch");
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::kInvalidDims, "matmul: inner dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      const double* bl = b.row(l);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += ail * bl[j];
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) fail(ErrorCode::kInvalidDims, "matmul_tn: row count mismatch");
  Matrix c(a.cols(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double* ar = a.row(r);
    const double* br = b.row(r);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double ai = ar[i];
      if (ai == 0.0) continue;
      double* ci = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += ai * br[j];
    }
  }
  return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) fail(ErrorCode::kInvalidDims, "matvec: size mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector matvec_t(const Matrix& a, const Vector& x) {
  if (a.rows() != x.size()) fail(ErrorCode::kInvalidDims, "matvec_t: size mismatch");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    const double xi = x[i];
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += ai[j] * xi;
  }
  return y;
}

Matrix add(const Matrix& a, const Matrix& b) {
  check_same(a, b, "add");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  check_same(a, b, "sub");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

Matrix scale(const Matrix& a, double s) {
  Matrix c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

Matrix submatrix(const Matrix& a, const Index& rows, const Index& cols) {
  Matrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return s;
}

Matrix select_columns(const Matrix& a, const Index& cols) {
  Matrix s(a.rows(), cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(i, cols[j]);
  return s;
}

Vector select(const Vector& v, const Index& idx) {
  Vector s(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) s[i] = v[idx[i]];
  return s;
}

Index complement(const Index& idx, std::size_t p) {
  std::vector<char> in(p, 0);
  for (std::size_t i : idx) in[i] = 1;
  Index out;
  for (std::size_t i = 0; i < p; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) fail(ErrorCode::kInvalidDims, "dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const Matrix& a) { return norm_inf(a.data()); }

double max_asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::kInvalidDims, "matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

bool is_diagonal(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != 0.0) return false;
  return true;
}

double induced_inf_norm(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
    m = std::max(m, s);
  }
  return m;
}

Matrix cholesky_sqrt(const Matrix& m, double sym_tol) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorCode::kInvalidDims, "cholesky_sqrt: matrix is not square");
  const double asym = max_asymmetry(m);
  if (asym > sym_tol * std::max(1.0, max_abs(m)))
    fail(ErrorCode::kNotSymmetric, "cholesky_sqrt: asymmetry " + std::to_string(asym));
  const double tr = std::abs(m.trace());
  const double neg_tol = 1e-10 * tr;
  const double zero_tol = 1e-12 * tr;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t t = 0; t < j; ++t) d -= l(j, t) * l(j, t);
    if (d < -neg_tol)
      fail(ErrorCode::kIndefiniteMatrix,
           "cholesky_sqrt: pivot " + std::to_string(d) + " at column " + std::to_string(j));
    if (d <= zero_tol) continue;  // rank-deficient direction, column stays zero
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.5 * (m(i, j) + m(j, i));
      for (std::size_t t = 0; t < j; ++t) s -= l(i, t) * l(j, t);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

static Matrix strict_cholesky(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorCode::kInvalidDims, "matrix is not square");
  Matrix l(n, n);
  const double floor = 1e-14 * std::max(1.0, std::abs(m.trace()));
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t t = 0; t < j; ++t) d -= l(j, t) * l(j, t);
    if (!(d > floor)) fail(ErrorCode::kSingularGram, "matrix is not positive definite");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t t = 0; t < j; ++t) s -= l(i, t) * l(j, t);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

static Vector chol_solve(const Matrix& l, Vector b) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t t = 0; t < i; ++t) s -= l(i, t) * b[t];
    b[i] = s / l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t t = i + 1; t < n; ++t) s -= l(t, i) * b[t];
    b[i] = s / l(i, i);
  }
  return b;
}

Vector spd_solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) fail(ErrorCode::kInvalidDims, "spd_solve: size mismatch");
  return chol_solve(strict_cholesky(m), b);
}

Matrix spd_inverse(const Matrix& m) {
  const Matrix l = strict_cholesky(m);
  const std::size_t n = m.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    const Vector c = chol_solve(l, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = c[i];
  }
  // symmetrize away rounding
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = v;
      inv(j, i) = v;
    }
  return inv;
}

EigenResult symmetric_eigen(const Matrix& m, double tol, int max_sweeps) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorCode::kInvalidDims, "symmetric_eigen: matrix is not square");
  if (max_asymmetry(m) > 1e-10 * std::max(1.0, max_abs(m)))
    fail(ErrorCode::kNotSymmetric, "symmetric_eigen: input is not symmetric");
  Matrix a = m;
  Matrix v = Matrix::identity(n);
  double fro = 0.0;
  for (double x : a.data()) fro += x * x;
  fro = std::sqrt(fro);
  const double target = tol * fro;

  auto off = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  EigenResult res;
  int sweep = 0;
  while (off() > target) {
    if (sweep >= max_sweeps)
      fail(ErrorCode::kEigenFailure, "Jacobi iteration did not converge in " +
                                         std::to_string(max_sweeps) + " sweeps");
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  res.values.resize(n);
  res.vectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    res.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) res.vectors(r, c) = v(r, order[c]);
  }
  res.sweeps = sweep;
  return res;
}

double spectral_norm(const Matrix& b, double tol, int max_iter) {
  if (!(tol > 0)) fail(ErrorCode::kInvalidArgument, "spectral_norm: tol must be positive");
  const std::size_t k = b.cols();
  if (k == 0 || b.rows() == 0) return 0.0;
  Vector v(k, 1.0 / std::sqrt(static_cast<double>(k)));

  auto apply = [&](const Vector& x) { return matvec_t(b, matvec(b, x)); };

  Vector w = apply(v);
  double mu = dot(v, w);
  if (mu <= 0.0) {
    // start vector lies in the null space of B; restart on the heaviest column
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < b.rows(); ++i) s += b(i, j) * b(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best_norm <= 0.0) return 0.0;
    v.assign(k, 0.0);
    v[best] = 1.0;
    w = apply(v);
    mu = dot(v, w);
  }
  for (int it = 0; it < max_iter; ++it) {
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < k; ++i) v[i] = w[i] / nw;
    w = apply(v);
    const double next = dot(v, w);
    if (std::abs(next - mu) <= tol * std::abs(next)) return std::sqrt(std::max(next, 0.0));
    mu = next;
  }
  fail(ErrorCode::kNoConvergence, "spectral_norm: power iteration hit the iteration cap");
}

}  // namespace adlasso
