#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "curvlab/curv_tensor.hpp"
#include "curvlab/sym_form.hpp"
#include "curvlab/types.hpp"

namespace testutil {

using curvlab::Matrix;
using curvlab::Rng;
using curvlab::Vector;

inline Matrix random_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
  }
  const Eigen::HouseholderQR<Matrix> qr(m);
  return Matrix(qr.householderQ());
}

inline curvlab::SymForm random_form(int n_plus, int n_minus, int n_zero, Rng& rng) {
  const int n = n_plus + n_minus + n_zero;
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    if (i < n_plus) {
      d[i] = mag(rng);
    } else if (i < n_plus + n_minus) {
      d[i] = -mag(rng);
    } else {
      d[i] = 0.0;
    }
  }
  const Matrix q = random_orthogonal(n, rng);
  return curvlab::SymForm(curvlab::symmetric_part(q * d.asDiagonal() * q.transpose()));
}

inline Matrix random_invertible(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    }
    if (std::abs(m.determinant()) > 1e-3) return m;
  }
}

// Independent pullback oracle: the plain eight-fold loop.
inline curvlab::CurvTensor naive_pullback(const Matrix& a, const curvlab::CurvTensor& t) {
  const int n = t.dim();
  std::vector<double> out(t.components().size(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
              for (int r = 0; r < n; ++r) {
                for (int s = 0; s < n; ++s) {
                  acc += t(p, q, r, s) * a(p, i) * a(q, j) * a(r, k) * a(s, l);
                }
              }
            }
          }
          out[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = acc;
        }
      }
    }
  }
  return curvlab::CurvTensor(n, std::move(out), curvlab::CurvTensor::Trusted{});
}

// Largest principal angle between orthonormal column spans, via the sine.
inline double max_principal_angle(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.cols() == 0) return 0.0;
  const Matrix residual = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Matrix> svd(residual);
  const double s = std::min(1.0, svd.singularValues()[0]);
  return std::asin(s);
}

inline double max_abs_diff(const curvlab::CurvTensor& a, const curvlab::CurvTensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    m = std::max(m, std::abs(a.components()[i] - b.components()[i]));
  }
  return m;
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Weighted squared length of a rank-5 tensor on an explicitly supplied basis;
// the test-side counterpart of the library's covariant norm.
inline double covariant_norm_in_basis(const curvlab::Tensor5& a5, const Matrix& vectors,
                                      const std::vector<int>& signs) {
  const int n = a5.dim();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          for (int m = 0; m < n; ++m) {
            double value = 0.0;
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                  for (int d = 0; d < n; ++d)
                    for (int e = 0; e < n; ++e)
                      value += a5(a, b, c, d, e) * vectors(a, i) * vectors(b, j) * vectors(c, k) *
                               vectors(d, l) * vectors(e, m);
            acc += signs[static_cast<std::size_t>(i)] * signs[static_cast<std::size_t>(j)] *
                   signs[static_cast<std::size_t>(k)] * signs[static_cast<std::size_t>(l)] *
                   signs[static_cast<std::size_t>(m)] * value * value;
          }
        }
      }
    }
  }
  return std::abs(acc);
}

}  // namespace testutil
