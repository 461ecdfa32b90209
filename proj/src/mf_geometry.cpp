#include "curvlab/mf_geometry.hpp"

#include <cmath>

#include "curvlab/errors.hpp"
#include "curvlab/invariants.hpp"

namespace curvlab {

MfManifold::MfManifold(PolyFunction f) : f_(std::move(f)) {
  if (f_.var_count() < 3) {
    raise(ErrorCode::InvalidArgument, "the manifold family requires p >= 3 variables");
  }
}

Matrix mf_metric(const MfManifold& m, const Vector& point) {
  const int p = m.p();
  if (point.size() != p) raise(ErrorCode::InvalidArgument, "point has the wrong dimension");
  const Vector grad = poly_gradient(m.f(), point);
  Matrix g = Matrix::Zero(2 * p, 2 * p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) g(i, j) = grad[i] * grad[j];
    g(i, p + i) = 1.0;
    g(p + i, i) = 1.0;
  }
  return g;
}

CurvTensor mf_curvature(const MfManifold& m, const Vector& point) {
  if (point.size() != m.p()) raise(ErrorCode::InvalidArgument, "point has the wrong dimension");
  return build_canonical(hessian(m.f(), point));
}

Tensor5 mf_nabla_r(const MfManifold& m, const Vector& point) {
  const int p = m.p();
  if (point.size() != p) raise(ErrorCode::InvalidArgument, "point has the wrong dimension");

  // Exact second and third partials at the point.
  Matrix h(p, p);
  std::vector<double> third(static_cast<std::size_t>(p * p * p));
  {
    std::vector<PolyFunction> first;
    first.reserve(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) first.push_back(m.f().partial(i));
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        const PolyFunction fij = first[static_cast<std::size_t>(i)].partial(j);
        h(i, j) = fij.eval(point);
        for (int k = 0; k < p; ++k) {
          third[static_cast<std::size_t>((i * p + j) * p + k)] = fij.partial(k).eval(point);
        }
      }
    }
  }
  auto f3 = [&](int i, int j, int k) {
    return third[static_cast<std::size_t>((i * p + j) * p + k)];
  };

  // d_n [H_il H_jk - H_ik H_jl], the coordinate derivative of the canonical
  // tensor of the Hessian.
  Tensor5 out = Tensor5::zero(p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) {
        for (int l = 0; l < p; ++l) {
          for (int n = 0; n < p; ++n) {
            out.at(i, j, k, l, n) = f3(i, l, n) * h(j, k) + h(i, l) * f3(j, k, n) -
                                    f3(i, k, n) * h(j, l) - h(i, k) * f3(j, l, n);
          }
        }
      }
    }
  }
  return out;
}

double mf_alpha(const MfManifold& m, const Vector& point) {
  const SymForm h = hessian(m.f(), point);
  if (signature(h, 1e-10).n_zero > 0) {
    raise(ErrorCode::DegenerateHessian, "Hessian rank drops below p at the point");
  }
  return covariant_norm(h, mf_nabla_r(m, point));
}

double mf_scalar_curvature(const MfManifold& m, const Vector& point) {
  const int p = m.p();
  const CurvTensor block = mf_curvature(m, point);
  const int n = 2 * p;

  // Embed the x-block curvature into the full 2p dimensions.
  std::vector<double> full(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) {
        for (int l = 0; l < p; ++l) {
          full[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = block(i, j, k, l);
        }
      }
    }
  }

  const Matrix g_inv = mf_metric(m, point).inverse();
  auto at = [&](int i, int j, int k, int l) {
    return full[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  };
  double tau = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          tau += g_inv(i, k) * g_inv(j, l) * at(i, j, l, k);
        }
      }
    }
  }
  return tau;
}

}  // namespace curvlab
