#pragma once

#include "curvlab/curv_tensor.hpp"
#include "curvlab/polynomial.hpp"
#include "curvlab/sym_form.hpp"

namespace curvlab {

/// The balanced-signature manifold family over R^{2p} with coordinates
/// (x_1..x_p, y_1..y_p), metric g(dx_i, dx_j) = f_i f_j, g(dx_i, dy_i) = 1,
/// built from a polynomial f of p >= 3 variables. Its curvature is the
/// canonical tensor of the Hessian of f, supported on the x-coordinates, and
/// the y-directions span the curvature kernel; accordingly every operation
/// except the ambient scalar curvature works on the p-dimensional x-block.
class MfManifold {
 public:
  explicit MfManifold(PolyFunction f);

  int p() const { return f_.var_count(); }
  const PolyFunction& f() const { return f_; }

 private:
  PolyFunction f_;
};

/// The 2p x 2p metric at a point (only the x-coordinates of the point enter).
/// Symmetric, invertible, of balanced signature (p, p).
Matrix mf_metric(const MfManifold& m, const Vector& point);

/// Curvature on the x-block: the canonical tensor of the Hessian at the point.
CurvTensor mf_curvature(const MfManifold& m, const Vector& point);

/// Covariant derivative of the curvature on the x-block,
///   (i, j, k, l; n) -> d_n [H_il H_jk - H_ik H_jl]
/// with all partial derivatives exact polynomials evaluated at the point.
Tensor5 mf_nabla_r(const MfManifold& m, const Vector& point);

/// The non-Weyl invariant: the covariant norm of the curvature derivative
/// measured against the Hessian form. Throws DegenerateHessian when the
/// Hessian rank drops below p at the point (tolerance 1e-10 relative).
double mf_alpha(const MfManifold& m, const Vector& point);

/// Scalar curvature of the full 2p-dimensional space: the x-block curvature
/// embedded in 2p dimensions, contracted twice with the inverse metric.
/// Vanishes identically on this family.
double mf_scalar_curvature(const MfManifold& m, const Vector& point);

}  // namespace curvlab
