#pragma once

#include <functional>
#include <vector>

#include "curvlab/block_model.hpp"
#include "curvlab/curv_tensor.hpp"
#include "curvlab/structure_group.hpp"

namespace curvlab {

/// Ricci contraction rho(x, y) = sum_i sign_i T(x, e_i, e_i, y) over a
/// pseudo-orthonormal basis of phi. Basis-independent; output symmetrized to
/// the exact symmetric part before construction.
SymForm ricci(const CurvTensor& t, const SymForm& phi);

/// tau = sum_j sign_j rho(e_j, e_j) over a pseudo-orthonormal basis.
double scalar_curvature(const CurvTensor& t, const SymForm& phi);

/// kappa = T(x, y, y, x) / (phi(x,x) phi(y,y) - phi(x,y)^2). Throws
/// DegeneratePlane when the denominator magnitude is at most 1e-12.
double sectional_curvature(const CurvTensor& t, const SymForm& phi, const Vector& x,
                           const Vector& y);

/// Symmetric functions of a list of per-block invariants. Inputs are sorted
/// before combination, so permuting the list leaves every output bitwise
/// unchanged.
struct InvariantProfile {
  std::vector<double> per_block;    // input values as given
  std::vector<double> sorted_tuple; // ascending
  std::vector<double> elementary;   // e_1 .. e_s
  std::vector<double> power_sums;   // p_1 .. p_s
};

InvariantProfile symmetric_combine(const std::vector<double>& values);

/// A value computed from a basis (columns) and whatever fixed tensors the
/// callable closes over. Scalar values are returned as a single entry.
using BasisValueFn = std::function<std::vector<double>(const Matrix& basis)>;

struct InvarianceReport {
  int samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<double> base_value;
};

/// Draws structure-group elements of the model, applies them to the standard
/// basis, recomputes value_fn on the transformed basis, and reports the
/// maximum deviation from the untransformed value. Supports negative controls
/// (functions expected to deviate).
InvarianceReport check_invariance(const BasisValueFn& value_fn, const BlockModelSpace& model,
                                  int n_samples, double tol, Rng& rng);

/// Absolute value of the squared length of a rank-5 tensor measured against a
/// nondegenerate form: |sum over all five indices of the sign-product times
/// the squared pseudo-orthonormal components|. Unchanged under phi -> -phi.
double covariant_norm(const SymForm& phi, const Tensor5& a5);

/// Per-block sectional curvature of a two-dimensional block against the
/// Euclidean reference metric; equals det(phi_block) for the canonical block
/// tensor and is permuted, not altered, by structure-group members.
std::vector<double> block_sectional_curvatures(const BlockModelSpace& model);

}  // namespace curvlab
