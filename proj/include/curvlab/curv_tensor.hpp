#pragma once

#include <vector>

#include "curvlab/sym_form.hpp"
#include "curvlab/types.hpp"

namespace curvlab {

struct ValidationReport {
  double antisymmetry_residual = 0.0;
  double pair_symmetry_residual = 0.0;
  double bianchi_residual = 0.0;
  double scale = 0.0;  // max |component|
  double tolerance = 0.0;
  bool pass = false;

  double max_residual() const;
};

/// Residuals of the three curvature identities (antisymmetry in the first
/// pair, pair interchange, first Bianchi identity) for a dense rank-4 array.
/// Pass means every residual is at most tol * max|component|.
ValidationReport validate_components(int dim, const std::vector<double>& components,
                                     double tol = kConstructionTol);

/// A degree-4 covariant tensor with the algebraic curvature symmetries, dense
/// row-major N^4 storage. Construction validates the identities and rejects
/// input that fails them beyond tolerance; nothing is symmetrized.
class CurvTensor {
 public:
  CurvTensor(int dim, std::vector<double> components, double tol = kConstructionTol);

  static CurvTensor zero(int dim);

  int dim() const { return dim_; }
  const std::vector<double>& components() const { return components_; }

  double operator()(int i, int j, int k, int l) const {
    return components_[static_cast<std::size_t>(((i * dim_ + j) * dim_ + k) * dim_ + l)];
  }

  /// Multilinear evaluation on arbitrary vectors.
  double evaluate(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const;

  double max_abs() const;

  /// Internal constructor for components that carry the identities by
  /// construction (canonical builds, direct sums, pullbacks of valid input).
  struct Trusted {};
  CurvTensor(int dim, std::vector<double> components, Trusted);

 private:
  int dim_;
  std::vector<double> components_;
};

ValidationReport validate_curvature(const CurvTensor& t, double tol = kConstructionTol);

/// R_phi(x, y, z, w) = phi(x, w) phi(y, z) - phi(x, z) phi(y, w).
CurvTensor build_canonical(const SymForm& phi);

/// Block-diagonal embedding; every component with indices from two different
/// blocks is zero.
CurvTensor direct_sum(const std::vector<CurvTensor>& parts);

/// (A*T)(x1, .., x4) = T(A x1, .., A x4), i.e. contraction of every slot
/// with A. pullback(I, T) returns T bitwise.
CurvTensor pullback(const LinearMap& a, const CurvTensor& t);

/// Raw pullback without re-validating the result; used on hot paths.
std::vector<double> pullback_components(const LinearMap& a, const CurvTensor& t);

/// Euclidean-orthonormal basis (columns) of {v : T(v, ., ., .) = 0}, computed
/// from the SVD of the N x N^3 first-slot flattening. Singular values below
/// tol times the largest are treated as zero.
Matrix kernel(const CurvTensor& t, double tol = kRankTol);

/// True iff every component mixing the two subspaces vanishes within
/// tol * max|component|, in every slot position. The two bases together must
/// form a direct-sum decomposition of the whole space (else InvalidSplit).
bool is_decomposable_wrt(const CurvTensor& t, const Matrix& basis1, const Matrix& basis2,
                         double tol = kRankTol);

/// Dense rank-5 tensor, row-major p^5 storage. Used for covariant derivatives
/// of curvature.
class Tensor5 {
 public:
  Tensor5(int dim, std::vector<double> components);
  static Tensor5 zero(int dim);

  int dim() const { return dim_; }
  const std::vector<double>& components() const { return components_; }

  double operator()(int i, int j, int k, int l, int n) const {
    return components_[static_cast<std::size_t>(
        (((i * dim_ + j) * dim_ + k) * dim_ + l) * dim_ + n)];
  }

  double& at(int i, int j, int k, int l, int n) {
    return components_[static_cast<std::size_t>(
        (((i * dim_ + j) * dim_ + k) * dim_ + l) * dim_ + n)];
  }

  double max_abs() const;

 private:
  int dim_;
  std::vector<double> components_;
};

}  // namespace curvlab
