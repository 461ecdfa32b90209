#pragma once

#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/types.hpp"

namespace curvlab {

/// A symmetric bilinear form on an N-dimensional real space. The entry matrix
/// must be exactly symmetric; asymmetric input is rejected rather than
/// repaired (use symmetric_part() first if the asymmetry is known round-off).
class SymForm {
 public:
  explicit SymForm(Matrix entries);

  static SymForm identity(int dim);
  static SymForm diagonal(const Vector& diag);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  /// phi(x, y) = x^T M y.
  double apply(const Vector& x, const Vector& y) const;

  SymForm negated() const { return SymForm(Matrix(-entries_)); }
  SymForm scaled(double c) const { return SymForm(Matrix(c * entries_)); }

 private:
  Matrix entries_;
};

struct Signature {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  int rank() const { return n_plus + n_minus; }
  bool nondegenerate() const { return n_zero == 0; }
  bool balanced() const { return n_plus == n_minus && n_zero == 0; }
  bool operator==(const Signature&) const = default;
};

/// Returns true when the two signatures agree as unordered {plus, minus}
/// pairs. The library never relies on which count comes first.
bool same_unordered_signature(const Signature& a, const Signature& b);

/// Eigenvalue inertia counts with threshold tol * max|eigenvalue|.
Signature signature(const SymForm& phi, double tol = kRankTol);

/// Eigenvalues of the entry matrix in ascending order.
Vector form_eigenvalues(const SymForm& phi);

/// An ordered basis {e_i} with phi(e_i, e_j) = sign_i * delta_ij. Vectors are
/// the columns of `vectors`; signs are +1 entries first, then -1.
struct PseudoONBasis {
  Matrix vectors;
  std::vector<int> signs;

  int dim() const { return static_cast<int>(vectors.cols()); }
};

/// Builds a pseudo-orthonormal basis from the symmetric eigendecomposition
/// (eigenvectors rescaled by 1/sqrt|lambda|). Throws DegenerateForm when any
/// eigenvalue is within tol * max|eigenvalue| of zero.
PseudoONBasis pseudo_orthonormalize(const SymForm& phi, double tol = kRankTol);

/// Gram matrix of phi on the columns of `vectors`.
Matrix gram_matrix(const SymForm& phi, const Matrix& vectors);

}  // namespace curvlab
