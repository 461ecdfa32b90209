#pragma once

#include <vector>

#include "curvlab/curv_tensor.hpp"
#include "curvlab/sym_form.hpp"
#include "curvlab/types.hpp"

namespace curvlab {

/// Skew-symmetric curvature operator on the pair of basis directions (i, j):
/// the matrix M with T(e_i, e_j, z, w) = phi(M z, w), i.e. the last index of
/// the (i, j) slice raised with phi^{-1}.
Matrix curvature_operator(const CurvTensor& t, int i, int j, const Matrix& phi_inverse);

/// True iff all pairwise commutators of the curvature operators vanish within
/// tol times the squared largest operator norm. Throws DegenerateForm.
bool skew_tsankov_check(const SymForm& phi, const CurvTensor& t, double tol = kRankTol);

struct SkewTsankovDecomposition {
  Matrix kernel;                // N x k0, orthonormal columns
  std::vector<Matrix> planes;   // N x 2 each, spanning invariant 2-planes
  std::vector<double> kappas;   // sectional curvature per plane, same order
};

/// Splits a commuting-operator model over a positive definite form into
/// invariant 2-planes plus the curvature kernel. A random combination of the
/// curvature operators is block-diagonalized by its real Schur form; spectral
/// collisions trigger up to five re-randomizations of the combination before
/// DegenerateSpectrum is raised. Any split passing the reconstruction check
/// (the pulled-back tensor is block-diagonal over the planes within tol) is
/// accepted. Only the multiset of sectional curvatures is stable when values
/// repeat; the planes themselves are not unique.
SkewTsankovDecomposition skew_tsankov_decompose(const SymForm& phi, const CurvTensor& t,
                                                double tol, Rng& rng);

}  // namespace curvlab
