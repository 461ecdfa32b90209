#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace curvlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// An N x N real matrix acting on column vectors. Invertibility is checked by
// the operations that need it, not at construction.
using LinearMap = Matrix;

using Rng = std::mt19937_64;

// Default tolerances. All comparisons in the library are relative to the
// natural scale of the object involved (largest component, largest eigenvalue,
// largest singular value).
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kMembershipTol = 1e-8;

// Exactly symmetric average; addition is commutative in IEEE arithmetic, so
// the result is bitwise symmetric.
inline Matrix symmetric_part(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

}  // namespace curvlab
