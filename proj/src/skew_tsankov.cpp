#include "curvlab/skew_tsankov.hpp"

#include <algorithm>
#include <cmath>

#include "curvlab/errors.hpp"
#include "curvlab/invariants.hpp"

namespace curvlab {

Matrix curvature_operator(const CurvTensor& t, int i, int j, const Matrix& phi_inverse) {
  const int n = t.dim();
  Matrix slice(n, n);
  for (int z = 0; z < n; ++z) {
    for (int w = 0; w < n; ++w) slice(z, w) = t(i, j, z, w);
  }
  // T(e_i, e_j, z, w) = phi(M z, w)  <=>  slice = M^T phi.
  return phi_inverse * slice.transpose();
}

bool skew_tsankov_check(const SymForm& phi, const CurvTensor& t, double tol) {
  if (phi.dim() != t.dim()) raise(ErrorCode::InvalidArgument, "form/tensor dimension mismatch");
  if (signature(phi).n_zero > 0) {
    raise(ErrorCode::DegenerateForm, "the commutation check requires a nondegenerate form");
  }
  const int n = t.dim();
  const Matrix phi_inv = phi.entries().inverse();
  std::vector<Matrix> operators;
  double op_scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      operators.push_back(curvature_operator(t, i, j, phi_inv));
      op_scale = std::max(op_scale, operators.back().cwiseAbs().maxCoeff());
    }
  }
  if (op_scale == 0.0) return true;
  const double threshold = tol * op_scale * op_scale;
  for (std::size_t a = 0; a < operators.size(); ++a) {
    for (std::size_t b = a + 1; b < operators.size(); ++b) {
      const Matrix commutator = operators[a] * operators[b] - operators[b] * operators[a];
      if (commutator.cwiseAbs().maxCoeff() > threshold) return false;
    }
  }
  return true;
}

namespace {

// Pairs Schur columns into candidate invariant 2-planes. A 1x1 diagonal
// block (zero rotation speed) makes the pairing ambiguous; fewer than d/2
// planes come back and the caller re-randomizes.
std::vector<Matrix> split_into_planes(const Matrix& skew) {
  const int d = static_cast<int>(skew.rows());
  Eigen::RealSchur<Matrix> schur(skew);
  const Matrix& u = schur.matrixT();
  const Matrix& z = schur.matrixU();
  const double scale = std::max(1e-300, u.cwiseAbs().maxCoeff());

  std::vector<Matrix> planes;
  int r = 0;
  while (r < d) {
    const bool pair = (r + 1 < d) && std::abs(u(r + 1, r)) > 1e-10 * scale;
    if (pair) {
      Matrix plane(d, 2);
      plane.col(0) = z.col(r);
      plane.col(1) = z.col(r + 1);
      planes.push_back(std::move(plane));
      r += 2;
    } else {
      ++r;
    }
  }
  return planes;
}

}  // namespace

SkewTsankovDecomposition skew_tsankov_decompose(const SymForm& phi, const CurvTensor& t,
                                                double tol, Rng& rng) {
  const Signature sig = signature(phi);
  if (sig.n_minus > 0 || sig.n_zero > 0) {
    raise(ErrorCode::InvalidArgument, "decomposition requires a positive definite form");
  }
  if (!skew_tsankov_check(phi, t, tol)) {
    raise(ErrorCode::NotSkewTsankov, "curvature operators do not commute");
  }

  const int n = t.dim();
  SkewTsankovDecomposition result;
  result.kernel = kernel(t);
  const int k0 = static_cast<int>(result.kernel.cols());
  const int d = n - k0;
  if (d == 0) return result;

  // Orthonormal (for phi) basis of the phi-orthogonal complement of the
  // kernel: null space of kernel^T phi, then normalized against phi.
  Matrix complement;
  if (k0 == 0) {
    complement = Matrix::Identity(n, n);
  } else {
    Eigen::JacobiSVD<Matrix> svd(Matrix(result.kernel.transpose() * phi.entries()),
                                 Eigen::ComputeFullV);
    complement = svd.matrixV().rightCols(d);
  }
  const SymForm restricted(symmetric_part(complement.transpose() * phi.entries() * complement));
  const PseudoONBasis on = pseudo_orthonormalize(restricted);
  const Matrix w = complement * on.vectors;  // n x d, phi-orthonormal columns

  // Components of the tensor on the complement basis; phi is the identity
  // there, so the curvature operators are plain antisymmetric matrices.
  std::vector<double> tw(static_cast<std::size_t>(d) * d * d * d);
  {
    std::size_t idx = 0;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int c = 0; c < d; ++c) {
          for (int e = 0; e < d; ++e) {
            tw[idx++] = t.evaluate(w.col(a), w.col(b), w.col(c), w.col(e));
          }
        }
      }
    }
  }
  auto tw_at = [&](int a, int b, int c, int e) {
    return tw[static_cast<std::size_t>(((a * d + b) * d + c) * d + e)];
  };

  std::normal_distribution<double> gauss(0.0, 1.0);
  const int max_attempts = 5;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Matrix s = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        const double c_ab = gauss(rng);
        for (int z = 0; z < d; ++z) {
          for (int v = 0; v < d; ++v) {
            // Operator of the pair (a, b): M(v, z) = T(a, b, z, v).
            s(v, z) += c_ab * tw_at(a, b, z, v);
          }
        }
      }
    }

    const std::vector<Matrix> candidate_planes = split_into_planes(s);
    if (static_cast<int>(candidate_planes.size()) * 2 != d) continue;

    // Adapted basis: candidate planes followed by the kernel.
    Matrix adapted(n, n);
    for (std::size_t pl = 0; pl < candidate_planes.size(); ++pl) {
      adapted.block(0, static_cast<int>(2 * pl), n, 2) = w * candidate_planes[pl];
    }
    if (k0 > 0) adapted.rightCols(k0) = result.kernel;

    // Reconstruction check: the pulled-back tensor must be block diagonal
    // over the 2-plane/kernel split.
    const std::vector<double> pulled = pullback_components(adapted, t);
    double scale = 0.0;
    for (double x : pulled) scale = std::max(scale, std::abs(x));
    auto p_at = [&](int i, int j, int k, int l) {
      return pulled[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
    };
    auto group_of = [&](int idx) { return idx < d ? idx / 2 : d / 2 + (idx - d); };
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        for (int k = 0; k < n && ok; ++k) {
          for (int l = 0; l < n && ok; ++l) {
            const int g = group_of(i);
            const bool mixed = group_of(j) != g || group_of(k) != g || group_of(l) != g;
            if (mixed && std::abs(p_at(i, j, k, l)) > tol * scale) ok = false;
          }
        }
      }
    }
    if (!ok) continue;

    for (const Matrix& candidate : candidate_planes) {
      Matrix plane = w * candidate;
      result.kappas.push_back(sectional_curvature(t, phi, plane.col(0), plane.col(1)));
      result.planes.push_back(std::move(plane));
    }
    return result;
  }

  raise(ErrorCode::DegenerateSpectrum,
        "no clean invariant 2-plane split after re-randomization");
}

}  // namespace curvlab
