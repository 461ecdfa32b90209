#include "curvlab/sym_form.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace curvlab {

SymForm::SymForm(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    raise(ErrorCode::InvalidArgument, "form entries must be a square matrix of dim >= 1");
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < entries_.cols(); ++j) {
      if (entries_(i, j) != entries_(j, i)) {
        raise(ErrorCode::InvalidArgument, "form entries are not exactly symmetric");
      }
    }
  }
}

SymForm SymForm::identity(int dim) { return SymForm(Matrix::Identity(dim, dim)); }

SymForm SymForm::diagonal(const Vector& diag) {
  return SymForm(Matrix(diag.asDiagonal()));
}

double SymForm::apply(const Vector& x, const Vector& y) const {
  return x.dot(entries_ * y);
}

bool same_unordered_signature(const Signature& a, const Signature& b) {
  if (a.n_zero != b.n_zero) return false;
  return (a.n_plus == b.n_plus && a.n_minus == b.n_minus) ||
         (a.n_plus == b.n_minus && a.n_minus == b.n_plus);
}

namespace {

struct EigenPairs {
  Vector values;
  Matrix vectors;
};

EigenPairs symmetric_eigen(const SymForm& phi) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(phi.entries());
  EigenPairs out{solver.eigenvalues(), solver.eigenvectors()};
  // Deterministic eigenvector signs: largest-magnitude entry positive.
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    Eigen::Index r;
    out.vectors.col(c).cwiseAbs().maxCoeff(&r);
    if (out.vectors(r, c) < 0.0) out.vectors.col(c) = -out.vectors.col(c);
  }
  return out;
}

}  // namespace

Signature signature(const SymForm& phi, double tol) {
  const EigenPairs eig = symmetric_eigen(phi);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double threshold = tol * scale;
  Signature sig;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values[i] > threshold) {
      ++sig.n_plus;
    } else if (eig.values[i] < -threshold) {
      ++sig.n_minus;
    } else {
      ++sig.n_zero;
    }
  }
  return sig;
}

Vector form_eigenvalues(const SymForm& phi) { return symmetric_eigen(phi).values; }

PseudoONBasis pseudo_orthonormalize(const SymForm& phi, double tol) {
  const EigenPairs eig = symmetric_eigen(phi);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double threshold = tol * scale;

  const int n = phi.dim();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Positive eigenvalues first (descending), then negative (ascending).
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double la = eig.values[a];
    const double lb = eig.values[b];
    if ((la > 0) != (lb > 0)) return la > lb;
    return la > 0 ? la > lb : la < lb;
  });

  PseudoONBasis basis;
  basis.vectors.resize(n, n);
  basis.signs.resize(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const double lambda = eig.values[order[static_cast<std::size_t>(c)]];
    if (std::abs(lambda) <= threshold) {
      raise(ErrorCode::DegenerateForm, "pseudo-orthonormalization requires a nondegenerate form");
    }
    basis.vectors.col(c) =
        eig.vectors.col(order[static_cast<std::size_t>(c)]) / std::sqrt(std::abs(lambda));
    basis.signs[static_cast<std::size_t>(c)] = lambda > 0 ? 1 : -1;
  }
  return basis;
}

Matrix gram_matrix(const SymForm& phi, const Matrix& vectors) {
  return vectors.transpose() * phi.entries() * vectors;
}

}  // namespace curvlab
