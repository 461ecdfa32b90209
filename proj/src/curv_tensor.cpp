#include "curvlab/curv_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

std::size_t pow4(int n) {
  const std::size_t m = static_cast<std::size_t>(n);
  return m * m * m * m;
}

double max_abs_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double ValidationReport::max_residual() const {
  return std::max({antisymmetry_residual, pair_symmetry_residual, bianchi_residual});
}

ValidationReport validate_components(int dim, const std::vector<double>& c, double tol) {
  if (dim < 1 || c.size() != pow4(dim)) {
    raise(ErrorCode::InvalidArgument, "component array size must be dim^4");
  }
  const int n = dim;
  auto at = [&](int i, int j, int k, int l) {
    return c[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  };
  ValidationReport report;
  report.scale = max_abs_of(c);
  report.tolerance = tol;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          report.antisymmetry_residual =
              std::max(report.antisymmetry_residual, std::abs(at(i, j, k, l) + at(j, i, k, l)));
          report.pair_symmetry_residual =
              std::max(report.pair_symmetry_residual, std::abs(at(i, j, k, l) - at(k, l, i, j)));
          report.bianchi_residual = std::max(
              report.bianchi_residual,
              std::abs(at(i, j, k, l) + at(i, k, l, j) + at(i, l, j, k)));
        }
      }
    }
  }
  report.pass = report.max_residual() <= tol * report.scale;
  return report;
}

CurvTensor::CurvTensor(int dim, std::vector<double> components, double tol)
    : dim_(dim), components_(std::move(components)) {
  const ValidationReport report = validate_components(dim_, components_, tol);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "components fail the curvature identities: antisymmetry "
        << report.antisymmetry_residual << ", pair " << report.pair_symmetry_residual
        << ", Bianchi " << report.bianchi_residual << " vs tolerance " << tol * report.scale;
    raise(ErrorCode::InvalidCurvature, msg.str());
  }
}

CurvTensor::CurvTensor(int dim, std::vector<double> components, Trusted)
    : dim_(dim), components_(std::move(components)) {
  if (dim_ < 1 || components_.size() != pow4(dim_)) {
    raise(ErrorCode::InvalidArgument, "component array size must be dim^4");
  }
}

CurvTensor CurvTensor::zero(int dim) {
  return CurvTensor(dim, std::vector<double>(pow4(dim), 0.0), Trusted{});
}

double CurvTensor::evaluate(const Vector& x, const Vector& y, const Vector& z,
                            const Vector& w) const {
  const int n = dim_;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j] == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (z[k] == 0.0) continue;
        for (int l = 0; l < n; ++l) {
          acc += x[i] * y[j] * z[k] * w[l] * (*this)(i, j, k, l);
        }
      }
    }
  }
  return acc;
}

double CurvTensor::max_abs() const { return max_abs_of(components_); }

ValidationReport validate_curvature(const CurvTensor& t, double tol) {
  return validate_components(t.dim(), t.components(), tol);
}

CurvTensor build_canonical(const SymForm& phi) {
  const int n = phi.dim();
  std::vector<double> c(pow4(n));
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          c[idx++] = phi(i, l) * phi(j, k) - phi(i, k) * phi(j, l);
        }
      }
    }
  }
  return CurvTensor(n, std::move(c), CurvTensor::Trusted{});
}

CurvTensor direct_sum(const std::vector<CurvTensor>& parts) {
  if (parts.empty()) raise(ErrorCode::InvalidArgument, "direct sum of zero tensors");
  int total = 0;
  for (const CurvTensor& part : parts) total += part.dim();

  std::vector<int> offset_of;
  std::vector<int> block_of;
  offset_of.reserve(parts.size());
  int offset = 0;
  for (const CurvTensor& part : parts) {
    offset_of.push_back(offset);
    for (int i = 0; i < part.dim(); ++i) block_of.push_back(static_cast<int>(offset_of.size()) - 1);
    offset += part.dim();
  }

  std::vector<double> c(pow4(total), 0.0);
  const int n = total;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    const CurvTensor& part = parts[b];
    const int o = offset_of[b];
    const int d = part.dim();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          for (int l = 0; l < d; ++l) {
            c[static_cast<std::size_t>((((o + i) * n + (o + j)) * n + (o + k)) * n + (o + l))] =
                part(i, j, k, l);
          }
        }
      }
    }
  }
  return CurvTensor(n, std::move(c), CurvTensor::Trusted{});
}

namespace {

// Contracts the first slot with A (out_{i j k l} = sum_p A_{p i} in_{p j k l})
// and then rotates the slots left, so four applications contract every slot
// and restore the original slot order.
void contract_first_and_rotate(const Matrix& a, std::vector<double>& data, int n,
                               std::vector<double>& scratch) {
  using RowMajorMap =
      Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using ConstRowMajorMap =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  const Eigen::Index rows = n;
  const Eigen::Index cols = static_cast<Eigen::Index>(data.size()) / n;
  ConstRowMajorMap in(data.data(), rows, cols);
  RowMajorMap mid(scratch.data(), rows, cols);
  mid.noalias() = a.transpose() * in;
  // Rotate: out[(j k l) i] = mid[i (j k l)].
  const std::size_t block = static_cast<std::size_t>(cols);
  for (int i = 0; i < n; ++i) {
    for (std::size_t rest = 0; rest < block; ++rest) {
      data[rest * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
          scratch[static_cast<std::size_t>(i) * block + rest];
    }
  }
}

}  // namespace

std::vector<double> pullback_components(const LinearMap& a, const CurvTensor& t) {
  const int n = t.dim();
  if (a.rows() != n || a.cols() != n) {
    raise(ErrorCode::InvalidArgument, "pullback map dimension mismatch");
  }
  std::vector<double> data = t.components();
  std::vector<double> scratch(data.size());
  for (int slot = 0; slot < 4; ++slot) contract_first_and_rotate(a, data, n, scratch);
  return data;
}

CurvTensor pullback(const LinearMap& a, const CurvTensor& t) {
  if (a.isIdentity(0.0)) return t;
  return CurvTensor(t.dim(), pullback_components(a, t), CurvTensor::Trusted{});
}

Matrix kernel(const CurvTensor& t, double tol) {
  const int n = t.dim();
  const Eigen::Index cols = static_cast<Eigen::Index>(t.components().size()) / n;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      flattened(t.components().data(), n, cols);
  Eigen::JacobiSVD<Matrix> svd(flattened, Eigen::ComputeFullU);
  const Vector& sv = svd.singularValues();
  const double scale = sv.size() > 0 ? sv[0] : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol * scale && sv[i] > 0.0) ++rank;
  }
  return svd.matrixU().rightCols(n - rank);
}

bool is_decomposable_wrt(const CurvTensor& t, const Matrix& basis1, const Matrix& basis2,
                         double tol) {
  const int n = t.dim();
  if (basis1.rows() != n || basis2.rows() != n || basis1.cols() < 1 || basis2.cols() < 1 ||
      basis1.cols() + basis2.cols() != n) {
    raise(ErrorCode::InvalidSplit, "bases do not form a direct-sum decomposition");
  }
  Matrix combined(n, n);
  combined << basis1, basis2;
  Eigen::JacobiSVD<Matrix> svd(combined);
  const Vector& sv = svd.singularValues();
  if (sv[n - 1] <= 1e-12 * sv[0]) {
    raise(ErrorCode::InvalidSplit, "bases do not form a direct-sum decomposition");
  }

  const std::vector<double> adapted = pullback_components(combined, t);
  double scale = 0.0;
  for (double x : adapted) scale = std::max(scale, std::abs(x));

  const int n1 = static_cast<int>(basis1.cols());
  auto group = [n1](int idx) { return idx < n1 ? 0 : 1; };
  auto at = [&](int i, int j, int k, int l) {
    return adapted[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const int g = group(i);
          const bool mixed = group(j) != g || group(k) != g || group(l) != g;
          if (mixed && std::abs(at(i, j, k, l)) > tol * scale) return false;
        }
      }
    }
  }
  return true;
}

Tensor5::Tensor5(int dim, std::vector<double> components)
    : dim_(dim), components_(std::move(components)) {
  const std::size_t m = static_cast<std::size_t>(dim);
  if (dim < 1 || components_.size() != m * m * m * m * m) {
    raise(ErrorCode::InvalidArgument, "component array size must be dim^5");
  }
}

Tensor5 Tensor5::zero(int dim) {
  const std::size_t m = static_cast<std::size_t>(dim);
  return Tensor5(dim, std::vector<double>(m * m * m * m * m, 0.0));
}

double Tensor5::max_abs() const { return max_abs_of(components_); }

}  // namespace curvlab
