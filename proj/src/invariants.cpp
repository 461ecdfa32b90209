#include "curvlab/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "curvlab/errors.hpp"

namespace curvlab {

SymForm ricci(const CurvTensor& t, const SymForm& phi) {
  if (phi.dim() != t.dim()) raise(ErrorCode::InvalidArgument, "form/tensor dimension mismatch");
  const PseudoONBasis basis = pseudo_orthonormalize(phi);
  const int n = t.dim();
  // sum_i sign_i q_i q_i^T, the metric dual of the identity on the basis.
  Matrix dual = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double sign = static_cast<double>(basis.signs[static_cast<std::size_t>(i)]);
    dual.noalias() += sign * basis.vectors.col(i) * basis.vectors.col(i).transpose();
  }
  Matrix rho = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) acc += dual(i, j) * t(a, i, j, b);
      }
      rho(a, b) = acc;
    }
  }
  return SymForm(symmetric_part(rho));
}

double scalar_curvature(const CurvTensor& t, const SymForm& phi) {
  const SymForm rho = ricci(t, phi);
  const PseudoONBasis basis = pseudo_orthonormalize(phi);
  double tau = 0.0;
  for (int j = 0; j < t.dim(); ++j) {
    const Vector q = basis.vectors.col(j);
    tau += static_cast<double>(basis.signs[static_cast<std::size_t>(j)]) * rho.apply(q, q);
  }
  return tau;
}

double sectional_curvature(const CurvTensor& t, const SymForm& phi, const Vector& x,
                           const Vector& y) {
  if (phi.dim() != t.dim() || x.size() != t.dim() || y.size() != t.dim()) {
    raise(ErrorCode::InvalidArgument, "sectional curvature dimension mismatch");
  }
  const double denom = phi.apply(x, x) * phi.apply(y, y) - phi.apply(x, y) * phi.apply(x, y);
  if (std::abs(denom) <= 1e-12) {
    raise(ErrorCode::DegeneratePlane, "plane is degenerate for the form");
  }
  return t.evaluate(x, y, y, x) / denom;
}

InvariantProfile symmetric_combine(const std::vector<double>& values) {
  if (values.empty()) raise(ErrorCode::InvalidArgument, "no values to combine");
  InvariantProfile profile;
  profile.per_block = values;
  profile.sorted_tuple = values;
  std::sort(profile.sorted_tuple.begin(), profile.sorted_tuple.end());

  // Both families are computed from the sorted list, so any permutation of
  // the input produces bitwise identical output.
  const std::vector<double>& v = profile.sorted_tuple;
  const std::size_t s = v.size();
  std::vector<double> e(s + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = std::min(i + 1, s); j >= 1; --j) {
      e[j] += v[i] * e[j - 1];
    }
  }
  profile.elementary.assign(e.begin() + 1, e.end());

  profile.power_sums.resize(s, 0.0);
  for (std::size_t k = 1; k <= s; ++k) {
    double acc = 0.0;
    for (double x : v) acc += std::pow(x, static_cast<double>(k));
    profile.power_sums[k - 1] = acc;
  }
  return profile;
}

InvarianceReport check_invariance(const BasisValueFn& value_fn, const BlockModelSpace& model,
                                  int n_samples, double tol, Rng& rng) {
  const int n = model.total_dim();
  InvarianceReport report;
  report.samples = n_samples;
  report.tolerance = tol;
  report.base_value = value_fn(Matrix::Identity(n, n));

  double base_scale = 1.0;
  for (double v : report.base_value) base_scale = std::max(base_scale, std::abs(v));

  for (int s = 0; s < n_samples; ++s) {
    const LinearMap g = sample_structure_group_element(model, rng);
    const std::vector<double> transformed = value_fn(g);
    if (transformed.size() != report.base_value.size()) {
      raise(ErrorCode::InvalidArgument, "value function changed output size");
    }
    for (std::size_t i = 0; i < transformed.size(); ++i) {
      report.max_deviation =
          std::max(report.max_deviation, std::abs(transformed[i] - report.base_value[i]));
    }
  }
  report.pass = report.max_deviation <= tol * base_scale;
  return report;
}

namespace {

// Transforms a rank-5 tensor into basis coordinates one slot at a time.
std::vector<double> tensor5_in_basis(const Tensor5& a5, const Matrix& basis) {
  const int n = a5.dim();
  const std::size_t total = a5.components().size();
  std::vector<double> data = a5.components();
  std::vector<double> next(total);
  const std::size_t block = total / static_cast<std::size_t>(n);
  for (int slot = 0; slot < 5; ++slot) {
    // next[(rest) a] = sum_i basis(i, a) * data[i (rest)], then rotate left.
    for (std::size_t rest = 0; rest < block; ++rest) {
      for (int col = 0; col < n; ++col) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
          acc += basis(i, col) * data[static_cast<std::size_t>(i) * block + rest];
        }
        next[rest * static_cast<std::size_t>(n) + static_cast<std::size_t>(col)] = acc;
      }
    }
    data.swap(next);
  }
  return data;
}

}  // namespace

double covariant_norm(const SymForm& phi, const Tensor5& a5) {
  if (phi.dim() != a5.dim()) raise(ErrorCode::InvalidArgument, "form/tensor dimension mismatch");

  // Canonical sign: the value is unchanged under phi -> -phi, so normalize
  // the representative to make that equality bitwise.
  double lead = phi.entries().trace();
  if (lead == 0.0) {
    for (Eigen::Index i = 0; i < phi.entries().size() && lead == 0.0; ++i) {
      lead = phi.entries().reshaped()[i];
    }
  }
  const SymForm canonical = lead < 0.0 ? phi.negated() : phi;

  const PseudoONBasis basis = pseudo_orthonormalize(canonical);
  const std::vector<double> in_basis = tensor5_in_basis(a5, basis.vectors);

  const int n = a5.dim();
  double acc = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          for (int m = 0; m < n; ++m) {
            const double sign = static_cast<double>(
                basis.signs[static_cast<std::size_t>(i)] * basis.signs[static_cast<std::size_t>(j)] *
                basis.signs[static_cast<std::size_t>(k)] * basis.signs[static_cast<std::size_t>(l)] *
                basis.signs[static_cast<std::size_t>(m)]);
            acc += sign * in_basis[idx] * in_basis[idx];
            ++idx;
          }
        }
      }
    }
  }
  return std::abs(acc);
}

std::vector<double> block_sectional_curvatures(const BlockModelSpace& model) {
  std::vector<double> kappas;
  for (int b = 0; b < model.block_count(); ++b) {
    if (model.block_dim(b) != 2) continue;
    const CurvTensor block_tensor = build_canonical(model.block_form(b));
    Vector e1 = Vector::Zero(2);
    Vector e2 = Vector::Zero(2);
    e1[0] = 1.0;
    e2[1] = 1.0;
    kappas.push_back(sectional_curvature(block_tensor, SymForm::identity(2), e1, e2));
  }
  return kappas;
}

}  // namespace curvlab
