#include "curvlab/structure_group.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

constexpr double kDetFloor = 1e-12;

void require_square(const LinearMap& a, int dim, const char* what) {
  if (a.rows() != dim || a.cols() != dim) {
    std::ostringstream msg;
    msg << what << ": expected a " << dim << "x" << dim << " matrix, got " << a.rows() << "x"
        << a.cols();
    raise(ErrorCode::InvalidArgument, msg.str());
  }
}

void require_invertible(const LinearMap& a) {
  if (std::abs(a.determinant()) <= kDetFloor) {
    raise(ErrorCode::SingularMap, "map is singular");
  }
}

double pullback_form_residual(const LinearMap& a, const Matrix& phi, double sign) {
  const Matrix pulled = a.transpose() * phi * a;
  return (pulled - sign * phi).cwiseAbs().maxCoeff();
}

}  // namespace

BlockPermutation::BlockPermutation(std::vector<int> img) : image(std::move(img)) {
  std::vector<bool> seen(image.size(), false);
  for (int v : image) {
    if (v < 0 || v >= static_cast<int>(image.size()) || seen[static_cast<std::size_t>(v)]) {
      raise(ErrorCode::InvalidArgument, "permutation image is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

BlockPermutation BlockPermutation::identity(int k) {
  std::vector<int> img(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) img[static_cast<std::size_t>(i)] = i;
  return BlockPermutation(std::move(img));
}

BlockPermutation BlockPermutation::inverse() const {
  std::vector<int> img(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    img[static_cast<std::size_t>(image[i])] = static_cast<int>(i);
  }
  return BlockPermutation(std::move(img));
}

BlockPermutation BlockPermutation::compose(const BlockPermutation& other) const {
  if (size() != other.size()) {
    raise(ErrorCode::InvalidArgument, "composing permutations of different sizes");
  }
  std::vector<int> img(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    img[i] = image[static_cast<std::size_t>(other.image[i])];
  }
  return BlockPermutation(std::move(img));
}

bool BlockPermutation::is_identity() const {
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::string BlockPermutation::cycle_notation() const {
  std::ostringstream out;
  std::vector<bool> visited(image.size(), false);
  bool any = false;
  for (std::size_t start = 0; start < image.size(); ++start) {
    if (visited[start] || image[start] == static_cast<int>(start)) continue;
    any = true;
    out << '(';
    std::size_t i = start;
    bool first = true;
    while (!visited[i]) {
      visited[i] = true;
      if (!first) out << ' ';
      out << i + 1;
      first = false;
      i = static_cast<std::size_t>(image[i]);
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

WreathElement::WreathElement(std::vector<LinearMap> comps, BlockPermutation sig,
                             std::vector<int> dims)
    : components(std::move(comps)), sigma(std::move(sig)), block_dims(std::move(dims)) {
  const std::size_t k = block_dims.size();
  if (components.size() != k || sigma.image.size() != k) {
    raise(ErrorCode::InvalidArgument, "wreath element block count mismatch");
  }
  const BlockPermutation inv = sigma.inverse();
  for (std::size_t i = 0; i < k; ++i) {
    const int di = block_dims[i];
    const int dsrc = block_dims[static_cast<std::size_t>(inv.image[i])];
    if (di != dsrc) {
      raise(ErrorCode::IncompatibleBlocks, "permutation pairs blocks of unequal dimension");
    }
    if (components[i].rows() != di || components[i].cols() != di) {
      raise(ErrorCode::InvalidArgument, "wreath component dimension mismatch");
    }
  }
}

WreathElement wreath_identity(const BlockModelSpace& model) {
  std::vector<LinearMap> comps;
  comps.reserve(static_cast<std::size_t>(model.block_count()));
  for (int b = 0; b < model.block_count(); ++b) {
    comps.push_back(Matrix::Identity(model.block_dim(b), model.block_dim(b)));
  }
  return WreathElement(std::move(comps), BlockPermutation::identity(model.block_count()),
                       model.block_dims());
}

WreathElement wreath_compose(const WreathElement& a, const WreathElement& b) {
  if (a.block_dims != b.block_dims) {
    raise(ErrorCode::ModelMismatch, "wreath elements live over different models");
  }
  const BlockPermutation tau_inv = a.sigma.inverse();
  std::vector<LinearMap> comps;
  comps.reserve(a.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    comps.push_back(a.components[i] *
                    b.components[static_cast<std::size_t>(tau_inv.image[i])]);
  }
  return WreathElement(std::move(comps), a.sigma.compose(b.sigma), a.block_dims);
}

LinearMap wreath_to_matrix(const WreathElement& w, const BlockModelSpace& model) {
  if (w.block_dims != model.block_dims()) {
    raise(ErrorCode::ModelMismatch, "wreath element does not match the model");
  }
  const int n = model.total_dim();
  Matrix a = Matrix::Zero(n, n);
  const BlockPermutation inv = w.sigma.inverse();
  for (int i = 0; i < model.block_count(); ++i) {
    const int src = inv.image[static_cast<std::size_t>(i)];
    if (model.block_dim(src) != model.block_dim(i)) {
      raise(ErrorCode::IncompatibleBlocks, "permutation pairs blocks of unequal dimension");
    }
    a.block(model.block_offset(i), model.block_offset(src), model.block_dim(i),
            model.block_dim(src)) = w.components[static_cast<std::size_t>(i)];
  }
  return a;
}

MembershipResult is_member(const LinearMap& a, const CurvTensor& t, double tol) {
  require_square(a, t.dim(), "membership test");
  require_invertible(a);
  const std::vector<double> pulled = pullback_components(a, t);
  double residual = 0.0;
  for (std::size_t i = 0; i < pulled.size(); ++i) {
    residual = std::max(residual, std::abs(pulled[i] - t.components()[i]));
  }
  const double scale = t.max_abs();
  if (scale == 0.0) return {true, 0.0};
  return {residual <= tol * scale, residual / scale};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Isometry: return "isometry";
    case Verdict::ParaIsometry: return "para-isometry";
    case Verdict::UnimodularRank2: return "unimodular-rank2";
    case Verdict::ZeroTensor: return "zero-tensor";
    case Verdict::NonMember: return "non-member";
  }
  return "unknown";
}

MembershipVerdict classify_canonical_member(const LinearMap& a, const SymForm& phi, double tol) {
  require_square(a, phi.dim(), "canonical classification");
  require_invertible(a);

  const Signature sig = signature(phi);
  if (sig.rank() <= 1) return {Verdict::ZeroTensor, 0.0};

  Matrix phi_reduced = phi.entries();
  Matrix a_reduced = a;
  double kernel_leak = 0.0;
  if (sig.n_zero > 0) {
    // Members preserve ker(phi) = ker(R_phi); classify the induced map on the
    // quotient, identified with the span of the non-null eigenvectors.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(phi.entries());
    const Vector values = solver.eigenvalues();
    const double threshold = kRankTol * values.cwiseAbs().maxCoeff();
    Matrix range(phi.dim(), sig.rank());
    Matrix null_space(phi.dim(), sig.n_zero);
    int r = 0;
    int z = 0;
    for (int i = 0; i < phi.dim(); ++i) {
      if (std::abs(values[i]) > threshold) {
        range.col(r++) = solver.eigenvectors().col(i);
      } else {
        null_space.col(z++) = solver.eigenvectors().col(i);
      }
    }
    const Matrix mapped_kernel = a * null_space;
    // Component of A(ker phi) outside ker phi, relative to |A|.
    kernel_leak = (range.transpose() * mapped_kernel).cwiseAbs().maxCoeff() /
                  a.cwiseAbs().maxCoeff();
    if (kernel_leak > tol) return {Verdict::NonMember, kernel_leak};
    Matrix full(phi.dim(), phi.dim());
    full << range, null_space;
    const Matrix a_in_split = full.inverse() * a * full;
    a_reduced = a_in_split.topLeftCorner(sig.rank(), sig.rank());
    phi_reduced = range.transpose() * phi.entries() * range;
  }

  if (sig.rank() == 2) {
    const double det_gap = std::abs(std::abs(a_reduced.determinant()) - 1.0);
    const double residual = std::max(det_gap, kernel_leak);
    if (det_gap <= tol) return {Verdict::UnimodularRank2, residual};
    return {Verdict::NonMember, residual};
  }

  const double scale = phi_reduced.cwiseAbs().maxCoeff();
  const double r_plus = pullback_form_residual(a_reduced, phi_reduced, 1.0) / scale;
  const double r_minus = pullback_form_residual(a_reduced, phi_reduced, -1.0) / scale;
  if (r_plus <= tol) return {Verdict::Isometry, std::max(r_plus, kernel_leak)};
  if (r_minus <= tol) return {Verdict::ParaIsometry, std::max(r_minus, kernel_leak)};
  return {Verdict::NonMember, std::min(r_plus, r_minus)};
}

LinearMap isometry_exponential(const SymForm& phi, const Matrix& generator, double tol) {
  require_square(generator, phi.dim(), "isometry exponential");
  const Matrix compat = generator.transpose() * phi.entries() + phi.entries() * generator;
  const double scale =
      std::max(1e-300, phi.entries().cwiseAbs().maxCoeff() * generator.cwiseAbs().maxCoeff());
  if (compat.cwiseAbs().maxCoeff() > tol * scale) {
    raise(ErrorCode::InvalidArgument, "generator is not compatible with the form");
  }
  return generator.exp();
}

LinearMap sample_isometry(const SymForm& phi, Rng& rng) {
  const PseudoONBasis basis = pseudo_orthonormalize(phi);
  const int n = phi.dim();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix raw(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) raw(i, j) = gauss(rng);
  }
  // Entries scaled by 0.5 keep the exponential well conditioned.
  const Matrix antisym = 0.25 * (raw - raw.transpose());
  Matrix eta_by_antisym = antisym;
  for (int i = 0; i < n; ++i) {
    if (basis.signs[static_cast<std::size_t>(i)] < 0) eta_by_antisym.row(i) *= -1.0;
  }
  const Matrix exp_in_basis = eta_by_antisym.exp();
  const Matrix q_inv = basis.vectors.inverse();
  return basis.vectors * exp_in_basis * q_inv;
}

LinearMap sample_para_isometry(const SymForm& phi) {
  const Signature sig = signature(phi);
  if (!sig.balanced()) {
    raise(ErrorCode::NotBalanced, "para-isometries require balanced signature");
  }
  const PseudoONBasis basis = pseudo_orthonormalize(phi);
  const int half = sig.n_plus;
  const int n = phi.dim();
  Matrix swap = Matrix::Zero(n, n);
  swap.topRightCorner(half, half) = Matrix::Identity(half, half);
  swap.bottomLeftCorner(half, half) = Matrix::Identity(half, half);
  return basis.vectors * swap * basis.vectors.inverse();
}

BlockPermutation extract_permutation(const LinearMap& a, const BlockModelSpace& model,
                                     double tol) {
  model.require_nondegenerate();
  for (int b = 0; b < model.block_count(); ++b) {
    if (model.block_dim(b) < 2) {
      raise(ErrorCode::InvalidArgument,
            "permutation extraction requires every block dimension >= 2");
    }
  }
  const int n = model.total_dim();
  require_square(a, n, "permutation extraction");

  const MembershipResult membership = is_member(a, model.direct_sum_tensor(), tol);
  if (!membership.member) {
    std::ostringstream msg;
    msg << "map is not a structure-group member (residual " << membership.residual << ")";
    raise(ErrorCode::NotAMember, msg.str());
  }

  // Express the map on the concatenated pseudo-orthonormal block basis.
  Matrix q = Matrix::Zero(n, n);
  for (int b = 0; b < model.block_count(); ++b) {
    const PseudoONBasis basis = pseudo_orthonormalize(model.block_form(b));
    q.block(model.block_offset(b), model.block_offset(b), model.block_dim(b),
            model.block_dim(b)) = basis.vectors;
  }
  const Matrix a_hat = q.inverse() * a * q;

  const int k = model.block_count();
  std::vector<int> image(static_cast<std::size_t>(k), -1);
  for (int col = 0; col < n; ++col) {
    const double col_max = a_hat.col(col).cwiseAbs().maxCoeff();
    int first_row = -1;
    for (int row = 0; row < n; ++row) {
      if (std::abs(a_hat(row, col)) > tol * col_max) {
        first_row = row;
        break;
      }
    }
    if (first_row < 0) {
      raise(ErrorCode::InconsistentPermutation, "column has no entry above threshold");
    }
    const int source = model.block_of(col);
    const int target = model.block_of(first_row);
    if (image[static_cast<std::size_t>(source)] < 0) {
      image[static_cast<std::size_t>(source)] = target;
    } else if (image[static_cast<std::size_t>(source)] != target) {
      raise(ErrorCode::InconsistentPermutation,
            "columns within one block disagree on the target block");
    }
  }

  std::vector<bool> hit(static_cast<std::size_t>(k), false);
  for (int v : image) {
    if (v < 0 || hit[static_cast<std::size_t>(v)]) {
      raise(ErrorCode::InconsistentPermutation, "first-entry bookkeeping is not a bijection");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }

  // Full-support check: every column must vanish outside its target block.
  const double support_threshold = tol * a_hat.cwiseAbs().maxCoeff();
  for (int col = 0; col < n; ++col) {
    const int target = image[static_cast<std::size_t>(model.block_of(col))];
    for (int row = 0; row < n; ++row) {
      if (model.block_of(row) == target) continue;
      if (std::abs(a_hat(row, col)) > support_threshold) {
        raise(ErrorCode::InconsistentPermutation, "column support leaks outside its target block");
      }
    }
  }

  return BlockPermutation(std::move(image));
}

std::string PermutationClasses::group_description() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i > 0) out << " x ";
    out << 'S' << classes[i].size();
  }
  return out.str();
}

bool PermutationClasses::admissible(const BlockPermutation& sigma) const {
  std::vector<int> class_of;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (int b : classes[c]) {
      if (b >= static_cast<int>(class_of.size())) class_of.resize(static_cast<std::size_t>(b) + 1, -1);
      class_of[static_cast<std::size_t>(b)] = static_cast<int>(c);
    }
  }
  for (std::size_t i = 0; i < sigma.image.size(); ++i) {
    if (class_of[i] != class_of[static_cast<std::size_t>(sigma.image[i])]) return false;
  }
  return true;
}

long double PermutationClasses::order() const {
  long double total = 1.0L;
  for (const auto& cls : classes) {
    for (std::size_t m = 2; m <= cls.size(); ++m) total *= static_cast<long double>(m);
  }
  return total;
}

PermutationClasses allowed_block_permutations(const BlockModelSpace& model, double tol) {
  model.require_nondegenerate(tol);
  const int k = model.block_count();
  // Class key: dimension plus the unordered signature pair. Forms may always
  // be replaced by their negatives without changing the canonical tensor.
  std::map<std::pair<int, std::pair<int, int>>, std::vector<int>> grouped;
  std::vector<std::pair<int, std::pair<int, int>>> key_order;
  for (int b = 0; b < k; ++b) {
    const Signature sig = signature(model.block_form(b), tol);
    const std::pair<int, int> unordered{std::min(sig.n_plus, sig.n_minus),
                                        std::max(sig.n_plus, sig.n_minus)};
    const std::pair<int, std::pair<int, int>> key{model.block_dim(b), unordered};
    if (grouped.find(key) == grouped.end()) key_order.push_back(key);
    grouped[key].push_back(b);
  }

  PermutationClasses result;
  for (const auto& key : key_order) result.classes.push_back(grouped[key]);
  for (const auto& cls : result.classes) {
    for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
      std::vector<int> img(static_cast<std::size_t>(k));
      for (int b = 0; b < k; ++b) img[static_cast<std::size_t>(b)] = b;
      std::swap(img[static_cast<std::size_t>(cls[i])], img[static_cast<std::size_t>(cls[i + 1])]);
      result.generators.emplace_back(std::move(img));
    }
  }
  return result;
}

namespace {

// Carries the pseudo-orthonormal basis of block j onto the one of block i,
// matching signs in order when the ordered signatures agree and crossing them
// when they are reversed. Pulls the target canonical tensor back to the
// source one either way.
Matrix transfer_map(const BlockModelSpace& model, int source, int target) {
  if (source == target) {
    return Matrix::Identity(model.block_dim(target), model.block_dim(target));
  }
  const PseudoONBasis from = pseudo_orthonormalize(model.block_form(source));
  const PseudoONBasis to = pseudo_orthonormalize(model.block_form(target));
  const Signature sig_from = signature(model.block_form(source));
  const Signature sig_to = signature(model.block_form(target));
  const int d = model.block_dim(target);
  Matrix pairing = Matrix::Zero(d, d);
  if (sig_from.n_plus == sig_to.n_plus && sig_from.n_minus == sig_to.n_minus) {
    pairing = Matrix::Identity(d, d);
  } else {
    // Reversed signatures: plus vectors map to minus vectors and vice versa.
    for (int i = 0; i < sig_from.n_plus; ++i) pairing(sig_to.n_plus + i, i) = 1.0;
    for (int i = 0; i < sig_from.n_minus; ++i) pairing(i, sig_from.n_plus + i) = 1.0;
  }
  return to.vectors * pairing * from.vectors.inverse();
}

Matrix sample_unit_det_2x2(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Matrix m(2, 2);
    m << gauss(rng), gauss(rng), gauss(rng), gauss(rng);
    const double det = m.determinant();
    if (std::abs(det) < 0.2 || std::abs(det) > 5.0) continue;
    return m / std::sqrt(std::abs(det));
  }
}

// Random member of the structure group of one block's canonical tensor.
Matrix sample_block_member(const SymForm& phi, Rng& rng) {
  if (phi.dim() == 2) return sample_unit_det_2x2(rng);
  Matrix member = sample_isometry(phi, rng);
  if (signature(phi).balanced()) {
    std::bernoulli_distribution coin(0.5);
    if (coin(rng)) member = sample_para_isometry(phi) * member;
  }
  return member;
}

}  // namespace

WreathElement sample_wreath_element(const BlockModelSpace& model, Rng& rng) {
  model.require_nondegenerate();
  for (int b = 0; b < model.block_count(); ++b) {
    if (model.block_dim(b) < 2) {
      raise(ErrorCode::InvalidArgument, "structure-group sampling requires block dims >= 2");
    }
  }
  const PermutationClasses classes = allowed_block_permutations(model);
  const int k = model.block_count();
  std::vector<int> image(static_cast<std::size_t>(k));
  for (const auto& cls : classes.classes) {
    std::vector<int> targets = cls;
    std::shuffle(targets.begin(), targets.end(), rng);
    for (std::size_t i = 0; i < cls.size(); ++i) {
      image[static_cast<std::size_t>(cls[i])] = targets[i];
    }
  }
  BlockPermutation sigma(image);
  const BlockPermutation inv = sigma.inverse();

  std::vector<LinearMap> comps;
  comps.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const int source = inv.image[static_cast<std::size_t>(i)];
    comps.push_back(sample_block_member(model.block_form(i), rng) *
                    transfer_map(model, source, i));
  }
  return WreathElement(std::move(comps), std::move(sigma), model.block_dims());
}

LinearMap sample_structure_group_element(const BlockModelSpace& model, Rng& rng) {
  return wreath_to_matrix(sample_wreath_element(model, rng), model);
}

}  // namespace curvlab
