#include "curvlab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "curvlab/block_model.hpp"
#include "curvlab/curv_tensor.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/mf_geometry.hpp"
#include "curvlab/polynomial.hpp"
#include "curvlab/skew_tsankov.hpp"
#include "curvlab/structure_group.hpp"
#include "curvlab/sym_form.hpp"

namespace curvlab::selftest {

namespace {

int scaled(int full, double scale, int minimum) {
  return std::max(minimum, static_cast<int>(std::lround(full * scale)));
}

Matrix random_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
  }
  const Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  return q;
}

// Random symmetric form with the requested numbers of positive, negative and
// zero eigenvalues, all nonzero magnitudes in [0.5, 2].
SymForm random_form(int n_plus, int n_minus, int n_zero, Rng& rng) {
  const int n = n_plus + n_minus + n_zero;
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    if (i < n_plus) {
      d[i] = mag(rng);
    } else if (i < n_plus + n_minus) {
      d[i] = -mag(rng);
    } else {
      d[i] = 0.0;
    }
  }
  const Matrix q = random_orthogonal(n, rng);
  return SymForm(symmetric_part(q * d.asDiagonal() * q.transpose()));
}

SymForm random_nondegenerate_form(int dim, Rng& rng) {
  std::uniform_int_distribution<int> plus(0, dim);
  const int n_plus = plus(rng);
  return random_form(n_plus, dim - n_plus, 0, rng);
}

Matrix random_invertible(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    }
    if (std::abs(m.determinant()) > 1e-3) return m;
  }
}

Matrix random_unit_det(int n, Rng& rng) {
  Matrix m = random_invertible(n, rng);
  return m / std::pow(std::abs(m.determinant()), 1.0 / n);
}

// Largest principal angle between the column spans of two orthonormal bases,
// computed through the sine (stable near zero).
double max_principal_angle(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.cols() == 0) return 0.0;
  const Matrix residual = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Matrix> svd(residual);
  const double s = std::min(1.0, svd.singularValues()[0]);
  return std::asin(s);
}

// Null space of a form straight from its eigendecomposition; independent of
// the tensor-flattening SVD used by kernel().
Matrix form_nullspace(const SymForm& phi) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(phi.entries());
  const Vector values = solver.eigenvalues();
  const double threshold = 1e-10 * values.cwiseAbs().maxCoeff();
  std::vector<int> null_idx;
  for (int i = 0; i < phi.dim(); ++i) {
    if (std::abs(values[i]) <= threshold) null_idx.push_back(i);
  }
  Matrix z(phi.dim(), static_cast<int>(null_idx.size()));
  for (std::size_t c = 0; c < null_idx.size(); ++c) {
    z.col(static_cast<int>(c)) = solver.eigenvectors().col(null_idx[c]);
  }
  return z;
}

// Brute-force Ricci contraction through the LU inverse of the form, a
// different route than the library's pseudo-orthonormal basis sum.
Matrix oracle_ricci(const CurvTensor& t, const SymForm& phi) {
  const int n = t.dim();
  const Matrix inv = phi.entries().inverse();
  Matrix rho(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) acc += inv(i, j) * t(a, i, j, b);
      }
      rho(a, b) = acc;
    }
  }
  return rho;
}

double oracle_scalar(const CurvTensor& t, const SymForm& phi) {
  const int n = t.dim();
  const Matrix inv = phi.entries().inverse();
  double tau = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) tau += inv(i, k) * inv(j, l) * t(i, j, l, k);
      }
    }
  }
  return tau;
}

std::string pass_detail(double measured, const char* what) {
  std::ostringstream out;
  out << what << " " << measured;
  return out.str();
}

// ---- criterion 1: curvature identities of canonical builds ----

CriterionResult criterion_identities(const Config& config) {
  Rng rng(config.seed ^ 0x101ULL);
  const int trials = scaled(200, config.scale, 20);
  std::uniform_int_distribution<int> dim_dist(2, 8);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = dim_dist(rng);
    std::uniform_int_distribution<int> plus(0, n);
    std::uniform_int_distribution<int> zero(0, n / 2);
    const int n_zero = zero(rng);
    const int n_plus = std::min(plus(rng), n - n_zero);
    const SymForm phi = random_form(n_plus, n - n_zero - n_plus, n_zero, rng);
    const CurvTensor t = build_canonical(phi);
    const ValidationReport report = validate_curvature(t, 1e-12);
    const double rel = report.scale > 0 ? report.max_residual() / report.scale : 0.0;
    worst = std::max(worst, rel);
    if (!report.pass) {
      return {1, "curvature identities", false, pass_detail(rel, "relative residual")};
    }
  }
  return {1, "curvature identities", true, pass_detail(worst, "max relative residual")};
}

// ---- criterion 2: kernel of the canonical tensor equals the form kernel ----

CriterionResult criterion_kernel_law(const Config& config) {
  Rng rng(config.seed ^ 0x202ULL);
  const int trials = scaled(50, config.scale, 10);
  std::uniform_int_distribution<int> dim_dist(3, 8);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = dim_dist(rng);
    std::uniform_int_distribution<int> rank_dist(2, n - 1);
    const int rank = rank_dist(rng);
    std::uniform_int_distribution<int> plus(0, rank);
    const int n_plus = plus(rng);
    const SymForm phi = random_form(n_plus, rank - n_plus, n - rank, rng);
    const Matrix lib_kernel = kernel(build_canonical(phi), config.tol_kernel);
    const Matrix oracle_null = form_nullspace(phi);
    const double angle = max_principal_angle(oracle_null, lib_kernel);
    worst = std::max(worst, angle);
    if (!(angle < 1e-8)) {
      return {2, "kernel law", false, pass_detail(angle, "principal angle")};
    }
  }
  return {2, "kernel law", true, pass_detail(worst, "max principal angle")};
}

// ---- criterion 3: membership classification totality ----

CriterionResult criterion_classification(const Config& config) {
  Rng rng(config.seed ^ 0x303ULL);
  const double tol = config.tol_membership;

  const int trials = scaled(500, config.scale, 50);
  std::uniform_int_distribution<int> dim_dist(3, 8);
  std::uniform_int_distribution<int> kind_dist(0, 2);
  for (int trial = 0; trial < trials; ++trial) {
    const int n = dim_dist(rng);
    const SymForm phi = random_nondegenerate_form(n, rng);
    const Signature sig = signature(phi);
    Matrix a;
    switch (kind_dist(rng)) {
      case 0: a = sample_isometry(phi, rng); break;
      case 1:
        a = sig.balanced() ? Matrix(sample_para_isometry(phi) * sample_isometry(phi, rng))
                           : sample_isometry(phi, rng);
        break;
      default: a = random_invertible(n, rng); break;
    }
    const MembershipResult member = is_member(a, build_canonical(phi), tol);
    const MembershipVerdict verdict = classify_canonical_member(a, phi, tol);
    if (member.member != verdict.is_member()) {
      std::ostringstream detail;
      detail << "disagreement at trial " << trial << ": is_member=" << member.member
             << " verdict=" << verdict_name(verdict.verdict);
      return {3, "membership classification totality", false, detail.str()};
    }
  }

  const int det_trials = scaled(100, config.scale, 20);
  std::uniform_int_distribution<int> plus2(0, 2);
  std::uniform_real_distribution<double> det_target(1.1, 3.0);
  for (int trial = 0; trial < det_trials; ++trial) {
    const int n_plus = plus2(rng);
    const SymForm phi = random_form(n_plus, 2 - n_plus, 0, rng);
    const CurvTensor t = build_canonical(phi);

    const Matrix unit = random_unit_det(2, rng);
    const MembershipResult unit_member = is_member(unit, t, tol);
    const MembershipVerdict unit_verdict = classify_canonical_member(unit, phi, tol);
    if (!unit_member.member || unit_verdict.verdict != Verdict::UnimodularRank2) {
      return {3, "membership classification totality", false,
              "unit-determinant map rejected in dimension 2"};
    }

    const Matrix stretched = std::sqrt(det_target(rng)) * random_unit_det(2, rng);
    const MembershipResult bad_member = is_member(stretched, t, tol);
    const MembershipVerdict bad_verdict = classify_canonical_member(stretched, phi, tol);
    if (bad_member.member || bad_verdict.is_member()) {
      return {3, "membership classification totality", false,
              "non-unit determinant map accepted in dimension 2"};
    }
  }
  return {3, "membership classification totality", true,
          pass_detail(trials + 2 * det_trials, "agreeing trials")};
}

// ---- criterion 4: planted permutations are recovered exactly ----

BlockModelSpace random_model(int max_blocks, Rng& rng) {
  std::uniform_int_distribution<int> count_dist(1, max_blocks);
  const int k = count_dist(rng);
  std::uniform_int_distribution<int> dim_dist(2, 4);
  std::bernoulli_distribution reuse(0.5);
  std::vector<Signature> sigs;
  std::vector<SymForm> forms;
  for (int b = 0; b < k; ++b) {
    Signature sig;
    if (b > 0 && reuse(rng)) {
      std::uniform_int_distribution<int> pick(0, b - 1);
      sig = sigs[static_cast<std::size_t>(pick(rng))];
      std::bernoulli_distribution flip(0.5);
      if (flip(rng)) std::swap(sig.n_plus, sig.n_minus);
    } else {
      const int dim = dim_dist(rng);
      std::uniform_int_distribution<int> plus(0, dim);
      sig.n_plus = plus(rng);
      sig.n_minus = dim - sig.n_plus;
    }
    sigs.push_back(sig);
    forms.push_back(random_form(sig.n_plus, sig.n_minus, 0, rng));
  }
  return BlockModelSpace(std::move(forms));
}

CriterionResult criterion_permutation_roundtrip(const Config& config) {
  Rng rng(config.seed ^ 0x404ULL);
  const double tol = config.tol_membership;
  const int trials = scaled(500, config.scale, 50);
  for (int trial = 0; trial < trials; ++trial) {
    const BlockModelSpace model = random_model(5, rng);
    const WreathElement planted = sample_wreath_element(model, rng);
    const LinearMap a = wreath_to_matrix(planted, model);
    const BlockPermutation recovered = extract_permutation(a, model, tol);
    if (!(recovered == planted.sigma)) {
      std::ostringstream detail;
      detail << "planted " << planted.sigma.cycle_notation() << " recovered "
             << recovered.cycle_notation();
      return {4, "permutation round-trip", false, detail.str()};
    }
  }

  // Three two-dimensional blocks cycled 1 -> 2 -> 3 -> 1.
  const BlockModelSpace cycle_model(
      {SymForm::identity(2), SymForm::identity(2), SymForm::identity(2)});
  std::vector<LinearMap> comps;
  for (int i = 0; i < 3; ++i) comps.push_back(random_orthogonal(2, rng));
  const WreathElement cycled(std::move(comps), BlockPermutation({1, 2, 0}),
                             cycle_model.block_dims());
  const BlockPermutation sigma =
      extract_permutation(wreath_to_matrix(cycled, cycle_model), cycle_model, tol);
  if (sigma.cycle_notation() != "(1 2 3)") {
    return {4, "permutation round-trip", false,
            "three-block cycle pattern recovered as " + sigma.cycle_notation()};
  }
  return {4, "permutation round-trip", true, pass_detail(trials, "recovered plants")};
}

// ---- criterion 5: dimension and signature obstructions ----

CriterionResult criterion_obstructions(const Config& config) {
  Rng rng(config.seed ^ 0x505ULL);
  const double tol = config.tol_membership;
  const int trials = scaled(200, config.scale, 20);

  // Three mutually incompatible blocks: only the identity permutation is
  // admissible and every member is block diagonal.
  const BlockModelSpace rigid(
      {random_form(2, 0, 0, rng), random_form(1, 1, 0, rng), random_form(3, 0, 0, rng)});
  double leakage = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const LinearMap a = sample_structure_group_element(rigid, rng);
    const BlockPermutation sigma = extract_permutation(a, rigid, tol);
    if (!sigma.is_identity()) {
      return {5, "class obstructions", false, "cross-class permutation " + sigma.cycle_notation()};
    }
    for (int i = 0; i < rigid.total_dim(); ++i) {
      for (int j = 0; j < rigid.total_dim(); ++j) {
        if (rigid.block_of(i) != rigid.block_of(j)) {
          leakage = std::max(leakage, std::abs(a(i, j)));
        }
      }
    }
  }
  if (!(leakage <= 1e-9)) {
    return {5, "class obstructions", false, pass_detail(leakage, "cross-class leakage")};
  }

  // Sign-reversed forms of equal dimension are swappable.
  const BlockModelSpace swappable({random_form(2, 0, 0, rng), random_form(0, 2, 0, rng)});
  bool swapped = false;
  for (int trial = 0; trial < trials && !swapped; ++trial) {
    const WreathElement w = sample_wreath_element(swappable, rng);
    swapped = !w.sigma.is_identity();
  }
  if (!swapped) {
    return {5, "class obstructions", false, "sign-reversed blocks never swapped"};
  }
  return {5, "class obstructions", true, pass_detail(leakage, "max cross-class leakage")};
}

// ---- criterion 6: invariant classes make members block diagonal ----

CriterionResult criterion_direct_product_split(const Config& config) {
  Rng rng(config.seed ^ 0x606ULL);
  const int trials = scaled(200, config.scale, 20);
  const BlockModelSpace model(
      {random_form(2, 0, 0, rng), random_form(2, 0, 0, rng), random_form(3, 0, 0, rng)});
  const int split = 4;  // class {block1, block2} occupies the first 4 coordinates
  double leakage = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const LinearMap a = sample_structure_group_element(model, rng);
    leakage = std::max(leakage, a.topRightCorner(split, model.total_dim() - split)
                                    .cwiseAbs()
                                    .maxCoeff());
    leakage = std::max(leakage, a.bottomLeftCorner(model.total_dim() - split, split)
                                    .cwiseAbs()
                                    .maxCoeff());
  }
  const bool pass = leakage <= 1e-9;
  return {6, "invariant-subspace split", pass, pass_detail(leakage, "max cross-class entry")};
}

// ---- criterion 7: Ricci and scalar curvature against the oracle ----

CriterionResult criterion_contraction_oracle(const Config& config) {
  Rng rng(config.seed ^ 0x707ULL);
  const int per_dim = scaled(5, config.scale, 1);
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < per_dim; ++trial) {
      const SymForm phi = random_nondegenerate_form(n, rng);
      const CurvTensor t = build_canonical(phi);
      const SymForm rho = ricci(t, phi);
      const double tau = scalar_curvature(t, phi);

      const double identity_gap =
          (rho.entries() - (n - 1) * phi.entries()).cwiseAbs().maxCoeff();
      const double tau_gap = std::abs(tau - n * (n - 1));
      const double oracle_rho_gap = (rho.entries() - oracle_ricci(t, phi)).cwiseAbs().maxCoeff();
      const double oracle_tau_gap = std::abs(tau - oracle_scalar(t, phi));
      worst = std::max({worst, identity_gap, tau_gap, oracle_rho_gap, oracle_tau_gap});
      if (worst > 1e-9) {
        return {7, "contraction oracle", false, pass_detail(worst, "max gap")};
      }
    }
  }
  return {7, "contraction oracle", true, pass_detail(worst, "max gap")};
}

// ---- criterion 8: symmetric functions of block invariants ----

std::vector<double> euclidean_block_kappas(const BlockModelSpace& model, const CurvTensor& t,
                                           const Matrix& basis) {
  std::vector<double> kappas;
  for (int b = 0; b < model.block_count(); ++b) {
    if (model.block_dim(b) != 2) continue;
    const Vector x = basis.col(model.block_offset(b));
    const Vector y = basis.col(model.block_offset(b) + 1);
    const double denom = x.dot(x) * y.dot(y) - x.dot(y) * x.dot(y);
    kappas.push_back(t.evaluate(x, y, y, x) / denom);
  }
  return kappas;
}

CriterionResult criterion_symmetric_functions(const Config& config) {
  Rng rng(config.seed ^ 0x808ULL);
  const int samples = scaled(100, config.scale, 20);

  const BlockModelSpace model({SymForm::identity(2).scaled(std::sqrt(2.0)),
                               SymForm::identity(2).scaled(std::sqrt(5.0))});
  const CurvTensor t = model.direct_sum_tensor();

  const BasisValueFn elementary_fn = [&](const Matrix& basis) {
    const InvariantProfile profile =
        symmetric_combine(euclidean_block_kappas(model, t, basis));
    return profile.elementary;
  };
  InvarianceReport report;
  {
    Rng harness_rng(config.seed ^ 0x809ULL);
    report = check_invariance(elementary_fn, model, samples, 1e-8, harness_rng);
  }
  const std::vector<double> base = report.base_value;
  if (base.size() != 2 || std::abs(base[0] - 7.0) > 1e-9 || std::abs(base[1] - 10.0) > 1e-9) {
    return {8, "symmetric functions of block invariants", false, "base profile is not (7, 10)"};
  }
  if (!report.pass || report.max_deviation > 1e-8) {
    return {8, "symmetric functions of block invariants", false,
            pass_detail(report.max_deviation, "elementary-function deviation")};
  }

  // Negative control: the ordered difference changes sign under a swap.
  LinearMap swap_element;
  bool found_swap = false;
  for (int trial = 0; trial < 200 && !found_swap; ++trial) {
    const WreathElement w = sample_wreath_element(model, rng);
    if (!w.sigma.is_identity()) {
      swap_element = wreath_to_matrix(w, model);
      found_swap = true;
    }
  }
  if (!found_swap) {
    return {8, "symmetric functions of block invariants", false, "no swap element sampled"};
  }
  auto ordered_difference = [&](const Matrix& basis) {
    const std::vector<double> kappas = euclidean_block_kappas(model, t, basis);
    return kappas[0] - kappas[1];
  };
  const double base_diff = ordered_difference(Matrix::Identity(4, 4));
  const double swapped_diff = ordered_difference(swap_element);
  if (!(std::abs(base_diff + 3.0) < 1e-8 && std::abs(swapped_diff - 3.0) < 1e-8)) {
    std::ostringstream detail;
    detail << "ordered difference " << base_diff << " -> " << swapped_diff;
    return {8, "symmetric functions of block invariants", false, detail.str()};
  }
  return {8, "symmetric functions of block invariants", true,
          pass_detail(report.max_deviation, "elementary-function deviation")};
}

// ---- criterion 9: the polynomial manifold family ----

Tensor5 finite_difference_nabla(const MfManifold& m, const Vector& point, double step) {
  const int p = m.p();
  Tensor5 out = Tensor5::zero(p);
  for (int n = 0; n < p; ++n) {
    Vector forward = point;
    Vector backward = point;
    forward[n] += step;
    backward[n] -= step;
    const CurvTensor rf = mf_curvature(m, forward);
    const CurvTensor rb = mf_curvature(m, backward);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        for (int k = 0; k < p; ++k) {
          for (int l = 0; l < p; ++l) {
            out.at(i, j, k, l, n) = (rf(i, j, k, l) - rb(i, j, k, l)) / (2 * step);
          }
        }
      }
    }
  }
  return out;
}

PolyFunction quadratic_with_signs(int p, int n_minus) {
  PolyFunction f(p);
  for (int i = 0; i < p; ++i) {
    PolyFunction::Exponents exps(static_cast<std::size_t>(p), 0);
    exps[static_cast<std::size_t>(i)] = 2;
    f.add_term(exps, i < n_minus ? -0.5 : 0.5);
  }
  return f;
}

CriterionResult criterion_manifold_family(const Config& config) {
  Rng rng(config.seed ^ 0x909ULL);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const int points = scaled(10, config.scale, 5);

  // Symmetric case: one negative square, derivative tensor vanishes.
  const MfManifold symmetric(quadratic_with_signs(3, 1));
  double worst_nabla = 0.0;
  double worst_alpha = 0.0;
  double worst_tau = 0.0;
  for (int trial = 0; trial < points; ++trial) {
    Vector pt(3);
    for (int i = 0; i < 3; ++i) pt[i] = coord(rng);
    worst_nabla = std::max(worst_nabla, mf_nabla_r(symmetric, pt).max_abs());
    worst_alpha = std::max(worst_alpha, std::abs(mf_alpha(symmetric, pt)));
    worst_tau = std::max(worst_tau, std::abs(mf_scalar_curvature(symmetric, pt)));
  }
  if (!(worst_nabla <= 1e-10 && worst_alpha <= 1e-10)) {
    return {9, "polynomial manifold family", false,
            pass_detail(std::max(worst_nabla, worst_alpha), "quadratic-case residual")};
  }

  // Cubic perturbation: the invariant separates points.
  PolyFunction cubic = quadratic_with_signs(3, 0);
  cubic.add_term({3, 0, 0}, 1.0);
  const MfManifold bumped(std::move(cubic));
  Vector origin = Vector::Zero(3);
  Vector shifted = Vector::Zero(3);
  shifted[0] = 1.0;
  const double alpha0 = mf_alpha(bumped, origin);
  const double alpha1 = mf_alpha(bumped, shifted);
  if (!(std::abs(alpha0 - alpha1) > 1e-3)) {
    return {9, "polynomial manifold family", false,
            pass_detail(std::abs(alpha0 - alpha1), "invariant separation")};
  }

  // Exact derivative against central differences.
  double fd_gap = 0.0;
  for (int trial = 0; trial < std::max(2, points / 3); ++trial) {
    Vector pt(3);
    for (int i = 0; i < 3; ++i) pt[i] = coord(rng);
    const Tensor5 exact = mf_nabla_r(bumped, pt);
    const Tensor5 approx = finite_difference_nabla(bumped, pt, 1e-4);
    double gap = 0.0;
    for (std::size_t i = 0; i < exact.components().size(); ++i) {
      gap = std::max(gap, std::abs(exact.components()[i] - approx.components()[i]));
    }
    fd_gap = std::max(fd_gap, gap / exact.max_abs());
    worst_tau = std::max(worst_tau, std::abs(mf_scalar_curvature(bumped, pt)));
  }
  if (!(fd_gap <= 1e-6)) {
    return {9, "polynomial manifold family", false, pass_detail(fd_gap, "finite-difference gap")};
  }
  if (!(worst_tau <= 1e-9)) {
    return {9, "polynomial manifold family", false, pass_detail(worst_tau, "ambient tau")};
  }
  std::ostringstream detail;
  detail << "fd gap " << fd_gap << ", ambient tau " << worst_tau;
  return {9, "polynomial manifold family", true, detail.str()};
}

// ---- criterion 10: commuting-operator decomposition ----

CriterionResult criterion_skew_tsankov(const Config& config) {
  Rng rng(config.seed ^ 0xA0AULL);

  const CurvTensor block1 = build_canonical(SymForm::identity(2).scaled(std::sqrt(2.0)));
  const CurvTensor block2 = build_canonical(SymForm::identity(2).scaled(std::sqrt(5.0)));
  const CurvTensor t = direct_sum({block1, block2, CurvTensor::zero(1)});
  const SymForm metric = SymForm::identity(5);
  if (!skew_tsankov_check(metric, t)) {
    return {10, "commuting-operator decomposition", false, "constructed model fails the check"};
  }

  const Matrix q = random_orthogonal(5, rng);
  const CurvTensor conjugated = pullback(q, t);
  const SkewTsankovDecomposition decomposition =
      skew_tsankov_decompose(metric, conjugated, 1e-8, rng);
  if (decomposition.kernel.cols() != 1 || decomposition.kappas.size() != 2) {
    return {10, "commuting-operator decomposition", false, "wrong kernel or block count"};
  }
  std::vector<double> kappas = decomposition.kappas;
  std::sort(kappas.begin(), kappas.end());
  const double gap = std::max(std::abs(kappas[0] - 2.0), std::abs(kappas[1] - 5.0));
  if (!(gap <= 1e-8)) {
    return {10, "commuting-operator decomposition", false, pass_detail(gap, "kappa gap")};
  }

  if (skew_tsankov_check(SymForm::identity(4), build_canonical(SymForm::identity(4)))) {
    return {10, "commuting-operator decomposition", false,
            "four-dimensional canonical tensor passed the commutation check"};
  }
  return {10, "commuting-operator decomposition", true, pass_detail(gap, "kappa gap")};
}

}  // namespace

std::vector<CriterionResult> run_all(const Config& config) {
  using Criterion = CriterionResult (*)(const Config&);
  const Criterion criteria[] = {
      criterion_identities,       criterion_kernel_law,
      criterion_classification,   criterion_permutation_roundtrip,
      criterion_obstructions,     criterion_direct_product_split,
      criterion_contraction_oracle, criterion_symmetric_functions,
      criterion_manifold_family,  criterion_skew_tsankov,
  };
  std::vector<CriterionResult> results;
  int id = 0;
  for (const Criterion criterion : criteria) {
    ++id;
    try {
      results.push_back(criterion(config));
    } catch (const std::exception& e) {
      results.push_back({id, "criterion aborted", false, e.what()});
    }
  }
  return results;
}

std::string format_report(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const CriterionResult& result : results) {
    out << (result.pass ? "[PASS]" : "[FAIL]") << " criterion " << result.id << ": "
        << result.name << " (" << result.detail << ")\n";
  }
  return out.str();
}

int count_failures(const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const CriterionResult& result : results) {
    if (!result.pass) ++failures;
  }
  return failures;
}

}  // namespace curvlab::selftest
