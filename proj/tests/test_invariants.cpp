#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvlab/errors.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/structure_group.hpp"
#include "helpers.hpp"

using namespace curvlab;
using namespace testutil;

namespace {

// Brute-force contraction through the LU inverse of the form.
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

}  // namespace

TEST_CASE("Ricci contraction") {
  Rng rng(12);
  SUBCASE("zero tensor") {
    const SymForm phi = random_form(2, 1, 0, rng);
    CHECK(ricci(CurvTensor::zero(3), phi).entries().cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("canonical tensors contract to a multiple of the form") {
    for (int n = 3; n <= 6; ++n) {
      std::uniform_int_distribution<int> plus(0, n);
      const int p = plus(rng);
      const SymForm phi = random_form(p, n - p, 0, rng);
      const CurvTensor t = build_canonical(phi);
      const SymForm rho = ricci(t, phi);
      CHECK((rho.entries() - (n - 1) * phi.entries()).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((rho.entries() - oracle_ricci(t, phi)).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
  SUBCASE("direct sums contract blockwise") {
    const SymForm phi1 = random_form(2, 0, 0, rng);
    const SymForm phi2 = random_form(3, 0, 0, rng);
    const BlockModelSpace model({phi1, phi2});
    const CurvTensor t = model.direct_sum_tensor();
    const SymForm phi = model.direct_sum_form();
    const SymForm rho = ricci(t, phi);
    CHECK((rho.entries().topLeftCorner(2, 2) - 1.0 * phi1.entries()).cwiseAbs().maxCoeff() <=
          1e-9);
    CHECK((rho.entries().bottomRightCorner(3, 3) - 2.0 * phi2.entries()).cwiseAbs().maxCoeff() <=
          1e-9);
    CHECK(rho.entries().topRightCorner(2, 3).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((rho.entries() - oracle_ricci(t, phi)).cwiseAbs().maxCoeff() <= 1e-9);
  }
  SUBCASE("degenerate forms are rejected") {
    CHECK_THROWS_AS(ricci(CurvTensor::zero(2), SymForm::diagonal(vec({1, 0}))), Error);
  }
}

TEST_CASE("scalar curvature") {
  Rng rng(23);
  SUBCASE("zero tensor") {
    CHECK(scalar_curvature(CurvTensor::zero(3), SymForm::identity(3)) == 0.0);
  }
  SUBCASE("canonical value is dimension-only") {
    for (int n = 3; n <= 6; ++n) {
      std::uniform_int_distribution<int> plus(0, n);
      const int p = plus(rng);
      const SymForm phi = random_form(p, n - p, 0, rng);
      const double tau = scalar_curvature(build_canonical(phi), phi);
      CHECK(std::abs(tau - n * (n - 1)) <= 1e-9);
    }
  }
  SUBCASE("additivity over blocks") {
    const BlockModelSpace model(
        {random_form(2, 0, 0, rng), random_form(0, 3, 0, rng), random_form(2, 2, 0, rng)});
    const double tau = scalar_curvature(model.direct_sum_tensor(), model.direct_sum_form());
    CHECK(std::abs(tau - (2 * 1 + 3 * 2 + 4 * 3)) <= 1e-9);
    CHECK(std::abs(tau - oracle_scalar(model.direct_sum_tensor(), model.direct_sum_form())) <=
          1e-9);
  }
  SUBCASE("independent of the pseudo-orthonormal basis") {
    const SymForm phi = random_form(2, 2, 0, rng);
    const CurvTensor t = build_canonical(phi);
    const double tau = scalar_curvature(t, phi);
    // Recompute on a second basis, obtained from an isometry of the form.
    const PseudoONBasis basis = pseudo_orthonormalize(phi);
    const Matrix moved = sample_isometry(phi, rng) * basis.vectors;
    double tau2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        tau2 += basis.signs[static_cast<std::size_t>(i)] * basis.signs[static_cast<std::size_t>(j)] *
                t.evaluate(moved.col(i), moved.col(j), moved.col(j), moved.col(i));
      }
    }
    CHECK(tau2 == doctest::Approx(tau).epsilon(1e-9));
  }
}

TEST_CASE("sectional curvature") {
  Rng rng(34);
  SUBCASE("positive definite canonical tensors have constant value one") {
    const SymForm phi = random_form(4, 0, 0, rng);
    const CurvTensor t = build_canonical(phi);
    for (int trial = 0; trial < 10; ++trial) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      Vector x(4), y(4);
      for (int i = 0; i < 4; ++i) {
        x[i] = gauss(rng);
        y[i] = gauss(rng);
      }
      CHECK(sectional_curvature(t, phi, x, y) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("scaling the tensor scales the value") {
    const SymForm phi = SymForm::identity(2);
    const SymForm scaled_phi = phi.scaled(std::sqrt(3.0));
    const CurvTensor t = build_canonical(scaled_phi);  // equals 3 R_phi
    CHECK(sectional_curvature(t, phi, vec({1, 0}), vec({0, 1})) == doctest::Approx(3.0));
  }
  SUBCASE("two-dimensional blocks do not depend on the spanning pair") {
    const SymForm phi = random_form(2, 0, 0, rng);
    const CurvTensor t = build_canonical(random_form(2, 0, 0, rng));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector x(2), y(2);
    x << 1, 0;
    y << 0, 1;
    const double reference = sectional_curvature(t, phi, x, y);
    for (int trial = 0; trial < 10; ++trial) {
      Vector u(2), v(2);
      u << gauss(rng), gauss(rng);
      v << gauss(rng), gauss(rng);
      if (std::abs(u[0] * v[1] - u[1] * v[0]) < 0.1) continue;
      CHECK(sectional_curvature(t, phi, u, v) == doctest::Approx(reference).epsilon(1e-9));
    }
  }
  SUBCASE("degenerate planes are rejected") {
    const SymForm phi = SymForm::identity(3);
    const CurvTensor t = build_canonical(phi);
    CHECK_THROWS_AS(sectional_curvature(t, phi, vec({1, 0, 0}), vec({1, 0, 0})), Error);
  }
}

TEST_CASE("symmetric combination") {
  SUBCASE("singleton") {
    const InvariantProfile p = symmetric_combine({3.5});
    CHECK(p.elementary == std::vector<double>{3.5});
    CHECK(p.power_sums == std::vector<double>{3.5});
  }
  SUBCASE("hand-expanded triple") {
    const InvariantProfile p = symmetric_combine({1.0, 2.0, 3.0});
    CHECK(p.elementary == std::vector<double>{6.0, 11.0, 6.0});
    CHECK(p.power_sums == std::vector<double>{6.0, 14.0, 36.0});
    CHECK(p.sorted_tuple == std::vector<double>{1.0, 2.0, 3.0});
  }
  SUBCASE("bitwise permutation invariance") {
    Rng rng(45);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> values(6);
    for (double& v : values) v = gauss(rng);
    const InvariantProfile base = symmetric_combine(values);
    std::vector<double> shuffled = values;
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const InvariantProfile moved = symmetric_combine(shuffled);
      CHECK(moved.elementary == base.elementary);
      CHECK(moved.power_sums == base.power_sums);
      CHECK(moved.sorted_tuple == base.sorted_tuple);
    }
  }
  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(symmetric_combine({}), Error);
  }
}

TEST_CASE("invariance harness") {
  Rng rng(56);
  const BlockModelSpace model({SymForm::identity(2).scaled(std::sqrt(2.0)),
                               SymForm::identity(2).scaled(std::sqrt(5.0))});
  const CurvTensor t = model.direct_sum_tensor();
  const SymForm phi = model.direct_sum_form();

  auto block_kappas = [&](const Matrix& basis) {
    std::vector<double> kappas;
    for (int b = 0; b < model.block_count(); ++b) {
      const Vector x = basis.col(model.block_offset(b));
      const Vector y = basis.col(model.block_offset(b) + 1);
      const double denom = x.dot(x) * y.dot(y) - x.dot(y) * x.dot(y);
      kappas.push_back(t.evaluate(x, y, y, x) / denom);
    }
    return kappas;
  };

  SUBCASE("full contractions pass on every model") {
    // Scalar curvature recomputed from the transformed basis through the
    // inverse Gram matrix; invariant for arbitrary members.
    const BasisValueFn tau_fn = [&](const Matrix& basis) {
      const int n = model.total_dim();
      const Matrix gram_inv = gram_matrix(phi, basis).inverse();
      double tau = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
              tau += gram_inv(i, k) * gram_inv(j, l) *
                     t.evaluate(basis.col(i), basis.col(j), basis.col(l), basis.col(k));
            }
          }
        }
      }
      return std::vector<double>{tau};
    };
    const InvarianceReport report = check_invariance(tau_fn, model, 50, 1e-8, rng);
    CHECK(report.pass);
    CHECK(report.base_value[0] == doctest::Approx(4.0).epsilon(1e-9));
  }
  SUBCASE("elementary symmetric functions of the block values pass") {
    const BasisValueFn fn = [&](const Matrix& basis) {
      return symmetric_combine(block_kappas(basis)).elementary;
    };
    const InvarianceReport report = check_invariance(fn, model, 100, 1e-8, rng);
    CHECK(report.pass);
    REQUIRE(report.base_value.size() == 2);
    CHECK(report.base_value[0] == doctest::Approx(7.0));
    CHECK(report.base_value[1] == doctest::Approx(10.0));
  }
  SUBCASE("the ordered difference is a negative control") {
    const BasisValueFn fn = [&](const Matrix& basis) {
      const std::vector<double> kappas = block_kappas(basis);
      return std::vector<double>{kappas[0] - kappas[1]};
    };
    const InvarianceReport report = check_invariance(fn, model, 100, 1e-8, rng);
    CHECK_FALSE(report.pass);
    CHECK(report.max_deviation == doctest::Approx(6.0).epsilon(1e-6));
  }
}

TEST_CASE("covariant norm") {
  Rng rng(67);
  SUBCASE("zero tensor") {
    CHECK(covariant_norm(SymForm::identity(3), Tensor5::zero(3)) == 0.0);
  }
  SUBCASE("single entry against the identity form") {
    Tensor5 a5 = Tensor5::zero(3);
    a5.at(0, 1, 2, 0, 1) = 2.5;
    CHECK(covariant_norm(SymForm::identity(3), a5) == doctest::Approx(6.25));
  }
  SUBCASE("independent of the pseudo-orthonormal basis") {
    const SymForm phi = random_form(2, 1, 0, rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> data(243);
    for (double& v : data) v = gauss(rng);
    const Tensor5 a5(3, data);
    const double lib = covariant_norm(phi, a5);

    const PseudoONBasis basis = pseudo_orthonormalize(phi);
    const double direct = covariant_norm_in_basis(a5, basis.vectors, basis.signs);
    CHECK(lib == doctest::Approx(direct).epsilon(1e-8));

    // A second basis moved by an isometry of the form.
    const Matrix moved = sample_isometry(phi, rng) * basis.vectors;
    const double other = covariant_norm_in_basis(a5, moved, basis.signs);
    CHECK(other == doctest::Approx(lib).epsilon(1e-8));
  }
  SUBCASE("negating the form changes nothing, bitwise") {
    const SymForm phi = random_form(1, 2, 0, rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> data(243);
    for (double& v : data) v = gauss(rng);
    const Tensor5 a5(3, data);
    CHECK(covariant_norm(phi, a5) == covariant_norm(phi.negated(), a5));
  }
  SUBCASE("degenerate forms are rejected") {
    CHECK_THROWS_AS(covariant_norm(SymForm::diagonal(vec({1, 0, 1})), Tensor5::zero(3)), Error);
  }
}

TEST_CASE("per-block sectional curvatures of a model") {
  const BlockModelSpace model({SymForm::identity(2).scaled(std::sqrt(2.0)),
                               SymForm::identity(3),
                               SymForm::identity(2).scaled(std::sqrt(5.0))});
  const std::vector<double> kappas = block_sectional_curvatures(model);
  REQUIRE(kappas.size() == 2);  // only the two-dimensional blocks
  CHECK(kappas[0] == doctest::Approx(2.0));
  CHECK(kappas[1] == doctest::Approx(5.0));
  // Oracle: the value is the determinant of the block form.
  CHECK(kappas[0] ==
        doctest::Approx(SymForm::identity(2).scaled(std::sqrt(2.0)).entries().determinant()));
}
