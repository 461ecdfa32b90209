#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "curvlab/curvlab.h"

namespace {

std::vector<double> identity_entries(int n) {
  std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1.0;
  return e;
}

struct FormHandle {
  curv_form* ptr = nullptr;
  ~FormHandle() { curv_form_free(ptr); }
};
struct TensorHandle {
  curv_tensor* ptr = nullptr;
  ~TensorHandle() { curv_tensor_free(ptr); }
};
struct ModelHandle {
  curv_model* ptr = nullptr;
  ~ModelHandle() { curv_model_free(ptr); }
};
struct PolyHandle {
  curv_poly* ptr = nullptr;
  ~PolyHandle() { curv_poly_free(ptr); }
};

}  // namespace

TEST_CASE("form creation and signature") {
  const std::vector<double> entries{1, 0, 0, 0, 1, 0, 0, 0, -1};
  FormHandle form;
  REQUIRE(curv_form_create(3, entries.data(), &form.ptr) == CURV_OK);
  CHECK(curv_form_dim(form.ptr) == 3);

  int np = 0, nm = 0, nz = 0;
  REQUIRE(curv_form_signature(form.ptr, 1e-10, &np, &nm, &nz) == CURV_OK);
  CHECK(np == 2);
  CHECK(nm == 1);
  CHECK(nz == 0);

  double eigs[3];
  REQUIRE(curv_form_eigenvalues(form.ptr, eigs) == CURV_OK);
  CHECK(eigs[0] == doctest::Approx(-1.0));
  CHECK(eigs[2] == doctest::Approx(1.0));
}

TEST_CASE("asymmetric input is reported") {
  const std::vector<double> entries{1, 2, 3, 4};
  curv_form* form = nullptr;
  CHECK(curv_form_create(2, entries.data(), &form) == CURV_ERR_INVALID_ARGUMENT);
  CHECK(form == nullptr);
  CHECK(std::strlen(curv_last_error()) > 0);
}

TEST_CASE("canonical build, validation, kernel") {
  const std::vector<double> entries{1, 0, 0, 0, 1, 0, 0, 0, 0};
  FormHandle form;
  REQUIRE(curv_form_create(3, entries.data(), &form.ptr) == CURV_OK);

  TensorHandle tensor;
  REQUIRE(curv_tensor_build_canonical(form.ptr, &tensor.ptr) == CURV_OK);
  CHECK(curv_tensor_dim(tensor.ptr) == 3);

  std::vector<double> components(81);
  REQUIRE(curv_tensor_components(tensor.ptr, components.data()) == CURV_OK);
  double antisym = -1, pair = -1, bianchi = -1;
  int pass = 0;
  REQUIRE(curv_tensor_validate(3, components.data(), 1e-12, &antisym, &pair, &bianchi, &pass) ==
          CURV_OK);
  CHECK(pass == 1);

  std::vector<double> basis(9);
  int kernel_dim = -1;
  REQUIRE(curv_tensor_kernel(tensor.ptr, 1e-10, basis.data(), &kernel_dim) == CURV_OK);
  CHECK(kernel_dim == 1);
  CHECK(std::abs(basis[2]) == doctest::Approx(1.0));
}

TEST_CASE("membership and permutation extraction") {
  const std::vector<double> id2 = identity_entries(2);
  FormHandle f1, f2;
  REQUIRE(curv_form_create(2, id2.data(), &f1.ptr) == CURV_OK);
  REQUIRE(curv_form_create(2, id2.data(), &f2.ptr) == CURV_OK);
  const curv_form* forms[2] = {f1.ptr, f2.ptr};
  ModelHandle model;
  REQUIRE(curv_model_create(2, forms, &model.ptr) == CURV_OK);
  CHECK(curv_model_total_dim(model.ptr) == 4);
  CHECK(curv_model_block_dim(model.ptr, 1) == 2);

  TensorHandle tensor;
  REQUIRE(curv_model_tensor(model.ptr, &tensor.ptr) == CURV_OK);

  // Block swap: a structure-group member exchanging the two planes.
  std::vector<double> swap(16, 0.0);
  swap[0 * 4 + 2] = 1.0;
  swap[1 * 4 + 3] = 1.0;
  swap[2 * 4 + 0] = 1.0;
  swap[3 * 4 + 1] = 1.0;
  int member = 0;
  double residual = -1;
  REQUIRE(curv_is_member(tensor.ptr, swap.data(), 1e-8, &member, &residual) == CURV_OK);
  CHECK(member == 1);
  CHECK(residual <= 1e-12);

  int sigma[2] = {0, 0};
  REQUIRE(curv_extract_permutation(model.ptr, swap.data(), 1e-8, sigma) == CURV_OK);
  CHECK(sigma[0] == 2);
  CHECK(sigma[1] == 1);

  // Sampled elements stay members.
  std::vector<double> sampled(16);
  REQUIRE(curv_sample_structure_element(model.ptr, 7, sampled.data()) == CURV_OK);
  REQUIRE(curv_is_member(tensor.ptr, sampled.data(), 1e-8, &member, &residual) == CURV_OK);
  CHECK(member == 1);

  // A stretch of one block is not a member.
  std::vector<double> stretch = identity_entries(4);
  stretch[0] = 2.0;
  REQUIRE(curv_is_member(tensor.ptr, stretch.data(), 1e-8, &member, &residual) == CURV_OK);
  CHECK(member == 0);
  CHECK(curv_extract_permutation(model.ptr, stretch.data(), 1e-8, sigma) ==
        CURV_ERR_NOT_A_MEMBER);
}

TEST_CASE("classification verdicts") {
  const std::vector<double> id3 = identity_entries(3);
  FormHandle form;
  REQUIRE(curv_form_create(3, id3.data(), &form.ptr) == CURV_OK);

  std::vector<double> rotation(9);
  REQUIRE(curv_sample_isometry(form.ptr, 11, rotation.data()) == CURV_OK);
  curv_verdict verdict = CURV_VERDICT_NON_MEMBER;
  double residual = -1;
  REQUIRE(curv_classify_canonical(form.ptr, rotation.data(), 1e-8, &verdict, &residual) ==
          CURV_OK);
  CHECK(verdict == CURV_VERDICT_ISOMETRY);
  CHECK(std::string(curv_verdict_name(verdict)) == "isometry");

  const std::vector<double> balanced{1, 0, 0, -1};
  FormHandle bform;
  REQUIRE(curv_form_create(2, balanced.data(), &bform.ptr) == CURV_OK);
  std::vector<double> para(4);
  REQUIRE(curv_sample_para_isometry(bform.ptr, para.data()) == CURV_OK);
  // In dimension 2 the determinant rule takes precedence.
  REQUIRE(curv_classify_canonical(bform.ptr, para.data(), 1e-8, &verdict, &residual) == CURV_OK);
  CHECK(verdict == CURV_VERDICT_UNIMODULAR_RANK2);

  const std::vector<double> unbalanced{1, 0, 0, 0, 1, 0, 0, 0, 1};
  FormHandle uform;
  REQUIRE(curv_form_create(3, unbalanced.data(), &uform.ptr) == CURV_OK);
  CHECK(curv_sample_para_isometry(uform.ptr, para.data()) == CURV_ERR_NOT_BALANCED);
}

TEST_CASE("invariant profile of a model") {
  const double root2 = std::sqrt(2.0);
  const double root5 = std::sqrt(5.0);
  const std::vector<double> e1{root2, 0, 0, root2};
  const std::vector<double> e2{root5, 0, 0, root5};
  FormHandle f1, f2;
  REQUIRE(curv_form_create(2, e1.data(), &f1.ptr) == CURV_OK);
  REQUIRE(curv_form_create(2, e2.data(), &f2.ptr) == CURV_OK);
  const curv_form* forms[2] = {f1.ptr, f2.ptr};
  ModelHandle model;
  REQUIRE(curv_model_create(2, forms, &model.ptr) == CURV_OK);

  double tau = 0;
  std::vector<double> rho_eigs(4);
  int n_kappa = 0;
  double kappa[2];
  double elementary[2];
  REQUIRE(curv_model_invariants(model.ptr, &tau, rho_eigs.data(), &n_kappa, kappa, elementary) ==
          CURV_OK);
  CHECK(tau == doctest::Approx(4.0));
  REQUIRE(n_kappa == 2);
  CHECK(kappa[0] == doctest::Approx(2.0));
  CHECK(kappa[1] == doctest::Approx(5.0));
  CHECK(elementary[0] == doctest::Approx(7.0));
  CHECK(elementary[1] == doctest::Approx(10.0));
}

TEST_CASE("skew-Tsankov entry points") {
  const double root2 = std::sqrt(2.0);
  const double root5 = std::sqrt(5.0);
  const std::vector<double> e1{root2, 0, 0, root2};
  const std::vector<double> e2{root5, 0, 0, root5};
  FormHandle f1, f2;
  REQUIRE(curv_form_create(2, e1.data(), &f1.ptr) == CURV_OK);
  REQUIRE(curv_form_create(2, e2.data(), &f2.ptr) == CURV_OK);
  TensorHandle t1, t2;
  REQUIRE(curv_tensor_build_canonical(f1.ptr, &t1.ptr) == CURV_OK);
  REQUIRE(curv_tensor_build_canonical(f2.ptr, &t2.ptr) == CURV_OK);
  const curv_tensor* parts[2] = {t1.ptr, t2.ptr};
  TensorHandle sum;
  REQUIRE(curv_tensor_direct_sum(2, parts, &sum.ptr) == CURV_OK);

  FormHandle metric;
  const std::vector<double> id4 = identity_entries(4);
  REQUIRE(curv_form_create(4, id4.data(), &metric.ptr) == CURV_OK);

  int commutes = 0;
  REQUIRE(curv_skew_tsankov_check(metric.ptr, sum.ptr, 1e-10, &commutes) == CURV_OK);
  CHECK(commutes == 1);

  int kernel_dim = -1, n_planes = -1;
  double kappa[2];
  REQUIRE(curv_skew_tsankov_decompose(metric.ptr, sum.ptr, 1e-8, 3, &kernel_dim, &n_planes,
                                      kappa) == CURV_OK);
  CHECK(kernel_dim == 0);
  REQUIRE(n_planes == 2);
  const double low = std::min(kappa[0], kappa[1]);
  const double high = std::max(kappa[0], kappa[1]);
  CHECK(low == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(high == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("polynomial manifold entry points") {
  // f = (x1^2 + x2^2 + x3^2)/2 + x1^3
  const std::vector<int> exps{2, 0, 0, 0, 2, 0, 0, 0, 2, 3, 0, 0};
  const std::vector<double> coefs{0.5, 0.5, 0.5, 1.0};
  PolyHandle poly;
  REQUIRE(curv_poly_create(3, 4, exps.data(), coefs.data(), &poly.ptr) == CURV_OK);
  CHECK(curv_poly_var_count(poly.ptr) == 3);

  const std::vector<double> point{1.0, 0.0, 0.0};
  double value = 0;
  REQUIRE(curv_poly_eval(poly.ptr, point.data(), &value) == CURV_OK);
  CHECK(value == doctest::Approx(1.5));

  double alpha = -1;
  REQUIRE(curv_mf_alpha(poly.ptr, point.data(), &alpha) == CURV_OK);
  CHECK(alpha == doctest::Approx(288.0 / 343.0));

  double tau = -1;
  REQUIRE(curv_mf_scalar_curvature(poly.ptr, point.data(), &tau) == CURV_OK);
  CHECK(std::abs(tau) <= 1e-9);

  // Degenerate Hessian at a crafted point.
  const std::vector<int> dexps{0, 2, 0, 0, 0, 2, 3, 0, 0};
  const std::vector<double> dcoefs{0.5, 0.5, 1.0};
  PolyHandle degenerate;
  REQUIRE(curv_poly_create(3, 3, dexps.data(), dcoefs.data(), &degenerate.ptr) == CURV_OK);
  const std::vector<double> origin{0.0, 0.0, 0.0};
  CHECK(curv_mf_alpha(degenerate.ptr, origin.data(), &alpha) == CURV_ERR_DEGENERATE_HESSIAN);
}

TEST_CASE("selftest runs reduced and reports") {
  char* report = nullptr;
  int failed = -1;
  REQUIRE(curv_selftest(42, 0.05, 1e-8, 1e-10, &report, &failed) == CURV_OK);
  REQUIRE(report != nullptr);
  CHECK(failed == 0);
  CHECK(std::string(report).find("criterion 1") != std::string::npos);
  curv_string_free(report);
}
