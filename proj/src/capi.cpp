#include "curvlab/curvlab.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "curvlab/block_model.hpp"
#include "curvlab/curv_tensor.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/mf_geometry.hpp"
#include "curvlab/polynomial.hpp"
#include "curvlab/selftest.hpp"
#include "curvlab/skew_tsankov.hpp"
#include "curvlab/structure_group.hpp"
#include "curvlab/sym_form.hpp"

using namespace curvlab;

struct curv_form {
  SymForm value;
};
struct curv_tensor {
  CurvTensor value;
};
struct curv_model {
  BlockModelSpace value;
};
struct curv_poly {
  MfManifold value;
};

namespace {

thread_local std::string g_last_error;

curv_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return CURV_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidCurvature: return CURV_ERR_INVALID_CURVATURE;
    case ErrorCode::DegenerateForm: return CURV_ERR_DEGENERATE_FORM;
    case ErrorCode::SingularMap: return CURV_ERR_SINGULAR_MAP;
    case ErrorCode::NotBalanced: return CURV_ERR_NOT_BALANCED;
    case ErrorCode::ModelMismatch: return CURV_ERR_MODEL_MISMATCH;
    case ErrorCode::IncompatibleBlocks: return CURV_ERR_INCOMPATIBLE_BLOCKS;
    case ErrorCode::InvalidSplit: return CURV_ERR_INVALID_SPLIT;
    case ErrorCode::NotAMember: return CURV_ERR_NOT_A_MEMBER;
    case ErrorCode::InconsistentPermutation: return CURV_ERR_INCONSISTENT_PERMUTATION;
    case ErrorCode::NotSkewTsankov: return CURV_ERR_NOT_SKEW_TSANKOV;
    case ErrorCode::DegenerateSpectrum: return CURV_ERR_DEGENERATE_SPECTRUM;
    case ErrorCode::DegenerateHessian: return CURV_ERR_DEGENERATE_HESSIAN;
    case ErrorCode::DegeneratePlane: return CURV_ERR_DEGENERATE_PLANE;
  }
  return CURV_ERR_INTERNAL;
}

template <typename Fn>
curv_status guarded(Fn&& fn) {
  try {
    fn();
    return CURV_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CURV_ERR_INTERNAL;
  }
}

curv_status fail(curv_status status, const char* message) {
  g_last_error = message;
  return status;
}

Matrix matrix_from_row_major(int dim, const double* data) {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = data[i * dim + j];
  }
  return m;
}

}  // namespace

extern "C" {

const char* curv_version(void) { return "1.0.0"; }

const char* curv_status_name(curv_status status) {
  switch (status) {
    case CURV_OK: return "ok";
    case CURV_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case CURV_ERR_INVALID_CURVATURE: return "invalid-curvature";
    case CURV_ERR_DEGENERATE_FORM: return "degenerate-form";
    case CURV_ERR_SINGULAR_MAP: return "singular-map";
    case CURV_ERR_NOT_BALANCED: return "not-balanced";
    case CURV_ERR_MODEL_MISMATCH: return "model-mismatch";
    case CURV_ERR_INCOMPATIBLE_BLOCKS: return "incompatible-blocks";
    case CURV_ERR_INVALID_SPLIT: return "invalid-split";
    case CURV_ERR_NOT_A_MEMBER: return "not-a-member";
    case CURV_ERR_INCONSISTENT_PERMUTATION: return "inconsistent-permutation";
    case CURV_ERR_NOT_SKEW_TSANKOV: return "not-skew-tsankov";
    case CURV_ERR_DEGENERATE_SPECTRUM: return "degenerate-spectrum";
    case CURV_ERR_DEGENERATE_HESSIAN: return "degenerate-hessian";
    case CURV_ERR_DEGENERATE_PLANE: return "degenerate-plane";
    case CURV_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* curv_verdict_name(curv_verdict verdict) {
  switch (verdict) {
    case CURV_VERDICT_ISOMETRY: return "isometry";
    case CURV_VERDICT_PARA_ISOMETRY: return "para-isometry";
    case CURV_VERDICT_UNIMODULAR_RANK2: return "unimodular-rank2";
    case CURV_VERDICT_ZERO_TENSOR: return "zero-tensor";
    case CURV_VERDICT_NON_MEMBER: return "non-member";
  }
  return "unknown";
}

const char* curv_last_error(void) { return g_last_error.c_str(); }

void curv_string_free(char* s) { delete[] s; }

/* ---- forms ---- */

curv_status curv_form_create(int dim, const double* entries, curv_form** out) {
  if (dim < 1 || entries == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_form_create");
  }
  return guarded([&] { *out = new curv_form{SymForm(matrix_from_row_major(dim, entries))}; });
}

void curv_form_free(curv_form* form) { delete form; }

int curv_form_dim(const curv_form* form) { return form ? form->value.dim() : 0; }

curv_status curv_form_entries(const curv_form* form, double* out) {
  if (form == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_form_entries");
  }
  const int n = form->value.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i * n + j] = form->value(i, j);
  }
  return CURV_OK;
}

curv_status curv_form_signature(const curv_form* form, double tol, int* n_plus, int* n_minus,
                                int* n_zero) {
  if (form == nullptr || n_plus == nullptr || n_minus == nullptr || n_zero == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_form_signature");
  }
  return guarded([&] {
    const Signature sig = signature(form->value, tol);
    *n_plus = sig.n_plus;
    *n_minus = sig.n_minus;
    *n_zero = sig.n_zero;
  });
}

curv_status curv_form_eigenvalues(const curv_form* form, double* out) {
  if (form == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_form_eigenvalues");
  }
  return guarded([&] {
    const Vector values = form_eigenvalues(form->value);
    for (int i = 0; i < form->value.dim(); ++i) out[i] = values[i];
  });
}

curv_status curv_form_pseudo_orthonormalize(const curv_form* form, double tol, double* vectors,
                                            int* signs) {
  if (form == nullptr || vectors == nullptr || signs == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_form_pseudo_orthonormalize");
  }
  return guarded([&] {
    const PseudoONBasis basis = pseudo_orthonormalize(form->value, tol);
    const int n = form->value.dim();
    for (int c = 0; c < n; ++c) {
      signs[c] = basis.signs[static_cast<std::size_t>(c)];
      for (int r = 0; r < n; ++r) vectors[c * n + r] = basis.vectors(r, c);
    }
  });
}

/* ---- tensors ---- */

curv_status curv_tensor_create(int dim, const double* components, double tol, curv_tensor** out) {
  if (dim < 1 || components == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_tensor_create");
  }
  return guarded([&] {
    const std::size_t n = static_cast<std::size_t>(dim);
    std::vector<double> data(components, components + n * n * n * n);
    *out = new curv_tensor{CurvTensor(dim, std::move(data), tol)};
  });
}

curv_status curv_tensor_build_canonical(const curv_form* form, curv_tensor** out) {
  if (form == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_tensor_build_canonical");
  }
  return guarded([&] { *out = new curv_tensor{build_canonical(form->value)}; });
}

void curv_tensor_free(curv_tensor* tensor) { delete tensor; }

int curv_tensor_dim(const curv_tensor* tensor) { return tensor ? tensor->value.dim() : 0; }

curv_status curv_tensor_components(const curv_tensor* tensor, double* out) {
  if (tensor == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_tensor_components");
  }
  const std::vector<double>& c = tensor->value.components();
  std::memcpy(out, c.data(), c.size() * sizeof(double));
  return CURV_OK;
}

curv_status curv_tensor_validate(int dim, const double* components, double tol,
                                 double* antisym_residual, double* pair_residual,
                                 double* bianchi_residual, int* pass) {
  if (dim < 1 || components == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_tensor_validate");
  }
  return guarded([&] {
    const std::size_t n = static_cast<std::size_t>(dim);
    std::vector<double> data(components, components + n * n * n * n);
    const ValidationReport report = validate_components(dim, data, tol);
    if (antisym_residual != nullptr) *antisym_residual = report.antisymmetry_residual;
    if (pair_residual != nullptr) *pair_residual = report.pair_symmetry_residual;
    if (bianchi_residual != nullptr) *bianchi_residual = report.bianchi_residual;
    if (pass != nullptr) *pass = report.pass ? 1 : 0;
  });
}

curv_status curv_tensor_kernel(const curv_tensor* tensor, double tol, double* basis,
                               int* kernel_dim) {
  if (tensor == nullptr || kernel_dim == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_tensor_kernel");
  }
  return guarded([&] {
    const Matrix k = kernel(tensor->value, tol);
    *kernel_dim = static_cast<int>(k.cols());
    if (basis != nullptr) {
      for (int c = 0; c < k.cols(); ++c) {
        for (int r = 0; r < k.rows(); ++r) basis[c * k.rows() + r] = k(r, c);
      }
    }
  });
}

curv_status curv_tensor_direct_sum(int count, const curv_tensor* const* parts, curv_tensor** out) {
  if (count < 1 || parts == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_tensor_direct_sum");
  }
  return guarded([&] {
    std::vector<CurvTensor> tensors;
    tensors.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      if (parts[i] == nullptr) raise(ErrorCode::InvalidArgument, "null tensor in direct sum");
      tensors.push_back(parts[i]->value);
    }
    *out = new curv_tensor{direct_sum(tensors)};
  });
}

curv_status curv_tensor_pullback(const curv_tensor* tensor, const double* map, curv_tensor** out) {
  if (tensor == nullptr || map == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_tensor_pullback");
  }
  return guarded([&] {
    const Matrix a = matrix_from_row_major(tensor->value.dim(), map);
    *out = new curv_tensor{pullback(a, tensor->value)};
  });
}

/* ---- models ---- */

curv_status curv_model_create(int block_count, const curv_form* const* forms, curv_model** out) {
  if (block_count < 1 || forms == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_model_create");
  }
  return guarded([&] {
    std::vector<SymForm> block_forms;
    block_forms.reserve(static_cast<std::size_t>(block_count));
    for (int i = 0; i < block_count; ++i) {
      if (forms[i] == nullptr) raise(ErrorCode::InvalidArgument, "null form in model");
      block_forms.push_back(forms[i]->value);
    }
    *out = new curv_model{BlockModelSpace(std::move(block_forms))};
  });
}

void curv_model_free(curv_model* model) { delete model; }

int curv_model_block_count(const curv_model* model) {
  return model ? model->value.block_count() : 0;
}

int curv_model_total_dim(const curv_model* model) { return model ? model->value.total_dim() : 0; }

int curv_model_block_dim(const curv_model* model, int block) {
  if (model == nullptr || block < 0 || block >= model->value.block_count()) return 0;
  return model->value.block_dim(block);
}

curv_status curv_model_tensor(const curv_model* model, curv_tensor** out) {
  if (model == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_model_tensor");
  }
  return guarded([&] { *out = new curv_tensor{model->value.direct_sum_tensor()}; });
}

/* ---- structure group ---- */

curv_status curv_is_member(const curv_tensor* tensor, const double* map, double tol, int* member,
                           double* residual) {
  if (tensor == nullptr || map == nullptr || member == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_is_member");
  }
  return guarded([&] {
    const Matrix a = matrix_from_row_major(tensor->value.dim(), map);
    const MembershipResult result = is_member(a, tensor->value, tol);
    *member = result.member ? 1 : 0;
    if (residual != nullptr) *residual = result.residual;
  });
}

curv_status curv_classify_canonical(const curv_form* form, const double* map, double tol,
                                    curv_verdict* verdict, double* residual) {
  if (form == nullptr || map == nullptr || verdict == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_classify_canonical");
  }
  return guarded([&] {
    const Matrix a = matrix_from_row_major(form->value.dim(), map);
    const MembershipVerdict result = classify_canonical_member(a, form->value, tol);
    switch (result.verdict) {
      case Verdict::Isometry: *verdict = CURV_VERDICT_ISOMETRY; break;
      case Verdict::ParaIsometry: *verdict = CURV_VERDICT_PARA_ISOMETRY; break;
      case Verdict::UnimodularRank2: *verdict = CURV_VERDICT_UNIMODULAR_RANK2; break;
      case Verdict::ZeroTensor: *verdict = CURV_VERDICT_ZERO_TENSOR; break;
      case Verdict::NonMember: *verdict = CURV_VERDICT_NON_MEMBER; break;
    }
    if (residual != nullptr) *residual = result.residual;
  });
}

curv_status curv_extract_permutation(const curv_model* model, const double* map, double tol,
                                     int* sigma) {
  if (model == nullptr || map == nullptr || sigma == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_extract_permutation");
  }
  return guarded([&] {
    const Matrix a = matrix_from_row_major(model->value.total_dim(), map);
    const BlockPermutation result = extract_permutation(a, model->value, tol);
    for (int i = 0; i < result.size(); ++i) sigma[i] = result(i) + 1;
  });
}

namespace {

void write_row_major(const Matrix& m, double* out) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  }
}

}  // namespace

curv_status curv_sample_isometry(const curv_form* form, uint64_t seed, double* map) {
  if (form == nullptr || map == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_sample_isometry");
  }
  return guarded([&] {
    Rng rng(seed);
    write_row_major(sample_isometry(form->value, rng), map);
  });
}

curv_status curv_sample_para_isometry(const curv_form* form, double* map) {
  if (form == nullptr || map == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_sample_para_isometry");
  }
  return guarded([&] { write_row_major(sample_para_isometry(form->value), map); });
}

curv_status curv_sample_structure_element(const curv_model* model, uint64_t seed, double* map) {
  if (model == nullptr || map == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_sample_structure_element");
  }
  return guarded([&] {
    Rng rng(seed);
    write_row_major(sample_structure_group_element(model->value, rng), map);
  });
}

/* ---- invariants ---- */

curv_status curv_ricci(const curv_tensor* tensor, const curv_form* form, curv_form** out) {
  if (tensor == nullptr || form == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_ricci");
  }
  return guarded([&] { *out = new curv_form{ricci(tensor->value, form->value)}; });
}

curv_status curv_scalar_curvature(const curv_tensor* tensor, const curv_form* form, double* out) {
  if (tensor == nullptr || form == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_scalar_curvature");
  }
  return guarded([&] { *out = scalar_curvature(tensor->value, form->value); });
}

curv_status curv_sectional_curvature(const curv_tensor* tensor, const curv_form* form,
                                     const double* x, const double* y, double* out) {
  if (tensor == nullptr || form == nullptr || x == nullptr || y == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_sectional_curvature");
  }
  return guarded([&] {
    const int n = tensor->value.dim();
    Vector vx(n);
    Vector vy(n);
    for (int i = 0; i < n; ++i) {
      vx[i] = x[i];
      vy[i] = y[i];
    }
    *out = sectional_curvature(tensor->value, form->value, vx, vy);
  });
}

curv_status curv_model_invariants(const curv_model* model, double* tau, double* rho_eigenvalues,
                                  int* n_kappa, double* kappa, double* elementary) {
  if (model == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_model_invariants");
  }
  return guarded([&] {
    model->value.require_nondegenerate();
    const CurvTensor t = model->value.direct_sum_tensor();
    const SymForm phi = model->value.direct_sum_form();
    if (tau != nullptr) *tau = scalar_curvature(t, phi);
    if (rho_eigenvalues != nullptr) {
      const Vector values = form_eigenvalues(ricci(t, phi));
      for (int i = 0; i < model->value.total_dim(); ++i) rho_eigenvalues[i] = values[i];
    }
    const std::vector<double> kappas = block_sectional_curvatures(model->value);
    if (n_kappa != nullptr) *n_kappa = static_cast<int>(kappas.size());
    if (kappa != nullptr) {
      for (std::size_t i = 0; i < kappas.size(); ++i) kappa[i] = kappas[i];
    }
    if (elementary != nullptr && !kappas.empty()) {
      const InvariantProfile profile = symmetric_combine(kappas);
      for (std::size_t i = 0; i < profile.elementary.size(); ++i) {
        elementary[i] = profile.elementary[i];
      }
    }
  });
}

/* ---- skew-Tsankov ---- */

curv_status curv_skew_tsankov_check(const curv_form* form, const curv_tensor* tensor, double tol,
                                    int* commutes) {
  if (form == nullptr || tensor == nullptr || commutes == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_skew_tsankov_check");
  }
  return guarded(
      [&] { *commutes = skew_tsankov_check(form->value, tensor->value, tol) ? 1 : 0; });
}

curv_status curv_skew_tsankov_decompose(const curv_form* form, const curv_tensor* tensor,
                                        double tol, uint64_t seed, int* kernel_dim, int* n_planes,
                                        double* kappa) {
  if (form == nullptr || tensor == nullptr || kernel_dim == nullptr || n_planes == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_skew_tsankov_decompose");
  }
  return guarded([&] {
    Rng rng(seed);
    const SkewTsankovDecomposition decomposition =
        skew_tsankov_decompose(form->value, tensor->value, tol, rng);
    *kernel_dim = static_cast<int>(decomposition.kernel.cols());
    *n_planes = static_cast<int>(decomposition.kappas.size());
    if (kappa != nullptr) {
      for (std::size_t i = 0; i < decomposition.kappas.size(); ++i) {
        kappa[i] = decomposition.kappas[i];
      }
    }
  });
}

/* ---- polynomial manifold family ---- */

curv_status curv_poly_create(int p, int n_terms, const int* exps, const double* coefs,
                             curv_poly** out) {
  if (p < 1 || n_terms < 0 || (n_terms > 0 && (exps == nullptr || coefs == nullptr)) ||
      out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_poly_create");
  }
  return guarded([&] {
    PolyFunction f(p);
    for (int t = 0; t < n_terms; ++t) {
      PolyFunction::Exponents e(static_cast<std::size_t>(p));
      for (int v = 0; v < p; ++v) e[static_cast<std::size_t>(v)] = exps[t * p + v];
      f.add_term(e, coefs[t]);
    }
    *out = new curv_poly{MfManifold(std::move(f))};
  });
}

void curv_poly_free(curv_poly* poly) { delete poly; }

int curv_poly_var_count(const curv_poly* poly) { return poly ? poly->value.p() : 0; }

namespace {

Vector point_from(const curv_poly* poly, const double* point) {
  Vector pt(poly->value.p());
  for (int i = 0; i < poly->value.p(); ++i) pt[i] = point[i];
  return pt;
}

}  // namespace

curv_status curv_poly_eval(const curv_poly* poly, const double* point, double* out) {
  if (poly == nullptr || point == nullptr || out == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_poly_eval");
  }
  return guarded([&] { *out = poly->value.f().eval(point_from(poly, point)); });
}

curv_status curv_mf_alpha(const curv_poly* poly, const double* point, double* alpha) {
  if (poly == nullptr || point == nullptr || alpha == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_mf_alpha");
  }
  return guarded([&] { *alpha = mf_alpha(poly->value, point_from(poly, point)); });
}

curv_status curv_mf_scalar_curvature(const curv_poly* poly, const double* point, double* tau) {
  if (poly == nullptr || point == nullptr || tau == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_mf_scalar_curvature");
  }
  return guarded([&] { *tau = mf_scalar_curvature(poly->value, point_from(poly, point)); });
}

/* ---- verification suite ---- */

curv_status curv_selftest(uint64_t seed, double scale, double tol_membership, double tol_kernel,
                          char** report, int* n_failed) {
  if (scale <= 0.0 || scale > 1.0 || n_failed == nullptr) {
    return fail(CURV_ERR_INVALID_ARGUMENT, "bad arguments to curv_selftest");
  }
  return guarded([&] {
    selftest::Config config;
    config.seed = seed;
    config.scale = scale;
    config.tol_membership = tol_membership;
    config.tol_kernel = tol_kernel;
    const std::vector<selftest::CriterionResult> results = selftest::run_all(config);
    *n_failed = selftest::count_failures(results);
    if (report != nullptr) {
      const std::string text = selftest::format_report(results);
      char* buffer = new char[text.size() + 1];
      std::memcpy(buffer, text.c_str(), text.size() + 1);
      *report = buffer;
    }
  });
}

} /* extern "C" */
