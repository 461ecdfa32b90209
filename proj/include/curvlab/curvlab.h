/* curvlab C API: canonical algebraic curvature tensors, structure groups of
 * decomposable model spaces, model-space invariants, and the balanced
 * polynomial manifold family.
 *
 * All objects are opaque handles created by curv_*_create functions and
 * released with the matching curv_*_free. Every fallible function returns a
 * curv_status; on failure the thread-local message from curv_last_error()
 * describes what went wrong. Matrices are dense row-major double arrays;
 * rank-4 tensors are flat row-major arrays of dim^4 entries.
 */
#ifndef CURVLAB_H
#define CURVLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CURVLAB_API __declspec(dllexport)
#else
#define CURVLAB_API __attribute__((visibility("default")))
#endif

typedef enum curv_status {
  CURV_OK = 0,
  CURV_ERR_INVALID_ARGUMENT = 1,
  CURV_ERR_INVALID_CURVATURE = 2,
  CURV_ERR_DEGENERATE_FORM = 3,
  CURV_ERR_SINGULAR_MAP = 4,
  CURV_ERR_NOT_BALANCED = 5,
  CURV_ERR_MODEL_MISMATCH = 6,
  CURV_ERR_INCOMPATIBLE_BLOCKS = 7,
  CURV_ERR_INVALID_SPLIT = 8,
  CURV_ERR_NOT_A_MEMBER = 9,
  CURV_ERR_INCONSISTENT_PERMUTATION = 10,
  CURV_ERR_NOT_SKEW_TSANKOV = 11,
  CURV_ERR_DEGENERATE_SPECTRUM = 12,
  CURV_ERR_DEGENERATE_HESSIAN = 13,
  CURV_ERR_DEGENERATE_PLANE = 14,
  CURV_ERR_INTERNAL = 15
} curv_status;

typedef enum curv_verdict {
  CURV_VERDICT_ISOMETRY = 0,
  CURV_VERDICT_PARA_ISOMETRY = 1,
  CURV_VERDICT_UNIMODULAR_RANK2 = 2,
  CURV_VERDICT_ZERO_TENSOR = 3,
  CURV_VERDICT_NON_MEMBER = 4
} curv_verdict;

typedef struct curv_form curv_form;
typedef struct curv_tensor curv_tensor;
typedef struct curv_model curv_model;
typedef struct curv_poly curv_poly;

CURVLAB_API const char* curv_version(void);
CURVLAB_API const char* curv_status_name(curv_status status);
CURVLAB_API const char* curv_verdict_name(curv_verdict verdict);

/* Thread-local message for the most recent failure on this thread. */
CURVLAB_API const char* curv_last_error(void);

CURVLAB_API void curv_string_free(char* s);

/* ---- symmetric bilinear forms ---- */

/* entries: dim*dim row-major, must be exactly symmetric. */
CURVLAB_API curv_status curv_form_create(int dim, const double* entries, curv_form** out);
CURVLAB_API void curv_form_free(curv_form* form);
CURVLAB_API int curv_form_dim(const curv_form* form);
CURVLAB_API curv_status curv_form_entries(const curv_form* form, double* out);
CURVLAB_API curv_status curv_form_signature(const curv_form* form, double tol, int* n_plus,
                                            int* n_minus, int* n_zero);
/* out: dim eigenvalues, ascending. */
CURVLAB_API curv_status curv_form_eigenvalues(const curv_form* form, double* out);
/* vectors: dim*dim column-major basis vectors; signs: dim entries of +-1. */
CURVLAB_API curv_status curv_form_pseudo_orthonormalize(const curv_form* form, double tol,
                                                        double* vectors, int* signs);

/* ---- curvature tensors ---- */

CURVLAB_API curv_status curv_tensor_create(int dim, const double* components, double tol,
                                           curv_tensor** out);
CURVLAB_API curv_status curv_tensor_build_canonical(const curv_form* form, curv_tensor** out);
CURVLAB_API void curv_tensor_free(curv_tensor* tensor);
CURVLAB_API int curv_tensor_dim(const curv_tensor* tensor);
CURVLAB_API curv_status curv_tensor_components(const curv_tensor* tensor, double* out);
/* Report-only identity check on raw components. pass is 1 or 0. */
CURVLAB_API curv_status curv_tensor_validate(int dim, const double* components, double tol,
                                             double* antisym_residual, double* pair_residual,
                                             double* bianchi_residual, int* pass);
/* basis: dim*kernel_dim column-major output (pass a dim*dim buffer). */
CURVLAB_API curv_status curv_tensor_kernel(const curv_tensor* tensor, double tol, double* basis,
                                           int* kernel_dim);
CURVLAB_API curv_status curv_tensor_direct_sum(int count, const curv_tensor* const* parts,
                                               curv_tensor** out);
CURVLAB_API curv_status curv_tensor_pullback(const curv_tensor* tensor, const double* map,
                                             curv_tensor** out);

/* ---- block model spaces ---- */

CURVLAB_API curv_status curv_model_create(int block_count, const curv_form* const* forms,
                                          curv_model** out);
CURVLAB_API void curv_model_free(curv_model* model);
CURVLAB_API int curv_model_block_count(const curv_model* model);
CURVLAB_API int curv_model_total_dim(const curv_model* model);
CURVLAB_API int curv_model_block_dim(const curv_model* model, int block);
CURVLAB_API curv_status curv_model_tensor(const curv_model* model, curv_tensor** out);

/* ---- structure group ---- */

/* map: N*N row-major. member is 1 or 0; residual is relative. */
CURVLAB_API curv_status curv_is_member(const curv_tensor* tensor, const double* map, double tol,
                                       int* member, double* residual);
CURVLAB_API curv_status curv_classify_canonical(const curv_form* form, const double* map,
                                                double tol, curv_verdict* verdict,
                                                double* residual);
/* sigma: block_count entries, one-based images. */
CURVLAB_API curv_status curv_extract_permutation(const curv_model* model, const double* map,
                                                 double tol, int* sigma);
CURVLAB_API curv_status curv_sample_isometry(const curv_form* form, uint64_t seed, double* map);
CURVLAB_API curv_status curv_sample_para_isometry(const curv_form* form, double* map);
CURVLAB_API curv_status curv_sample_structure_element(const curv_model* model, uint64_t seed,
                                                      double* map);

/* ---- invariants ---- */

CURVLAB_API curv_status curv_ricci(const curv_tensor* tensor, const curv_form* form,
                                   curv_form** out);
CURVLAB_API curv_status curv_scalar_curvature(const curv_tensor* tensor, const curv_form* form,
                                              double* out);
CURVLAB_API curv_status curv_sectional_curvature(const curv_tensor* tensor, const curv_form* form,
                                                 const double* x, const double* y, double* out);
/* tau: scalar curvature of the direct-sum model;
 * rho_eigenvalues: total_dim entries, ascending;
 * kappa: sectional curvature per 2-dimensional block (up to block_count
 * entries, count returned in n_kappa), with elementary symmetric functions
 * in elementary (same count). */
CURVLAB_API curv_status curv_model_invariants(const curv_model* model, double* tau,
                                              double* rho_eigenvalues, int* n_kappa,
                                              double* kappa, double* elementary);

/* ---- skew-Tsankov models ---- */

CURVLAB_API curv_status curv_skew_tsankov_check(const curv_form* form, const curv_tensor* tensor,
                                                double tol, int* commutes);
/* kappa: up to total_dim/2 entries; counts returned through out params. */
CURVLAB_API curv_status curv_skew_tsankov_decompose(const curv_form* form,
                                                    const curv_tensor* tensor, double tol,
                                                    uint64_t seed, int* kernel_dim, int* n_planes,
                                                    double* kappa);

/* ---- polynomial manifold family ---- */

/* exps: n_terms*p row-major nonnegative exponents. p >= 3. */
CURVLAB_API curv_status curv_poly_create(int p, int n_terms, const int* exps, const double* coefs,
                                         curv_poly** out);
CURVLAB_API void curv_poly_free(curv_poly* poly);
CURVLAB_API int curv_poly_var_count(const curv_poly* poly);
CURVLAB_API curv_status curv_poly_eval(const curv_poly* poly, const double* point, double* out);
CURVLAB_API curv_status curv_mf_alpha(const curv_poly* poly, const double* point, double* alpha);
CURVLAB_API curv_status curv_mf_scalar_curvature(const curv_poly* poly, const double* point,
                                                 double* tau);

/* ---- verification suite ---- */

/* Runs the full acceptance checks at `scale` times the standard trial counts
 * (scale in (0, 1]); writes a per-criterion report to *report (free with
 * curv_string_free) and the number of failed criteria to *n_failed. */
CURVLAB_API curv_status curv_selftest(uint64_t seed, double scale, double tol_membership,
                                      double tol_kernel, char** report, int* n_failed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CURVLAB_H */
