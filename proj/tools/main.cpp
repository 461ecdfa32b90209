// curvlab command line tool: canonical curvature tensors, structure-group
// membership, model invariants, and the polynomial manifold invariant, over
// JSON/CSV files. All math goes through the curvlab C API.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvlab/curvlab.h"
#include "json_io.hpp"

namespace {

// Stable exit codes.
constexpr int kExitMember = 0;
constexpr int kExitNonMember = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitSingular = 4;
constexpr int kExitInconsistentPermutation = 5;
constexpr int kExitDegenerateBlock = 6;
constexpr int kExitDegenerateHessian = 7;
constexpr int kExitFailure = 10;

struct Options {
  double tol_membership = 1e-8;
  double tol_kernel = 1e-10;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;
};

void add_common_options(CLI::App* cmd, Options& options) {
  cmd->add_option("--tol-membership", options.tol_membership, "Membership tolerance (relative)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-kernel", options.tol_kernel, "Kernel/rank tolerance (relative)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", options.seed, "Random seed (overrides CURVLAB_SEED)");
  cmd->add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", options.out, "Write output to this file instead of stdout");
}

int fail(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return code;
}

int fail_status(curv_status status) {
  const std::string message =
      std::string(curv_status_name(status)) + ": " + curv_last_error();
  switch (status) {
    case CURV_ERR_SINGULAR_MAP: return fail(kExitSingular, message);
    case CURV_ERR_INCONSISTENT_PERMUTATION: return fail(kExitInconsistentPermutation, message);
    case CURV_ERR_DEGENERATE_FORM: return fail(kExitDegenerateBlock, message);
    case CURV_ERR_DEGENERATE_HESSIAN: return fail(kExitDegenerateHessian, message);
    case CURV_ERR_INVALID_ARGUMENT:
    case CURV_ERR_INVALID_CURVATURE: return fail(kExitValidation, message);
    default: return fail(kExitFailure, message);
  }
}

struct FormDeleter {
  void operator()(curv_form* f) const { curv_form_free(f); }
};
struct TensorDeleter {
  void operator()(curv_tensor* t) const { curv_tensor_free(t); }
};
struct ModelDeleter {
  void operator()(curv_model* m) const { curv_model_free(m); }
};
struct PolyDeleter {
  void operator()(curv_poly* p) const { curv_poly_free(p); }
};
using FormPtr = std::unique_ptr<curv_form, FormDeleter>;
using TensorPtr = std::unique_ptr<curv_tensor, TensorDeleter>;
using ModelPtr = std::unique_ptr<curv_model, ModelDeleter>;
using PolyPtr = std::unique_ptr<curv_poly, PolyDeleter>;

// Throws ParseFailure for malformed files; returns a live handle otherwise.
FormPtr make_form(const cli::SquareMatrix& data, curv_status& status) {
  curv_form* raw = nullptr;
  status = curv_form_create(data.dim, data.entries.data(), &raw);
  return FormPtr(raw);
}

ModelPtr make_model(const std::vector<cli::SquareMatrix>& blocks, curv_status& status) {
  std::vector<FormPtr> forms;
  std::vector<const curv_form*> raw;
  for (const cli::SquareMatrix& block : blocks) {
    forms.push_back(make_form(block, status));
    if (status != CURV_OK) return nullptr;
    raw.push_back(forms.back().get());
  }
  curv_model* model = nullptr;
  status = curv_model_create(static_cast<int>(raw.size()), raw.data(), &model);
  return ModelPtr(model);
}

std::string cycle_notation(const std::vector<int>& sigma_one_based) {
  std::ostringstream out;
  std::vector<bool> visited(sigma_one_based.size(), false);
  bool any = false;
  for (std::size_t start = 0; start < sigma_one_based.size(); ++start) {
    if (visited[start] || sigma_one_based[start] == static_cast<int>(start) + 1) continue;
    any = true;
    out << '(';
    std::size_t i = start;
    bool first = true;
    while (!visited[i]) {
      visited[i] = true;
      if (!first) out << ' ';
      out << i + 1;
      first = false;
      i = static_cast<std::size_t>(sigma_one_based[i] - 1);
    }
    out << ')';
  }
  return any ? out.str() : "()";
}

void emit(const Options& options, const std::string& content) {
  if (options.out.empty()) {
    std::cout << content;
  } else {
    cli::write_file(options.out, content);
  }
}

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

// ---- build-rphi ----

int cmd_build_rphi(const std::string& form_file, const std::string& out_file,
                   const Options& options) {
  cli::SquareMatrix data;
  try {
    data = cli::read_form_file(form_file);
  } catch (const cli::ParseFailure& e) {
    return fail(kExitParse, e.what());
  }
  curv_status status = CURV_OK;
  const FormPtr form = make_form(data, status);
  if (status != CURV_OK) return fail_status(status);

  curv_tensor* raw = nullptr;
  status = curv_tensor_build_canonical(form.get(), &raw);
  if (status != CURV_OK) return fail_status(status);
  const TensorPtr tensor(raw);

  const int n = data.dim;
  std::vector<double> components(static_cast<std::size_t>(n) * n * n * n);
  curv_tensor_components(tensor.get(), components.data());
  try {
    cli::write_file(out_file, cli::dump_json(cli::tensor_to_json(n, components)));
  } catch (const cli::ParseFailure& e) {
    return fail(kExitFailure, e.what());
  }

  int n_plus = 0, n_minus = 0, n_zero = 0;
  status = curv_form_signature(form.get(), options.tol_kernel, &n_plus, &n_minus, &n_zero);
  if (status != CURV_OK) return fail_status(status);
  int kernel_dim = 0;
  status = curv_tensor_kernel(tensor.get(), options.tol_kernel, nullptr, &kernel_dim);
  if (status != CURV_OK) return fail_status(status);

  std::cout << "signature: (" << n_plus << ", " << n_minus << ", " << n_zero << ")\n";
  std::cout << "kernel_dim: " << kernel_dim << "\n";
  return kExitMember;
}

// ---- check-membership ----

int cmd_check_membership(const std::string& model_file, const std::string& matrix_file,
                         const Options& options) {
  std::vector<cli::SquareMatrix> blocks;
  cli::SquareMatrix map;
  try {
    blocks = cli::read_model_file(model_file);
    map = cli::read_matrix_file(matrix_file);
  } catch (const cli::ParseFailure& e) {
    return fail(kExitParse, e.what());
  }
  curv_status status = CURV_OK;
  const ModelPtr model = make_model(blocks, status);
  if (status != CURV_OK) return fail_status(status);
  if (map.dim != curv_model_total_dim(model.get())) {
    return fail(kExitValidation, "matrix dimension does not match the model");
  }

  curv_tensor* raw = nullptr;
  status = curv_model_tensor(model.get(), &raw);
  if (status != CURV_OK) return fail_status(status);
  const TensorPtr tensor(raw);

  int member = 0;
  double residual = 0.0;
  status = curv_is_member(tensor.get(), map.entries.data(), options.tol_membership, &member,
                          &residual);
  if (status != CURV_OK) return fail_status(status);

  std::cout << "member: " << (member ? "yes" : "no") << "\n";
  std::cout << "residual: " << format_double(residual) << "\n";

  if (curv_model_block_count(model.get()) == 1) {
    curv_form* form_raw = nullptr;
    status = curv_form_create(blocks[0].dim, blocks[0].entries.data(), &form_raw);
    if (status != CURV_OK) return fail_status(status);
    const FormPtr form(form_raw);
    curv_verdict verdict = CURV_VERDICT_NON_MEMBER;
    double class_residual = 0.0;
    status = curv_classify_canonical(form.get(), map.entries.data(), options.tol_membership,
                                     &verdict, &class_residual);
    if (status != CURV_OK) return fail_status(status);
    std::cout << "classification: " << curv_verdict_name(verdict) << "\n";
  }

  if (member && curv_model_block_count(model.get()) > 1) {
    std::vector<int> sigma(static_cast<std::size_t>(curv_model_block_count(model.get())));
    status = curv_extract_permutation(model.get(), map.entries.data(), options.tol_membership,
                                      sigma.data());
    if (status != CURV_OK) return fail_status(status);
    std::cout << "sigma: " << cycle_notation(sigma) << "\n";
  }
  return member ? kExitMember : kExitNonMember;
}

// ---- invariants ----

int cmd_invariants(const std::string& model_file, const Options& options) {
  std::vector<cli::SquareMatrix> blocks;
  try {
    blocks = cli::read_model_file(model_file);
  } catch (const cli::ParseFailure& e) {
    return fail(kExitParse, e.what());
  }
  curv_status status = CURV_OK;
  const ModelPtr model = make_model(blocks, status);
  if (status != CURV_OK) return fail_status(status);

  const int n = curv_model_total_dim(model.get());
  const int k = curv_model_block_count(model.get());
  double tau = 0.0;
  std::vector<double> rho_eigenvalues(static_cast<std::size_t>(n));
  std::vector<double> kappa(static_cast<std::size_t>(k));
  std::vector<double> elementary(static_cast<std::size_t>(k));
  int n_kappa = 0;
  status = curv_model_invariants(model.get(), &tau, rho_eigenvalues.data(), &n_kappa,
                                 kappa.data(), elementary.data());
  if (status != CURV_OK) return fail_status(status);
  kappa.resize(static_cast<std::size_t>(n_kappa));
  elementary.resize(static_cast<std::size_t>(n_kappa));

  std::vector<double> power_sums(kappa.size(), 0.0);
  for (std::size_t order = 1; order <= kappa.size(); ++order) {
    double acc = 0.0;
    for (double v : kappa) {
      double power = 1.0;
      for (std::size_t rep = 0; rep < order; ++rep) power *= v;
      acc += power;
    }
    power_sums[order - 1] = acc;
  }

  if (options.format == "csv") {
    std::ostringstream out;
    out << "quantity,values\n";
    out << "tau," << format_double(tau) << "\n";
    out << "ricci_eigenvalues";
    for (double v : rho_eigenvalues) out << ',' << format_double(v);
    out << "\nper_block";
    for (double v : kappa) out << ',' << format_double(v);
    out << "\nelementary";
    for (double v : elementary) out << ',' << format_double(v);
    out << "\npower_sums";
    for (double v : power_sums) out << ',' << format_double(v);
    out << "\n";
    emit(options, out.str());
  } else {
    cli::json profile{{"tau", tau},
                      {"ricci_eigenvalues", rho_eigenvalues},
                      {"per_block", kappa},
                      {"elementary", elementary},
                      {"power_sums", power_sums}};
    emit(options, cli::dump_json(profile));
  }
  return kExitMember;
}

// ---- mf-alpha ----

int cmd_mf_alpha(const std::string& poly_file, const std::string& points_file,
                 const Options& options) {
  cli::PolyData poly_data;
  std::vector<std::vector<double>> points;
  try {
    poly_data = cli::read_poly_file(poly_file);
    points = cli::read_points_file(points_file, poly_data.p);
  } catch (const cli::ParseFailure& e) {
    return fail(kExitParse, e.what());
  }

  curv_poly* raw = nullptr;
  curv_status status =
      curv_poly_create(poly_data.p, static_cast<int>(poly_data.coefs.size()),
                       poly_data.exps.data(), poly_data.coefs.data(), &raw);
  if (status != CURV_OK) return fail_status(status);
  const PolyPtr poly(raw);

  std::ostringstream out;
  for (int i = 0; i < poly_data.p; ++i) out << 'x' << i + 1 << ',';
  out << "alpha,tau_ambient\n";
  double min_alpha = 0.0;
  double max_alpha = 0.0;
  bool first = true;
  for (const std::vector<double>& point : points) {
    double alpha = 0.0;
    double tau = 0.0;
    status = curv_mf_alpha(poly.get(), point.data(), &alpha);
    if (status != CURV_OK) return fail_status(status);
    status = curv_mf_scalar_curvature(poly.get(), point.data(), &tau);
    if (status != CURV_OK) return fail_status(status);
    for (double c : point) out << format_double(c) << ',';
    out << format_double(alpha) << ',' << format_double(tau) << "\n";
    min_alpha = first ? alpha : std::min(min_alpha, alpha);
    max_alpha = first ? alpha : std::max(max_alpha, alpha);
    first = false;
  }
  const bool nonconstant = (max_alpha - min_alpha) > 1e-6;
  out << "# nonconstancy: " << (nonconstant ? "on" : "off") << "\n";
  emit(options, out.str());
  if (!options.out.empty()) {
    std::cout << "nonconstancy: " << (nonconstant ? "on" : "off") << "\n";
  }
  return kExitMember;
}

// ---- selftest ----

int cmd_selftest(double scale, const Options& options) {
  char* report = nullptr;
  int failed = 0;
  const curv_status status = curv_selftest(options.seed, scale, options.tol_membership,
                                           options.tol_kernel, &report, &failed);
  if (status != CURV_OK) return fail_status(status);
  std::fputs(report, stdout);
  curv_string_free(report);
  std::cout << (failed == 0 ? "all criteria passed" : "criteria failed") << "\n";
  return failed == 0 ? kExitMember : kExitNonMember;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvlab: canonical curvature tensors and their structure groups"};
  app.require_subcommand(1);

  Options options;
  if (const char* env_seed = std::getenv("CURVLAB_SEED")) {
    options.seed = std::strtoull(env_seed, nullptr, 10);
  }

  std::string form_file, out_file, model_file, matrix_file, poly_file, points_file;
  double selftest_scale = 0.1;

  CLI::App* build = app.add_subcommand(
      "build-rphi", "Build the canonical curvature tensor of a symmetric form");
  build->add_option("form_file", form_file, "Symmetric form JSON")->required();
  build->add_option("out_file", out_file, "Output tensor JSON")->required();
  add_common_options(build, options);

  CLI::App* membership = app.add_subcommand(
      "check-membership", "Test a matrix against the structure group of a block model");
  membership->add_option("model_file", model_file, "Block model JSON")->required();
  membership->add_option("matrix_file", matrix_file, "Linear map JSON")->required();
  add_common_options(membership, options);

  CLI::App* invariants = app.add_subcommand(
      "invariants", "Scalar, Ricci, and per-block invariants of a block model");
  invariants->add_option("model_file", model_file, "Block model JSON")->required();
  add_common_options(invariants, options);

  CLI::App* alpha = app.add_subcommand(
      "mf-alpha", "Evaluate the manifold-family invariant on a list of points");
  alpha->add_option("poly_file", poly_file, "Polynomial JSON")->required();
  alpha->add_option("points_file", points_file, "Points JSON")->required();
  add_common_options(alpha, options);

  CLI::App* selftest = app.add_subcommand("selftest", "Run the verification suite");
  selftest->add_option("--scale", selftest_scale, "Trial-count multiplier in (0, 1]")
      ->check(CLI::Range(1e-3, 1.0));
  add_common_options(selftest, options);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build_rphi(form_file, out_file, options);
    if (membership->parsed()) return cmd_check_membership(model_file, matrix_file, options);
    if (invariants->parsed()) return cmd_invariants(model_file, options);
    if (alpha->parsed()) return cmd_mf_alpha(poly_file, points_file, options);
    if (selftest->parsed()) return cmd_selftest(selftest_scale, options);
  } catch (const std::exception& e) {
    return fail(kExitFailure, e.what());
  }
  return fail(kExitFailure, "no subcommand selected");
}
