#pragma once

#include <map>
#include <vector>

#include "curvlab/sym_form.hpp"
#include "curvlab/types.hpp"

namespace curvlab {

/// A polynomial f(x_1, ..., x_p) as a monomial-to-coefficient map with exact
/// partial derivatives. Exponents are nonnegative; zero coefficients are
/// never stored.
class PolyFunction {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, double>;

  explicit PolyFunction(int var_count);
  PolyFunction(int var_count, TermMap terms);

  static PolyFunction monomial(int var_count, Exponents exps, double coef);

  int var_count() const { return var_count_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& exps, double coef);

  double eval(const Vector& point) const;

  /// Exact partial derivative in variable `var` (zero-based).
  PolyFunction partial(int var) const;

  PolyFunction operator+(const PolyFunction& other) const;
  PolyFunction scaled(double c) const;

 private:
  int var_count_;
  TermMap terms_;
};

/// H_ij = d^2 f / dx_i dx_j evaluated at the point; exact and symmetric by
/// construction.
SymForm hessian(const PolyFunction& f, const Vector& point);

/// Gradient of f at the point.
Vector poly_gradient(const PolyFunction& f, const Vector& point);

}  // namespace curvlab
