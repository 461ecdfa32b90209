#include "curvlab/polynomial.hpp"

#include <cmath>

#include "curvlab/errors.hpp"

namespace curvlab {

PolyFunction::PolyFunction(int var_count) : var_count_(var_count) {
  if (var_count_ < 1) raise(ErrorCode::InvalidArgument, "polynomial needs at least one variable");
}

PolyFunction::PolyFunction(int var_count, TermMap terms) : PolyFunction(var_count) {
  for (const auto& [exps, coef] : terms) add_term(exps, coef);
}

PolyFunction PolyFunction::monomial(int var_count, Exponents exps, double coef) {
  PolyFunction f(var_count);
  f.add_term(exps, coef);
  return f;
}

void PolyFunction::add_term(const Exponents& exps, double coef) {
  if (static_cast<int>(exps.size()) != var_count_) {
    raise(ErrorCode::InvalidArgument, "exponent tuple length must equal the variable count");
  }
  for (int e : exps) {
    if (e < 0) raise(ErrorCode::InvalidArgument, "exponents must be nonnegative");
  }
  if (coef == 0.0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, coef);
  } else {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double PolyFunction::eval(const Vector& point) const {
  if (point.size() != var_count_) {
    raise(ErrorCode::InvalidArgument, "evaluation point has the wrong dimension");
  }
  double total = 0.0;
  for (const auto& [exps, coef] : terms_) {
    double term = coef;
    for (int v = 0; v < var_count_; ++v) {
      for (int e = 0; e < exps[static_cast<std::size_t>(v)]; ++e) term *= point[v];
    }
    total += term;
  }
  return total;
}

PolyFunction PolyFunction::partial(int var) const {
  if (var < 0 || var >= var_count_) {
    raise(ErrorCode::InvalidArgument, "partial derivative variable out of range");
  }
  PolyFunction out(var_count_);
  for (const auto& [exps, coef] : terms_) {
    const int e = exps[static_cast<std::size_t>(var)];
    if (e == 0) continue;
    Exponents lowered = exps;
    --lowered[static_cast<std::size_t>(var)];
    out.add_term(lowered, coef * static_cast<double>(e));
  }
  return out;
}

PolyFunction PolyFunction::operator+(const PolyFunction& other) const {
  if (var_count_ != other.var_count_) {
    raise(ErrorCode::InvalidArgument, "adding polynomials of different variable counts");
  }
  PolyFunction out = *this;
  for (const auto& [exps, coef] : other.terms_) out.add_term(exps, coef);
  return out;
}

PolyFunction PolyFunction::scaled(double c) const {
  PolyFunction out(var_count_);
  for (const auto& [exps, coef] : terms_) out.add_term(exps, coef * c);
  return out;
}

SymForm hessian(const PolyFunction& f, const Vector& point) {
  const int p = f.var_count();
  Matrix h(p, p);
  for (int i = 0; i < p; ++i) {
    const PolyFunction fi = f.partial(i);
    for (int j = i; j < p; ++j) {
      h(i, j) = fi.partial(j).eval(point);
      h(j, i) = h(i, j);
    }
  }
  return SymForm(std::move(h));
}

Vector poly_gradient(const PolyFunction& f, const Vector& point) {
  const int p = f.var_count();
  Vector g(p);
  for (int i = 0; i < p; ++i) g[i] = f.partial(i).eval(point);
  return g;
}

}  // namespace curvlab
