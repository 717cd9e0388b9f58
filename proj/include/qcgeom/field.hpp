#pragma once

// Scalar fields as jet evaluators: a field knows how to produce its
// truncated Taylor expansion at any point to any supported order.
// Polynomial fields expand exactly; combinators build derived fields.

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jet.hpp"
#include "poly.hpp"

namespace qcg {

struct ScalarField {
  int dim = 0;
  std::function<Jet(const std::vector<double>&, int)> eval;

  Jet operator()(const std::vector<double>& p, int order) const {
    if (static_cast<int>(p.size()) != dim)
      throw std::domain_error("field evaluated at point of wrong dimension");
    return eval(p, order);
  }
};

inline ScalarField field_from_poly(Poly poly) {
  ScalarField f;
  f.dim = poly.dim;
  f.eval = [poly = std::move(poly)](const std::vector<double>& p, int order) {
    return poly_jet(poly, p, JetSpace::get(poly.dim, order));
  };
  return f;
}

inline ScalarField field_constant(int dim, double v) {
  ScalarField f;
  f.dim = dim;
  f.eval = [v, dim](const std::vector<double>& p, int order) {
    (void)p;
    return Jet::constant(JetSpace::get(dim, order), v);
  };
  return f;
}

inline ScalarField field_coordinate(int dim, int i) {
  ScalarField f;
  f.dim = dim;
  f.eval = [i, dim](const std::vector<double>& p, int order) {
    return Jet::variable(JetSpace::get(dim, order), i, p[i]);
  };
  return f;
}

inline ScalarField field_from_jet_fn(int dim,
                                     std::function<Jet(const std::vector<double>&, int)> fn) {
  return ScalarField{dim, std::move(fn)};
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return {a.dim, [a, b](const std::vector<double>& p, int n) { return a(p, n) + b(p, n); }};
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return {a.dim, [a, b](const std::vector<double>& p, int n) { return a(p, n) - b(p, n); }};
}
inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return {a.dim, [a, b](const std::vector<double>& p, int n) { return a(p, n) * b(p, n); }};
}
inline ScalarField operator*(double s, const ScalarField& a) {
  return {a.dim, [s, a](const std::vector<double>& p, int n) { return s * a(p, n); }};
}
inline ScalarField field_pow(const ScalarField& a, double e) {
  return {a.dim, [a, e](const std::vector<double>& p, int n) { return a(p, n).pow(e); }};
}
inline ScalarField field_reciprocal(const ScalarField& a) {
  return {a.dim, [a](const std::vector<double>& p, int n) { return a(p, n).reciprocal(); }};
}

// Normalization used by residual tolerances: max(1, largest Taylor
// coefficient of f at p through second order).
inline double field_scale(const ScalarField& f, const std::vector<double>& p) {
  Jet j = f(p, 2);
  double m = j.max_abs_coeff();
  return m > 1.0 ? m : 1.0;
}

}  // namespace qcg
