#pragma once

// Sparse multivariate polynomials. Coefficients are doubles; all polynomial
// identities exercised here involve small integers, so arithmetic on them is
// exact and equality can be tested without tolerances.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace qcg {

using Exponents = std::vector<std::uint8_t>;

struct Poly {
  int dim = 0;
  std::map<Exponents, double> terms;  // exponent vector -> coefficient, no zeros

  Poly() = default;
  explicit Poly(int d) : dim(d) {}

  static Poly constant(int d, double c) {
    Poly p(d);
    if (c != 0.0) p.terms[Exponents(d, 0)] = c;
    return p;
  }
  static Poly var(int d, int i) {
    Poly p(d);
    Exponents e(d, 0);
    e[i] = 1;
    p.terms[e] = 1.0;
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  int degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms) {
      int s = 0;
      for (auto v : e) s += v;
      if (s > deg) deg = s;
    }
    return deg;
  }

  void add_term(const Exponents& e, double c) {
    if (c == 0.0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0.0) terms.erase(it);
    }
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, -c);
    return r;
  }
  friend Poly operator-(const Poly& a) {
    Poly r(a.dim);
    for (const auto& [e, c] : a.terms) r.terms[e] = -c;
    return r;
  }
  friend Poly operator*(double s, const Poly& a) {
    Poly r(a.dim);
    if (s != 0.0)
      for (const auto& [e, c] : a.terms) r.terms[e] = s * c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.dim);
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        Exponents e(ea);
        for (int i = 0; i < a.dim; ++i) e[i] = static_cast<std::uint8_t>(e[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }

  Poly derivative(int i) const {
    Poly r(dim);
    for (const auto& [e, c] : terms) {
      if (e[i] == 0) continue;
      Exponents d(e);
      d[i] -= 1;
      r.add_term(d, c * e[i]);
    }
    return r;
  }

  double eval(const std::vector<double>& p) const {
    double s = 0;
    for (const auto& [e, c] : terms) {
      double m = c;
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < e[i]; ++k) m *= p[i];
      s += m;
    }
    return s;
  }
};

// Flattened polynomial for repeated evaluation at many points: each term is a
// coefficient plus the list of variable indices with multiplicity (degree at
// most 8 per term). Much faster than walking the sparse map.
struct CompiledPoly {
  std::vector<double> coef;
  std::vector<std::array<std::int8_t, 8>> vars;  // -1 padded

  static CompiledPoly compile(const Poly& p) {
    CompiledPoly c;
    for (const auto& [e, v] : p.terms) {
      std::array<std::int8_t, 8> idx;
      idx.fill(-1);
      int k = 0;
      for (int i = 0; i < p.dim; ++i)
        for (int r = 0; r < e[i]; ++r) {
          if (k >= 8) throw std::domain_error("compiled polynomial degree exceeds 8");
          idx[k++] = static_cast<std::int8_t>(i);
        }
      c.coef.push_back(v);
      c.vars.push_back(idx);
    }
    return c;
  }

  double eval(const double* p) const {
    double s = 0;
    for (std::size_t t = 0; t < coef.size(); ++t) {
      double m = coef[t];
      for (int k = 0; k < 8 && vars[t][k] >= 0; ++k) m *= p[vars[t][k]];
      s += m;
    }
    return s;
  }
};

}  // namespace qcg
