#pragma once

// The quaternionic Heisenberg group on H^n x Im H: group law, the
// left-invariant frame, polynomial vector fields and their Lie brackets,
// the standard contact 1-forms with their (constant) exterior derivatives,
// dilations and left translations.
//
// Coordinates are [t^1, x^1, y^1, z^1, ..., t^n, x^n, y^n, z^n, x, y, z]:
// 4 horizontal coordinates per quaternion slot, then the 3 vertical ones.

#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "json.hpp"
#include "poly.hpp"
#include "quaternion.hpp"

namespace qcg {

struct GroupPoint {
  int n = 1;
  std::vector<double> c;  // size 4n+3

  GroupPoint() : c(7, 0.0) {}
  explicit GroupPoint(int n_) : n(n_), c(4 * n_ + 3, 0.0) {}
  GroupPoint(int n_, std::vector<double> coords) : n(n_), c(std::move(coords)) {
    if (static_cast<int>(c.size()) != 4 * n + 3)
      throw std::domain_error("group point has wrong coordinate count");
  }

  int dim() const { return 4 * n + 3; }
  Quaternion q(int alpha) const {
    return {c[4 * alpha], c[4 * alpha + 1], c[4 * alpha + 2], c[4 * alpha + 3]};
  }
  Quaternion omega() const { return {0.0, c[4 * n], c[4 * n + 1], c[4 * n + 2]}; }
  void set_q(int alpha, const Quaternion& v) {
    c[4 * alpha] = v.t;
    c[4 * alpha + 1] = v.x;
    c[4 * alpha + 2] = v.y;
    c[4 * alpha + 3] = v.z;
  }
  void set_omega(const Quaternion& w) {
    c[4 * n] = w.x;
    c[4 * n + 1] = w.y;
    c[4 * n + 2] = w.z;
  }
};

inline void to_json(nlohmann::json& j, const GroupPoint& p) { j = p.c; }
inline void from_json(const nlohmann::json& j, GroupPoint& p) {
  p.c = j.get<std::vector<double>>();
  if (p.c.size() < 7 || (p.c.size() - 3) % 4 != 0)
    throw std::domain_error("group point array must have length 4n+3");
  p.n = static_cast<int>((p.c.size() - 3) / 4);
}

// (q_o, w_o) * (q, w) = (q_o + q, w + w_o + 2 Im(q_o . conj(q))).
inline GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b) {
  if (a.n != b.n) throw std::domain_error("group_mul: mismatched n");
  GroupPoint r(a.n);
  Quaternion s = {0, 0, 0, 0};
  for (int alpha = 0; alpha < a.n; ++alpha) {
    r.set_q(alpha, a.q(alpha) + b.q(alpha));
    s = s + a.q(alpha) * conj(b.q(alpha));
  }
  r.set_omega(b.omega() + a.omega() + 2.0 * im(s));
  return r;
}

inline GroupPoint group_inverse(const GroupPoint& a) {
  GroupPoint r(a.n);
  for (int alpha = 0; alpha < a.n; ++alpha) r.set_q(alpha, -1.0 * a.q(alpha));
  r.set_omega(-1.0 * a.omega());
  return r;
}

inline GroupPoint dilation(double r, const GroupPoint& p) {
  GroupPoint d(p.n);
  for (int i = 0; i < 4 * p.n; ++i) d.c[i] = r * p.c[i];
  for (int i = 4 * p.n; i < p.dim(); ++i) d.c[i] = r * r * p.c[i];
  return d;
}

inline GroupPoint left_translate(const GroupPoint& g0, const GroupPoint& p) {
  return group_mul(g0, p);
}

// A vector field with polynomial coefficients: V = sum_i coeff[i] d/dx_i.
struct VectorFieldPoly {
  int dim = 0;
  std::vector<Poly> coeff;

  explicit VectorFieldPoly(int d) : dim(d), coeff(d, Poly::constant(d, 0.0)) {}

  std::vector<double> at(const std::vector<double>& p) const {
    std::vector<double> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = coeff[i].eval(p);
    return v;
  }
};

inline VectorFieldPoly lie_bracket(const VectorFieldPoly& V, const VectorFieldPoly& W) {
  VectorFieldPoly B(V.dim);
  for (int i = 0; i < V.dim; ++i) {
    Poly s = Poly::constant(V.dim, 0.0);
    for (int j = 0; j < V.dim; ++j) {
      s = s + V.coeff[j] * W.coeff[i].derivative(j) - W.coeff[j] * V.coeff[i].derivative(j);
    }
    B.coeff[i] = s;
  }
  return B;
}

// Differentiate a polynomial along a polynomial vector field, exactly.
inline Poly apply_vf_poly(const VectorFieldPoly& V, const Poly& f) {
  Poly s = Poly::constant(V.dim, 0.0);
  for (int i = 0; i < V.dim; ++i) {
    if (V.coeff[i].is_zero()) continue;
    s = s + V.coeff[i] * f.derivative(i);
  }
  return s;
}

// Differentiate a scalar field along a polynomial vector field; the result
// evaluates at one order lower than the input field supports.
inline ScalarField apply_vf(const VectorFieldPoly& V, const ScalarField& f) {
  ScalarField g;
  g.dim = f.dim;
  g.eval = [V, f](const std::vector<double>& p, int order) {
    Jet jf = f(p, order + 1);
    const JetSpace* lo = JetSpace::get(f.dim, order);
    Jet acc(lo);
    for (int i = 0; i < V.dim; ++i) {
      if (V.coeff[i].is_zero()) continue;
      acc += poly_jet(V.coeff[i], p, lo) * jf.derivative(i);
    }
    return acc;
  };
  return g;
}

// Vertical coefficient pattern of the left-invariant horizontal frame, per
// horizontal type (T, X, Y, Z), as sign and source coordinate within the
// quaternion slot for each of the three vertical directions:
// T: (+2 x^a, +2 y^a, +2 z^a);  X: (-2 t^a, -2 z^a, +2 y^a);
// Y: (+2 z^a, -2 t^a, -2 x^a);  Z: (-2 y^a, +2 x^a, -2 t^a).
inline constexpr int kFrameVertSrc[4][3] = {{1, 2, 3}, {0, 3, 2}, {3, 0, 1}, {2, 1, 0}};
inline constexpr double kFrameVertSgn[4][3] = {
    {2, 2, 2}, {-2, -2, 2}, {2, -2, -2}, {-2, 2, -2}};

// Left-invariant frame, ordered T_1, X_1, Y_1, Z_1, ..., T_n, X_n, Y_n, Z_n,
// xi_1, xi_2, xi_3. Within each quaternion slot the vertical coefficients are
// linear in that slot's coordinates; the vertical fields are 2 d/dx etc.
inline std::vector<VectorFieldPoly> frame(int n) {
  const int d = 4 * n + 3;
  std::vector<VectorFieldPoly> F;
  F.reserve(d);
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int mu = 0; mu < 4; ++mu) {
      VectorFieldPoly V(d);
      V.coeff[4 * alpha + mu] = Poly::constant(d, 1.0);
      for (int s = 0; s < 3; ++s)
        V.coeff[4 * n + s] = kFrameVertSgn[mu][s] * Poly::var(d, 4 * alpha + kFrameVertSrc[mu][s]);
      F.push_back(std::move(V));
    }
  }
  for (int s = 0; s < 3; ++s) {
    VectorFieldPoly V(d);
    V.coeff[4 * n + s] = Poly::constant(d, 2.0);
    F.push_back(std::move(V));
  }
  return F;
}

// The three contact 1-forms as polynomial covectors: row s gives the
// coefficient of dx_i in Theta_s. Normalized so Theta_s(xi_k) = delta_sk.
inline std::vector<std::vector<Poly>> contact_form_rows(int n) {
  const int d = 4 * n + 3;
  std::vector<std::vector<Poly>> rows(3, std::vector<Poly>(d, Poly::constant(d, 0.0)));
  // Horizontal part: for vertical slot s with quaternion unit i_s,
  // Theta_s = 1/2 dv_s + sum_a [t^a d(a_s) - a_s dt^a + b^a d(c_s) - c_s d(b^a)]
  // where (a_s, b_s, c_s) is the cyclic pattern below.
  // s=0: t dx - x dt + y dz - z dy
  // s=1: t dy - y dt + z dx - x dz
  // s=2: t dz - z dt + x dy - y dx
  static const int pat[3][4][2] = {
      // (coefficient coordinate, differential coordinate) offsets within a block
      {{0, 1}, {1, 0}, {2, 3}, {3, 2}},
      {{0, 2}, {2, 0}, {3, 1}, {1, 3}},
      {{0, 3}, {3, 0}, {1, 2}, {2, 1}}};
  static const double psgn[4] = {1, -1, 1, -1};
  for (int s = 0; s < 3; ++s) {
    rows[s][4 * n + s] = Poly::constant(d, 0.5);
    for (int alpha = 0; alpha < n; ++alpha)
      for (int k = 0; k < 4; ++k)
        rows[s][4 * alpha + pat[s][k][1]] =
            rows[s][4 * alpha + pat[s][k][1]] + psgn[k] * Poly::var(d, 4 * alpha + pat[s][k][0]);
  }
  return rows;
}

inline double contact_form_value(const std::vector<Poly>& row, const std::vector<double>& p,
                                 const std::vector<double>& v) {
  double acc = 0;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (!row[i].is_zero()) acc += row[i].eval(p) * v[i];
  return acc;
}

// d Theta_s as a constant antisymmetric matrix A, with
// dTheta_s(u, v) = u^T A v. No vertical legs.
// dTheta_1 = sum_a [2 dt^a ^ dx^a + 2 dy^a ^ dz^a], and cyclically in x,y,z.
inline std::vector<std::vector<double>> dtheta_matrix(int n, int s) {
  if (s < 0 || s > 2) throw std::domain_error("form index must be 0, 1 or 2");
  const int d = 4 * n + 3;
  std::vector<std::vector<double>> A(d, std::vector<double>(d, 0.0));
  static const int pairs[3][2][2] = {
      {{0, 1}, {2, 3}},   // dt^dx, dy^dz
      {{0, 2}, {3, 1}},   // dt^dy, dz^dx
      {{0, 3}, {1, 2}}};  // dt^dz, dx^dy
  for (int alpha = 0; alpha < n; ++alpha)
    for (int k = 0; k < 2; ++k) {
      int i = 4 * alpha + pairs[s][k][0], j = 4 * alpha + pairs[s][k][1];
      A[i][j] = 2.0;
      A[j][i] = -2.0;
    }
  return A;
}

inline double dtheta_value(const std::vector<std::vector<double>>& A,
                           const std::vector<double>& u, const std::vector<double>& v) {
  double acc = 0;
  const int d = static_cast<int>(A.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) acc += u[i] * A[i][j] * v[j];
  return acc;
}

// Coordinates of g0 * p as affine polynomials in p. Horizontal slots shift
// by a constant; vertical slot s picks up a linear form from 2 Im(q0 conj(q)).
inline std::vector<Poly> left_translation_map(const GroupPoint& g0) {
  const int n = g0.n;
  const int d = 4 * n + 3;
  std::vector<Poly> phi;
  phi.reserve(d);
  for (int i = 0; i < 4 * n; ++i) phi.push_back(Poly::var(d, i) + Poly::constant(d, g0.c[i]));
  for (int s = 0; s < 3; ++s)
    phi.push_back(Poly::var(d, 4 * n + s) + Poly::constant(d, g0.c[4 * n + s]));
  // conj(q) has coordinates (t, -x, -y, -z); differentiate 2 Im(q0 conj(q)).
  const Quaternion dq[4] = {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}};
  for (int alpha = 0; alpha < n; ++alpha) {
    Quaternion q0 = g0.q(alpha);
    for (int mu = 0; mu < 4; ++mu) {
      Quaternion dv = 2.0 * im(q0 * dq[mu]);
      const double comp[3] = {dv.x, dv.y, dv.z};
      for (int s = 0; s < 3; ++s)
        if (comp[s] != 0.0)
          phi[4 * n + s] = phi[4 * n + s] + comp[s] * Poly::var(d, 4 * alpha + mu);
    }
  }
  return phi;
}

// Exact pullback of a polynomial by left translation: (f o L_{g0})(p) = f(g0 * p).
inline Poly pullback_left_translate(const GroupPoint& g0, const Poly& f) {
  std::vector<Poly> phi = left_translation_map(g0);
  const int d = f.dim;
  Poly out = Poly::constant(d, 0.0);
  for (const auto& [e, c] : f.terms) {
    Poly m = Poly::constant(d, c);
    for (int j = 0; j < d; ++j)
      for (int r = 0; r < e[j]; ++r) m = m * phi[j];
    out = out + m;
  }
  return out;
}

// Pullback of a general scalar field by left translation. The translation is
// affine, so the jet of f at g0 * p rebases exactly: substitute u_j ->
// sum_i B_{ji} v_i into the Taylor polynomial, where B is the constant
// derivative of the translation.
inline ScalarField pullback_left_translate(const GroupPoint& g0, const ScalarField& f) {
  ScalarField g;
  g.dim = f.dim;
  const int n = g0.n;
  g.eval = [g0, f, n](const std::vector<double>& p, int order) {
    GroupPoint base = group_mul(g0, GroupPoint(n, p));
    const JetSpace* sp = JetSpace::get(f.dim, order);
    Jet jf = f(base.c, order);
    std::vector<Poly> lin(f.dim, Poly::constant(f.dim, 0.0));
    for (int i = 0; i < f.dim; ++i) lin[i] = Poly::var(f.dim, i);
    const Quaternion dq[4] = {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}};
    for (int alpha = 0; alpha < n; ++alpha) {
      Quaternion q0 = g0.q(alpha);
      for (int mu = 0; mu < 4; ++mu) {
        Quaternion dv = 2.0 * im(q0 * dq[mu]);
        const double comp[3] = {dv.x, dv.y, dv.z};
        for (int s = 0; s < 3; ++s)
          if (comp[s] != 0.0)
            lin[4 * n + s] = lin[4 * n + s] + comp[s] * Poly::var(f.dim, 4 * alpha + mu);
      }
    }
    Jet out(sp);
    for (int idx = 0; idx < sp->size(); ++idx) {
      double cb = jf.coeff(idx);
      if (cb == 0.0) continue;
      Poly m = Poly::constant(f.dim, cb);
      const Exponents& e = sp->exps[idx];
      for (int j = 0; j < f.dim; ++j)
        for (int r = 0; r < e[j]; ++r) m = m * lin[j];
      for (const auto& [me, mc] : m.terms) {
        int deg = 0;
        for (auto v : me) deg += v;
        if (deg <= order) out.coeff(sp->index_of(me)) += mc;
      }
    }
    return out;
  };
  return g;
}

}  // namespace qcg
