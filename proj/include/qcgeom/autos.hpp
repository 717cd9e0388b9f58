#pragma once

// Infinitesimal automorphisms of the flat model: vector fields Q whose Lie
// derivative of the triple of contact forms lies in the span of the forms,
//   L_Q Theta_i = nu Theta_i + sum_s o_is Theta_s,  o in so(3).
// Such fields are determined by the triple f_s = Theta_s(Q): on the flat
// model the horizontal part is Q_H = 1/2 I_i grad(f_i) (independent of i)
// and the compatibility conditions reduce to xi_i f_i all equal and
// xi_j f_i = -xi_i f_j. Lie derivatives are evaluated exactly by the Cartan
// formula with jets; a Runge-Kutta flow transport is provided as an
// independent cross-check at looser tolerance.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "calculus.hpp"
#include "decomp.hpp"
#include "field.hpp"
#include "heisenberg.hpp"
#include "quaternion.hpp"

namespace qcg {

// Vector field on the group in coordinate basis; components are scalar
// fields so both exact polynomial fields and derived fields fit.
struct VectorFieldOnGroup {
  int n = 1;
  std::vector<ScalarField> comp;  // 4n+3 entries

  explicit VectorFieldOnGroup(int n_) : n(n_), comp(4 * n_ + 3) {
    for (auto& c : comp) c = field_constant(4 * n_ + 3, 0.0);
  }
  int dim() const { return 4 * n + 3; }

  std::vector<double> value(const std::vector<double>& p) const {
    std::vector<double> v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = comp[i](p, 0).value();
    return v;
  }
};

inline VectorFieldOnGroup field_from_poly_components(int n, const std::vector<Poly>& c) {
  VectorFieldOnGroup Q(n);
  if (static_cast<int>(c.size()) != Q.dim())
    throw std::domain_error("vector field needs 4n+3 components");
  for (int i = 0; i < Q.dim(); ++i) Q.comp[i] = field_from_poly(c[i]);
  return Q;
}

// --- Generators ---

// Dilation generator: coordinates scale with weight one horizontally and
// weight two vertically.
inline VectorFieldOnGroup dilation_field(int n) {
  const int d = 4 * n + 3;
  std::vector<Poly> c(d, Poly::constant(d, 0.0));
  for (int i = 0; i < d; ++i) {
    Exponents e(d, 0);
    e[i] = 1;
    Poly pi(d);
    pi.add_term(e, i < 4 * n ? 1.0 : 2.0);
    c[i] = pi;
  }
  return field_from_poly_components(n, c);
}

// Generator of the left-translation flow s -> (s v) * p: constant slot part
// and vertical part v_vert + 2 Im(v_q conj(q)).
inline VectorFieldOnGroup left_translation_generator(int n, const std::vector<double>& v) {
  const int d = 4 * n + 3;
  if (static_cast<int>(v.size()) != d)
    throw std::domain_error("direction needs 4n+3 components");
  std::vector<Poly> c(d, Poly::constant(d, 0.0));
  for (int i = 0; i < 4 * n; ++i) c[i] = Poly::constant(d, v[i]);
  // 2 Im(v^alpha * conj(q^alpha)): with v = (a,b,cc,dd) and q = (t,x,y,z),
  //   i: -a x + b t - cc z + dd y,  j: -a y + b z + cc t - dd x,
  //   k: -a z - b y + cc x + dd t,  each doubled.
  static const int src[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const double sgn[3][4] = {{-1, 1, -1, 1}, {-1, 1, 1, -1}, {-1, -1, 1, 1}};
  for (int s = 0; s < 3; ++s) {
    Poly acc = Poly::constant(d, v[4 * n + s]);
    for (int a = 0; a < n; ++a)
      for (int m = 0; m < 4; ++m) {
        Exponents e(d, 0);
        e[4 * a + src[s][m]] = 1;
        Poly term(d);
        term.add_term(e, 2.0 * sgn[s][m] * v[4 * a + m]);
        acc = acc + term;
      }
    c[4 * n + s] = acc;
  }
  return field_from_poly_components(n, c);
}

// Generator of the structure-rotating flow (q, omega) -> (e^{s sigma} q,
// e^{s sigma} omega e^{-s sigma}) for imaginary sigma: slots sigma * q^alpha
// and vertical commutator [sigma, omega].
inline VectorFieldOnGroup rotation_generator(int n, const Quaternion& sigma) {
  if (std::abs(re(sigma)) > 1e-14)
    throw std::domain_error("rotation direction must be an imaginary quaternion");
  const int d = 4 * n + 3;
  std::vector<Poly> c(d, Poly::constant(d, 0.0));
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < 4; ++m) {
      // component m of sigma * q^alpha as a linear polynomial in q^alpha
      Poly acc(d);
      for (int r = 0; r < 4; ++r) {
        Quaternion basis;
        basis.comp(r) = 1.0;
        const double coef = (sigma * basis).comp(m);
        if (coef != 0.0) {
          Exponents e(d, 0);
          e[4 * a + r] = 1;
          acc.add_term(e, coef);
        }
      }
      c[4 * a + m] = acc;
    }
  // [sigma, omega] with omega = i v1 + j v2 + k v3.
  for (int s = 0; s < 3; ++s) {
    Poly acc(d);
    for (int r = 0; r < 3; ++r) {
      Quaternion basis;
      basis.comp(r + 1) = 1.0;
      const double coef = (sigma * basis - basis * sigma).comp(s + 1);
      if (coef != 0.0) {
        Exponents e(d, 0);
        e[4 * n + r] = 1;
        acc.add_term(e, coef);
      }
    }
    c[4 * n + s] = acc;
  }
  return field_from_poly_components(n, c);
}

// Generator of the exact isometry (q, omega) -> (q e^{-s sigma}, omega):
// slots -q^alpha sigma, no vertical part.
inline VectorFieldOnGroup right_multiplication_generator(int n, const Quaternion& sigma) {
  if (std::abs(re(sigma)) > 1e-14)
    throw std::domain_error("rotation direction must be an imaginary quaternion");
  const int d = 4 * n + 3;
  std::vector<Poly> c(d, Poly::constant(d, 0.0));
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < 4; ++m) {
      Poly acc(d);
      for (int r = 0; r < 4; ++r) {
        Quaternion basis;
        basis.comp(r) = 1.0;
        const double coef = -(basis * sigma).comp(m);
        if (coef != 0.0) {
          Exponents e(d, 0);
          e[4 * a + r] = 1;
          acc.add_term(e, coef);
        }
      }
      c[4 * a + m] = acc;
    }
  return field_from_poly_components(n, c);
}

// Reeb field xi_s (s in 1..3).
inline VectorFieldOnGroup reeb_field(int n, int s) {
  if (s < 1 || s > 3) throw std::domain_error("vertical index must be 1, 2 or 3");
  const int d = 4 * n + 3;
  std::vector<Poly> c(d, Poly::constant(d, 0.0));
  c[4 * n + (s - 1)] = Poly::constant(d, 2.0);
  return field_from_poly_components(n, c);
}

// --- Construction from a function triple ---

// Candidate automorphism from f_s = Theta_s(Q): horizontal part
// 1/2 I_i grad(f_i) (the index i is a free choice when the triple is
// compatible) plus sum_s f_s xi_s.
inline VectorFieldOnGroup qc_field_from_triple(int n, const std::array<ScalarField, 3>& f,
                                               int grad_index = 1) {
  if (grad_index < 1 || grad_index > 3)
    throw std::domain_error("gradient index must be 1, 2 or 3");
  const int d = 4 * n + 3;
  for (const auto& fs : f)
    if (fs.dim != d) throw std::domain_error("triple must live on 4n+3 coordinates");

  // Frame coefficients of the horizontal part: w = 1/2 I_i u with
  // u_b = (frame_b f_i).
  const auto fr = frame(n);
  const Eigen::MatrixXd Ii = complex_structure(n, grad_index);
  std::vector<ScalarField> w(4 * n);
  for (int a = 0; a < 4 * n; ++a) {
    ScalarField acc = field_constant(d, 0.0);
    for (int b = 0; b < 4 * n; ++b) {
      if (Ii(a, b) == 0.0) continue;
      acc = acc + (0.5 * Ii(a, b)) * apply_vf(fr[b], f[grad_index - 1]);
    }
    w[a] = acc;
  }

  VectorFieldOnGroup Q(n);
  for (int c = 0; c < d; ++c) {
    ScalarField acc = field_constant(d, 0.0);
    for (int a = 0; a < 4 * n; ++a) {
      if (fr[a].coeff[c].is_zero()) continue;
      acc = acc + field_from_poly(fr[a].coeff[c]) * w[a];
    }
    if (c >= 4 * n) acc = acc + 2.0 * f[c - 4 * n];
    Q.comp[c] = acc;
  }
  return Q;
}

// Pointwise compatibility residuals of a triple, evaluated generically with
// the d(Theta) structure terms (they vanish on the flat model but are kept
// in the formulas):
//   diag:     f_j dT_i(xi_j,xi_i) + f_k dT_i(xi_k,xi_i) + xi_i f_i  equal
//             over the three positive permutations (i,j,k);
//   off-diag: ... + xi_j f_i = - (... + xi_i f_j);
//   gradient: 1/2 I_i grad(f_i) independent of i.
struct TripleCompatibility {
  double diag = 0.0;
  double offdiag = 0.0;
  double gradient = 0.0;
};
inline TripleCompatibility triple_compatibility(int n, const std::array<ScalarField, 3>& f,
                                                const std::vector<double>& p) {
  const int d = 4 * n + 3;
  std::array<Eigen::VectorXd, 3> xi;  // xi vectors in coordinates
  for (int s = 0; s < 3; ++s) {
    xi[s] = Eigen::VectorXd::Zero(d);
    xi[s](4 * n + s) = 2.0;
  }
  std::array<std::vector<std::vector<double>>, 3> A;
  for (int s = 0; s < 3; ++s) A[s] = dtheta_matrix(n, s);
  auto dt = [&](int i, int s, int t) {  // dTheta_i(xi_s, xi_t)
    double acc = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) acc += xi[s](a) * A[i][a][b] * xi[t](b);
    return acc;
  };
  // xi_s f_i and frame gradients.
  std::array<SecondOrderData, 3> so;
  std::array<Eigen::VectorXd, 3> grads;
  for (int i = 0; i < 3; ++i) {
    so[i] = second_order(f[i], p);
    grads[i] = so[i].fgrad.head(4 * n);
  }

  TripleCompatibility out;
  // diag terms for (i,j,k) = (1,2,3), (2,3,1), (3,1,2) [0-based below]
  std::array<double, 3> diag;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    diag[i] = so[j].value * dt(i, j, i) + so[k].value * dt(i, k, i) + so[i].xi(i);
  }
  out.diag = std::max({std::abs(diag[0] - diag[1]), std::abs(diag[1] - diag[2]),
                       std::abs(diag[0] - diag[2])});
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double oij = so[i].value * dt(i, i, j) + so[k].value * dt(i, k, j) + so[i].xi(j);
    const double oji = so[j].value * dt(j, j, i) + so[k].value * dt(j, k, i) + so[j].xi(i);
    out.offdiag = std::max(out.offdiag, std::abs(oij + oji));
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const Eigen::VectorXd gi = complex_structure(n, i + 1) * grads[i];
    const Eigen::VectorXd gj = complex_structure(n, j + 1) * grads[j];
    out.gradient = std::max(out.gradient, 0.5 * (gi - gj).cwiseAbs().maxCoeff());
  }
  return out;
}

// --- Lie derivatives ---

// (L_Q Theta_s)(v) for the three forms by the Cartan formula
//   L_Q Theta_s = Q -| dTheta_s + d(Theta_s(Q)),
// evaluated with the constant dTheta matrices and an order-1 jet of the
// scalar function Theta_s(Q).
inline std::array<double, 3> lie_derivative_eta(const VectorFieldOnGroup& Q,
                                                const std::vector<double>& p,
                                                const std::vector<double>& v) {
  const int n = Q.n, d = Q.dim();
  if (static_cast<int>(v.size()) != d)
    throw std::domain_error("tangent vector has wrong dimension");
  const auto rows = contact_form_rows(n);
  const JetSpace* sp1 = JetSpace::get(d, 1);

  std::vector<Jet> jQ;
  jQ.reserve(d);
  for (int i = 0; i < d; ++i) jQ.push_back(Q.comp[i](p, 1));
  std::vector<double> Qp(d);
  for (int i = 0; i < d; ++i) Qp[i] = jQ[i].value();

  std::array<double, 3> out{};
  for (int s = 0; s < 3; ++s) {
    const auto A = dtheta_matrix(n, s);
    double contraction = 0;
    for (int a = 0; a < d; ++a) {
      if (Qp[a] == 0.0) continue;
      for (int b = 0; b < d; ++b) contraction += Qp[a] * A[a][b] * v[b];
    }
    Jet g(sp1);
    for (int i = 0; i < d; ++i) {
      if (rows[s][i].is_zero()) continue;
      g += poly_jet(rows[s][i], p, sp1) * jQ[i];
    }
    double dterm = 0;
    for (int c = 0; c < d; ++c) dterm += g.d1(c) * v[c];
    out[s] = contraction + dterm;
  }
  return out;
}

// Independent cross-check: transport the forms along the flow of Q by a
// fourth-order Runge-Kutta integration of the flow and its linearization,
// and return the central difference
//   [ (phi_eps^* Theta_s)(v) - (phi_{-eps}^* Theta_s)(v) ] / (2 eps),
// which approximates the Lie derivative to second order in eps.
inline std::array<double, 3> lie_derivative_flow(const VectorFieldOnGroup& Q,
                                                 const std::vector<double>& p,
                                                 const std::vector<double>& v,
                                                 double eps = 1e-3, int steps = 4) {
  const int n = Q.n, d = Q.dim();
  const auto rows = contact_form_rows(n);

  auto rhs = [&](const Eigen::VectorXd& state, Eigen::VectorXd& deriv) {
    // state = (x, w): flow point and transported tangent.
    std::vector<double> x(state.data(), state.data() + d);
    std::vector<Jet> jQ;
    jQ.reserve(d);
    for (int i = 0; i < d; ++i) jQ.push_back(Q.comp[i](x, 1));
    deriv.resize(2 * d);
    for (int i = 0; i < d; ++i) {
      deriv(i) = jQ[i].value();
      double acc = 0;
      for (int c = 0; c < d; ++c) acc += jQ[i].d1(c) * state(d + c);
      deriv(d + i) = acc;
    }
  };
  auto integrate = [&](double time) {
    Eigen::VectorXd s(2 * d);
    for (int i = 0; i < d; ++i) {
      s(i) = p[i];
      s(d + i) = v[i];
    }
    const double h = time / steps;
    Eigen::VectorXd k1, k2, k3, k4;
    for (int it = 0; it < steps; ++it) {
      rhs(s, k1);
      rhs(s + 0.5 * h * k1, k2);
      rhs(s + 0.5 * h * k2, k3);
      rhs(s + h * k3, k4);
      s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return s;
  };
  auto pullback = [&](const Eigen::VectorXd& s, int form) {
    std::vector<double> x(s.data(), s.data() + d), w(s.data() + d, s.data() + 2 * d);
    return contact_form_value(rows[form], x, w);
  };

  const Eigen::VectorXd fwd = integrate(eps), bwd = integrate(-eps);
  std::array<double, 3> out{};
  for (int s = 0; s < 3; ++s) out[s] = (pullback(fwd, s) - pullback(bwd, s)) / (2.0 * eps);
  return out;
}

// --- Verdict ---

struct QcFieldPoint {
  double nu = 0.0;
  Eigen::Matrix3d O = Eigen::Matrix3d::Zero();
  double fit_residual = 0.0;   // | A T - L | relative to scale
  double skew_residual = 0.0;  // | O + O^T | relative to scale
  double condition = 0.0;      // conditioning of the form-value matrix
};

struct QcFieldCheck {
  bool pass = false;
  double worst_fit = 0.0;
  double worst_skew = 0.0;
  std::vector<QcFieldPoint> points;
};

// At each grid point, fit L_Q Theta_i = sum_j A_ij Theta_j over all
// coordinate tangent directions by least squares, split A into nu Id + O,
// and demand small fit residual and skew part. Returns the fitted fields.
inline QcFieldCheck qc_field_check(const VectorFieldOnGroup& Q,
                                   const std::vector<std::vector<double>>& grid,
                                   double tol = 1e-10) {
  const int n = Q.n, d = Q.dim();
  const auto rows = contact_form_rows(n);
  QcFieldCheck out;
  out.pass = true;

  for (const auto& p : grid) {
    Eigen::MatrixXd T(3, d), L(3, d);
    for (int c = 0; c < d; ++c) {
      std::vector<double> e(d, 0.0);
      e[c] = 1.0;
      const auto lie = lie_derivative_eta(Q, p, e);
      for (int s = 0; s < 3; ++s) {
        T(s, c) = contact_form_value(rows[s], p, e);
        L(s, c) = lie[s];
      }
    }
    QcFieldPoint pt;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    pt.condition = svd.singularValues()(0) / svd.singularValues()(2);
    const Eigen::Matrix3d A = svd.solve(L.transpose()).transpose();
    const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    pt.fit_residual = (A * T - L).cwiseAbs().maxCoeff() / scale;
    pt.nu = A.trace() / 3.0;
    pt.O = A - pt.nu * Eigen::Matrix3d::Identity();
    pt.skew_residual = (pt.O + pt.O.transpose()).cwiseAbs().maxCoeff() / scale;
    if (pt.fit_residual > tol || pt.skew_residual > tol) out.pass = false;
    out.worst_fit = std::max(out.worst_fit, pt.fit_residual);
    out.worst_skew = std::max(out.worst_skew, pt.skew_residual);
    out.points.push_back(std::move(pt));
  }
  return out;
}

// Per-point dump of the fitted fields for external plotting: one row per
// grid point with the point coordinates, the fitted nu, the nine entries of
// O (row-major), and the fit/skew residuals. grid must be the grid the
// check ran on.
inline void write_qc_field_csv(std::ostream& os, const QcFieldCheck& chk,
                               const std::vector<std::vector<double>>& grid) {
  if (chk.points.size() != grid.size())
    throw std::invalid_argument("qc field dump: grid size does not match check points");
  const int d = grid.empty() ? 0 : static_cast<int>(grid.front().size());
  for (int i = 0; i < d; ++i) os << "p" << i << ",";
  os << "nu";
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) os << ",o" << r << c;
  os << ",fit_residual,skew_residual\n";
  os.precision(17);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (double x : grid[k]) os << x << ",";
    const QcFieldPoint& pt = chk.points[k];
    os << pt.nu;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) os << "," << pt.O(r, c);
    os << "," << pt.fit_residual << "," << pt.skew_residual << "\n";
  }
}

// The triple of form values f_s = Theta_s(Q) as scalar fields, for the
// reconstruction property.
inline std::array<ScalarField, 3> triple_of(const VectorFieldOnGroup& Q) {
  const auto rows = contact_form_rows(Q.n);
  std::array<ScalarField, 3> f;
  for (int s = 0; s < 3; ++s) {
    ScalarField acc = field_constant(Q.dim(), 0.0);
    for (int i = 0; i < Q.dim(); ++i) {
      if (rows[s][i].is_zero()) continue;
      acc = acc + field_from_poly(rows[s][i]) * Q.comp[i];
    }
    f[s] = acc;
  }
  return f;
}

}  // namespace qcg
