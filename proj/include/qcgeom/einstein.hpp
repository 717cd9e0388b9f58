#pragma once

// Residual operators for the distinguished conformal factors on the group:
// the explicit solution family, the two second-order identities its members
// satisfy, the Hessian and vertical-Hessian structure, the conformally
// transformed scalar curvature, the traceless Ricci pieces, and the
// associated second-order PDE residual for the conformal factor's power.
// Every operator returns a residual that vanishes (to roundoff) exactly on
// the solution family and is generically nonzero otherwise.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "calculus.hpp"
#include "decomp.hpp"
#include "field.hpp"
#include "poly.hpp"

namespace qcg {

struct SolutionParams {
  double c = 1.0;
  double nu = 1.0;
  double mu0() const { return c * nu * nu; }
};

// h = c [ (1 + nu |q|^2)^2 + nu^2 (x^2 + y^2 + z^2) ], a polynomial of
// degree 4 in the 4n+3 coordinates.
inline Poly solution_h(int n, double c, double nu) {
  const int d = 4 * n + 3;
  Poly q2 = Poly::constant(d, 0.0);
  for (int i = 0; i < 4 * n; ++i) q2 = q2 + Poly::var(d, i) * Poly::var(d, i);
  Poly v2 = Poly::constant(d, 0.0);
  for (int s = 0; s < 3; ++s) v2 = v2 + Poly::var(d, 4 * n + s) * Poly::var(d, 4 * n + s);
  Poly one = Poly::constant(d, 1.0);
  Poly a = one + nu * q2;
  return c * (a * a + (nu * nu) * v2);
}

inline Poly solution_h(int n, const SolutionParams& sp) { return solution_h(n, sp.c, sp.nu); }

// Residual of the first second-order identity:
// 3 H - sum_s I_s^T H I_s + 4 sum_s (xi_s h) I_s^T, which vanishes entrywise
// on the solution family. H is the horizontal frame Hessian.
inline Eigen::MatrixXd residual_con01(const SecondOrderData& s) {
  const int n = s.n;
  Eigen::MatrixXd R = 3.0 * s.fhess - casimir(n, s.fhess);
  for (int k = 1; k <= 3; ++k)
    R += 4.0 * s.xi(k - 1) * complex_structure(n, k).transpose();
  return R;
}
inline Eigen::MatrixXd residual_con01(const ScalarField& h, const std::vector<double>& p) {
  return residual_con01(second_order(h, p));
}
inline double residual_con01(const ScalarField& h, const std::vector<double>& p, int a, int b) {
  return residual_con01(h, p)(a, b);
}

// Residual of the second second-order identity: with
// M = H - 2 h^{-1} dh (x) dh on the horizontal space, the combination
// L = M + sum_s I_s^T M I_s is a multiple of the metric on solutions;
// the residual is the trace-free part of L.
inline HTensor residual_con03(const SecondOrderData& s) {
  const int n = s.n;
  if (s.value == 0.0) throw std::domain_error("residual_con03 requires h != 0");
  Eigen::VectorXd dh = s.fgrad.head(4 * n);
  Eigen::MatrixXd M = s.fhess - (2.0 / s.value) * (dh * dh.transpose());
  Eigen::MatrixXd L = M + casimir(n, M);
  const double tr = L.trace() / (4.0 * n);
  return HTensor(n, L - tr * Eigen::MatrixXd::Identity(4 * n, 4 * n));
}
inline HTensor residual_con03(const ScalarField& h, const std::vector<double>& p) {
  return residual_con03(second_order(h, p));
}

// Deviation of the frame Hessian from the vertical-derivative pattern the
// solution family satisfies: within each quaternion slot,
// H(I_j T, T) = xi_j h, H(T, I_j T) = -xi_j h, and for a cyclic triple
// (i, j, k), H(I_j T, I_i T) = xi_k h, H(I_i T, I_j T) = -xi_k h.
// Returns the largest violation over all slots and index choices.
inline double hessian_relations(const SecondOrderData& s) {
  const int n = s.n;
  double worst = 0.0;
  auto chk = [&](int a, int b, double want) {
    worst = std::max(worst, std::abs(s.fhess(a, b) - want));
  };
  for (int alpha = 0; alpha < n; ++alpha) {
    const int T = 4 * alpha, X = 4 * alpha + 1, Y = 4 * alpha + 2, Z = 4 * alpha + 3;
    chk(X, T, s.xi(0));
    chk(T, X, -s.xi(0));
    chk(Y, T, s.xi(1));
    chk(T, Y, -s.xi(1));
    chk(Z, T, s.xi(2));
    chk(T, Z, -s.xi(2));
    // (i, j, k) cyclic: H(I_j T, I_i T) = xi_k h.
    chk(Y, X, s.xi(2));
    chk(X, Y, -s.xi(2));
    chk(Z, Y, s.xi(0));
    chk(Y, Z, -s.xi(0));
    chk(X, Z, s.xi(1));
    chk(Z, X, -s.xi(1));
  }
  return worst;
}
inline double hessian_relations(const ScalarField& h, const std::vector<double>& p) {
  return hessian_relations(second_order(h, p));
}

// Vertical Hessian structure: on the solution family the three pure second
// vertical derivatives share one constant value (8 c nu^2) and the mixed
// ones vanish.
struct VerticalHessian {
  double common = 0.0;     // mean of xi_s xi_s h
  double max_spread = 0.0; // worst |xi_s xi_s h - common|
  double max_mixed = 0.0;  // worst |xi_s xi_t h|, s != t
};
inline VerticalHessian vertical_hessian(const SecondOrderData& s) {
  VerticalHessian v;
  v.common = (s.xi_xi(0, 0) + s.xi_xi(1, 1) + s.xi_xi(2, 2)) / 3.0;
  for (int a = 0; a < 3; ++a) {
    v.max_spread = std::max(v.max_spread, std::abs(s.xi_xi(a, a) - v.common));
    for (int b = a + 1; b < 3; ++b) v.max_mixed = std::max(v.max_mixed, std::abs(s.xi_xi(a, b)));
  }
  return v;
}
inline VerticalHessian vertical_hessian(const ScalarField& h, const std::vector<double>& p) {
  return vertical_hessian(second_order(h, p));
}

// Scalar curvature after the conformal change by a positive factor h,
// starting from the flat structure:
// Scal_new = -8 (n+2)^2 h^{-1} |grad h|^2 + 8 (n+2) (sub-Laplacian of h).
inline double conformal_scal(const SecondOrderData& s) {
  if (s.value <= 0.0)
    throw std::domain_error("conformal_scal requires a positive conformal factor");
  const double n2 = s.n + 2.0;
  return -8.0 * n2 * n2 / s.value * s.grad_norm_sq() + 8.0 * n2 * s.sub_laplacian();
}
inline double conformal_scal(const ScalarField& h, const std::vector<double>& p) {
  return conformal_scal(second_order(h, p));
}

// Residual of the critical-exponent PDE tying u = (2h)^{-(n+1)} to the
// transformed scalar curvature:
// (sub-Laplacian of u) + (n+1)/(4(n+2)) * scal * u^{(n+2)/(n+1)}.
inline double yamabe_residual(const SecondOrderData& s, double scal) {
  if (s.value <= 0.0) throw std::domain_error("yamabe_residual requires u > 0");
  const double n = s.n;
  return s.sub_laplacian() +
         (n + 1.0) / (4.0 * (n + 2.0)) * scal * std::pow(s.value, (n + 2.0) / (n + 1.0));
}
inline double yamabe_residual(const ScalarField& u, const std::vector<double>& p, double scal) {
  return yamabe_residual(second_order(u, p), scal);
}

// Traceless pieces of the conformally transformed horizontal Ricci tensor
// (the flat structure has vanishing traceless Ricci, so everything comes
// from h): the torsion piece t0 = h^{-1} [H]_{sym,[-1]}, the piece
// u = (2h)^{-1} [H - 2 h^{-1} dh (x) dh]_{[3],0}, and their combination
// ric0 = (2n+2) t0 + 2(2n+5) u.
struct ConformalRicci {
  HTensor t0;
  HTensor u;
  HTensor ric0;
};
inline ConformalRicci conformal_ricci_traceless(const SecondOrderData& s) {
  const int n = s.n;
  if (s.value == 0.0) throw std::domain_error("conformal_ricci_traceless requires h != 0");
  Eigen::VectorXd dh = s.fgrad.head(4 * n);
  Eigen::MatrixXd M = s.fhess - (2.0 / s.value) * (dh * dh.transpose());
  ConformalRicci r;
  r.t0 = HTensor(n, (1.0 / s.value) * project_sym_minus1(n, s.fhess));
  r.u = HTensor(n, (0.5 / s.value) * project_3_0(n, M));
  r.ric0 = HTensor(n, (2.0 * n + 2.0) * r.t0.m + 2.0 * (2.0 * n + 5.0) * r.u.m);
  return r;
}
inline ConformalRicci conformal_ricci_traceless(const ScalarField& h,
                                                const std::vector<double>& p) {
  return conformal_ricci_traceless(second_order(h, p));
}

// Normalization for residual tolerances at a point:
// max(1, |h|, |grad h|^2, |sub-Laplacian of h|).
inline double einstein_scale(const SecondOrderData& s) {
  return std::max({1.0, std::abs(s.value), s.grad_norm_sq(), std::abs(s.sub_laplacian())});
}

}  // namespace qcg
