#pragma once

// Hypersurfaces of flat quaternion space R^{4(n+1)} = H^{n+1}: the maximal
// subspace of the tangent space invariant under all three ambient complex
// structures, the second fundamental form, the induced one-forms
// theta_j = <., I_j N>, and the two equivalent detection criteria for the
// induced quaternionic contact structure (invariance + definiteness of the
// restricted second fundamental form, and the same for the restricted
// Euclidean Hessian of the defining function).

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "decomp.hpp"
#include "field.hpp"
#include "poly.hpp"

namespace qcg {

// Level set {rho = 0} of a scalar field on R^{4(n+1)} with nonvanishing
// gradient along the surface.
struct Hypersurface {
  ScalarField rho;

  int n() const { return rho.dim / 4 - 1; }
  int ambient_dim() const { return rho.dim; }
};

inline Hypersurface surface_from_poly(const Poly& rho) {
  if (rho.dim % 4 != 0 || rho.dim < 8)
    throw std::domain_error("defining function must live on R^{4(n+1)}, n >= 1");
  return Hypersurface{field_from_poly(rho)};
}

// --- Built-in catalog ---

// Unit sphere |q|^2 + |p|^2 = 1 (all n+1 quaternion slots).
inline Hypersurface surface_sphere(int n) {
  const int d = 4 * (n + 1);
  Poly rho(d);
  for (int i = 0; i < d; ++i) {
    Exponents e(d, 0);
    e[i] = 2;
    rho.add_term(e, 1.0);
  }
  rho.add_term(Exponents(d, 0), -1.0);
  return surface_from_poly(rho);
}

// Ellipsoid sum_a |q^a|^2 / b_a = 1; b has n+1 positive entries.
inline Hypersurface surface_ellipsoid(const std::vector<double>& b) {
  const int d = 4 * static_cast<int>(b.size());
  if (b.size() < 2) throw std::domain_error("ellipsoid needs at least two quaternion slots");
  for (double v : b)
    if (!(v > 0)) throw std::domain_error("ellipsoid semi-axes must be positive");
  Poly rho(d);
  for (int a = 0; a < static_cast<int>(b.size()); ++a)
    for (int m = 0; m < 4; ++m) {
      Exponents e(d, 0);
      e[4 * a + m] = 2;
      rho.add_term(e, 1.0 / b[a]);
    }
  rho.add_term(Exponents(d, 0), -1.0);
  return surface_from_poly(rho);
}

// Coordinate hyperplane t^1 = 0.
inline Hypersurface surface_plane(int n) {
  const int d = 4 * (n + 1);
  Poly rho(d);
  Exponents e(d, 0);
  e[0] = 1;
  rho.add_term(e, 1.0);
  return surface_from_poly(rho);
}

// Sphere deformed by kappa (Re p)^4 in the last slot; breaks the complex
// structure invariance of the second fundamental form for kappa != 0.
inline Hypersurface surface_deformed_sphere(int n, double kappa) {
  const int d = 4 * (n + 1);
  Poly rho(d);
  for (int i = 0; i < d; ++i) {
    Exponents e(d, 0);
    e[i] = 2;
    rho.add_term(e, 1.0);
  }
  Exponents e4(d, 0);
  e4[4 * n] = 4;
  rho.add_term(e4, kappa);
  rho.add_term(Exponents(d, 0), -1.0);
  return surface_from_poly(rho);
}

// --- Pointwise geometry ---

// Unit normal, the three directions I_j N spanning the complement of the
// horizontal space inside the tangent space, and an orthonormal basis of the
// maximal invariant subspace H_p = T_pM  ∩ I_1 T_pM ∩ I_2 T_pM ∩ I_3 T_pM,
// which equals the orthogonal complement of span{N, I_1 N, I_2 N, I_3 N}.
struct SurfaceFrame {
  Eigen::VectorXd normal;      // unit length
  Eigen::MatrixXd theta_dirs;  // 3 columns: I_1 N, I_2 N, I_3 N
  Eigen::MatrixXd horizontal;  // 4(n+1) x 4n, orthonormal columns
  double grad_norm = 0.0;
  double value = 0.0;  // rho(p), for on-surface diagnostics
};

inline SurfaceFrame surface_frame(const Hypersurface& h, const std::vector<double>& p) {
  const int d = h.ambient_dim();
  Jet j = h.rho(p, 1);
  Eigen::VectorXd g(d);
  for (int i = 0; i < d; ++i) g(i) = j.d1(i);
  const double gn = g.norm();
  if (gn < 1e-12)
    throw std::domain_error("defining function has degenerate differential at the point");

  SurfaceFrame fr;
  fr.value = j.value();
  fr.grad_norm = gn;
  fr.normal = g / gn;
  Eigen::MatrixXd K(d, 4);
  K.col(0) = fr.normal;
  fr.theta_dirs.resize(d, 3);
  for (int s = 1; s <= 3; ++s) {
    K.col(s) = complex_structure(h.n() + 1, s) * fr.normal;
    fr.theta_dirs.col(s - 1) = K.col(s);
  }
  // K has orthonormal columns (the I_s are orthogonal and antisymmetric), so
  // the trailing factor of a full QR of K spans its orthogonal complement.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
  Eigen::MatrixXd Q = qr.householderQ();
  fr.horizontal = Q.rightCols(d - 4);
  return fr;
}

// Directional derivative of the unit normal field N = D(rho)/|D(rho)| along
// an ambient direction X at p:
//   D_X N = (Hess rho) X / |D rho| - D rho <D rho, (Hess rho) X> / |D rho|^3.
inline Eigen::VectorXd normal_derivative(const Hypersurface& h, const std::vector<double>& p,
                                         const Eigen::VectorXd& X) {
  const int d = h.ambient_dim();
  Jet j = h.rho(p, 2);
  Eigen::VectorXd g(d);
  Eigen::MatrixXd H(d, d);
  for (int a = 0; a < d; ++a) {
    g(a) = j.d1(a);
    for (int b = 0; b < d; ++b) H(a, b) = j.d2(a, b);
  }
  const double gn = g.norm();
  if (gn < 1e-12)
    throw std::domain_error("defining function has degenerate differential at the point");
  const Eigen::VectorXd HX = H * X;
  return HX / gn - g * (g.dot(HX) / (gn * gn * gn));
}

// Second fundamental form II(X, Y) = -<D_X N, Y> for tangent vectors X, Y.
inline double second_fundamental_form(const Hypersurface& h, const std::vector<double>& p,
                                      const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  return -normal_derivative(h, p, X).dot(Y);
}

// Induced one-form theta_j(v) = <v, I_j N>, j in {1,2,3}.
inline double theta_form(const Hypersurface& h, const std::vector<double>& p, int jdx,
                         const Eigen::VectorXd& v) {
  if (jdx < 1 || jdx > 3) throw std::domain_error("theta index must be 1, 2 or 3");
  SurfaceFrame fr = surface_frame(h, p);
  return v.dot(fr.theta_dirs.col(jdx - 1));
}

// d(theta_j)(U, V) for constant ambient extensions of U and V, where the
// bracket term vanishes:
//   d theta_j (U, V) = <V, I_j D_U N> - <U, I_j D_V N>.
inline double dtheta_form(const Hypersurface& h, const std::vector<double>& p, int jdx,
                          const Eigen::VectorXd& U, const Eigen::VectorXd& V) {
  if (jdx < 1 || jdx > 3) throw std::domain_error("theta index must be 1, 2 or 3");
  const Eigen::MatrixXd Ij = complex_structure(h.n() + 1, jdx);
  return V.dot(Ij * normal_derivative(h, p, U)) - U.dot(Ij * normal_derivative(h, p, V));
}

// Residual of the structural identity relating the induced two-forms to the
// second fundamental form on horizontal pairs:
//   d theta_j (I_j X, Y) = II(I_j X, I_j Y) + II(X, Y).
inline double dtheta_ii_residual(const Hypersurface& h, const std::vector<double>& p,
                                 int jdx, const Eigen::VectorXd& X,
                                 const Eigen::VectorXd& Y) {
  const Eigen::MatrixXd Ij = complex_structure(h.n() + 1, jdx);
  const double lhs = dtheta_form(h, p, jdx, Ij * X, Y);
  const double rhs = second_fundamental_form(h, p, Ij * X, Ij * Y) +
                     second_fundamental_form(h, p, X, Y);
  return std::abs(lhs - rhs);
}

// --- Detection ---

enum class QcVerdict { QC, NotQC, Inconclusive };

inline const char* to_string(QcVerdict v) {
  switch (v) {
    case QcVerdict::QC: return "QC";
    case QcVerdict::NotQC: return "not-QC";
    default: return "inconclusive";
  }
}

struct QcCheckResult {
  QcVerdict verdict = QcVerdict::Inconclusive;
  double worst_invariance = 0.0;  // relative to the form's largest entry
  double min_abs_eigenvalue = 0.0;
  bool sign_consistent = true;  // same definiteness sign at and across points
  int points = 0;
  std::string detail;
};

namespace detail {

// Shared verdict logic over a grid for a symmetric horizontal form produced
// per point (the restricted second fundamental form or the restricted
// Hessian of rho). `definite_floor` guards the inconclusive band.
template <typename FormAt>
QcCheckResult qc_check_impl(const Hypersurface& h, const std::vector<std::vector<double>>& grid,
                            double tol, double definite_floor, FormAt&& form_at) {
  QcCheckResult out;
  out.points = static_cast<int>(grid.size());
  int overall_sign = 0;
  double worst = 0.0, min_eig = std::numeric_limits<double>::infinity();
  bool any_indefinite = false;

  for (const auto& p : grid) {
    SurfaceFrame fr = surface_frame(h, p);
    Eigen::MatrixXd M = form_at(p, fr);
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());

    // Invariance under the three complex structures represented on the
    // horizontal basis.
    for (int s = 1; s <= 3; ++s) {
      const Eigen::MatrixXd R =
          fr.horizontal.transpose() * complex_structure(h.n() + 1, s) * fr.horizontal;
      worst = std::max(worst, (R.transpose() * M * R - M).cwiseAbs().maxCoeff() / scale);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    min_eig = std::min(min_eig, std::min(std::abs(lo), std::abs(hi)));
    if (lo * hi < 0 && std::min(std::abs(lo), std::abs(hi)) > definite_floor * scale)
      any_indefinite = true;
    const int sign = (lo > 0 && hi > 0) ? 1 : (lo < 0 && hi < 0) ? -1 : 0;
    if (sign == 0)
      out.sign_consistent = false;
    else if (overall_sign == 0)
      overall_sign = sign;
    else if (sign != overall_sign)
      out.sign_consistent = false;
  }

  out.worst_invariance = worst;
  out.min_abs_eigenvalue = grid.empty() ? 0.0 : min_eig;
  if (any_indefinite || worst > tol) {
    out.verdict = QcVerdict::NotQC;
    out.detail = any_indefinite ? "restricted form is indefinite" : "restricted form is not invariant";
  } else if (!out.sign_consistent || min_eig <= definite_floor) {
    out.verdict = QcVerdict::Inconclusive;
    out.detail = "restricted form is near-degenerate";
  } else {
    out.verdict = QcVerdict::QC;
    out.detail = "restricted form is invariant and definite";
  }
  return out;
}

}  // namespace detail

// Criterion on the second fundamental form: the surface carries the induced
// structure iff II restricted to the horizontal space is invariant under the
// three complex structures and definite.
inline QcCheckResult qc_check(const Hypersurface& h, const std::vector<std::vector<double>>& grid,
                              double tol = 1e-8, double definite_floor = 1e-8) {
  return detail::qc_check_impl(
      h, grid, tol, definite_floor, [&](const std::vector<double>& p, const SurfaceFrame& fr) {
        const int hd = static_cast<int>(fr.horizontal.cols());
        const int d = h.ambient_dim();
        Jet j = h.rho(p, 2);
        Eigen::VectorXd g(d);
        Eigen::MatrixXd H(d, d);
        for (int a = 0; a < d; ++a) {
          g(a) = j.d1(a);
          for (int b = 0; b < d; ++b) H(a, b) = j.d2(a, b);
        }
        // On tangent vectors II(X,Y) = -X^T H Y / |g| + <g,Y>-correction; the
        // columns of fr.horizontal are exactly tangent, so the correction
        // vanishes after projection.
        Eigen::MatrixXd M(hd, hd);
        for (int a = 0; a < hd; ++a) {
          const Eigen::VectorXd HX = H * fr.horizontal.col(a);
          const Eigen::VectorXd DN = HX / fr.grad_norm - g * (g.dot(HX) / std::pow(fr.grad_norm, 3));
          for (int b = 0; b < hd; ++b) M(a, b) = -DN.dot(fr.horizontal.col(b));
        }
        return M;
      });
}

// Independent criterion on the Euclidean Hessian of rho as a quadratic form
// on the horizontal space: symmetric definite and commuting with the complex
// structures. Agrees with qc_check since the restricted second fundamental
// form equals the restricted Hessian scaled by -1/|D rho|.
inline QcCheckResult qc_check_hessian(const Hypersurface& h,
                                      const std::vector<std::vector<double>>& grid,
                                      double tol = 1e-8, double definite_floor = 1e-8) {
  return detail::qc_check_impl(
      h, grid, tol, definite_floor, [&](const std::vector<double>& p, const SurfaceFrame& fr) {
        const int d = h.ambient_dim();
        Jet j = h.rho(p, 2);
        Eigen::MatrixXd H(d, d);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) H(a, b) = j.d2(a, b);
        return Eigen::MatrixXd(fr.horizontal.transpose() * H * fr.horizontal);
      });
}

// Newton projection of an ambient point onto the surface along the gradient
// direction; returns the projected point with |rho| below the tolerance.
inline std::vector<double> project_to_surface(const Hypersurface& h, std::vector<double> p,
                                              double tol = 1e-12, int max_iter = 60) {
  const int d = h.ambient_dim();
  for (int it = 0; it < max_iter; ++it) {
    Jet j = h.rho(p, 1);
    const double v = j.value();
    if (std::abs(v) < tol) return p;
    double gn2 = 0;
    std::vector<double> g(d);
    for (int i = 0; i < d; ++i) {
      g[i] = j.d1(i);
      gn2 += g[i] * g[i];
    }
    if (gn2 < 1e-24)
      throw std::domain_error("projection stalled at a degenerate point");
    for (int i = 0; i < d; ++i) p[i] -= v * g[i] / gn2;
  }
  throw std::domain_error("projection onto the surface did not converge");
}

}  // namespace qcg
