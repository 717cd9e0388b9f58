#pragma once

// Quaternionic function theory: the two first-order Dirac-type operators in
// several quaternionic variables, regular and anti-regular functions, the
// pluriharmonicity criteria for real functions (second-order quaternionic
// operators and the DD exterior operators), the integral completion of an
// admissible real function to an anti-regular one, and the analogous
// first- and second-order systems in the group frame.
//
// Two domains appear: the flat quaternion space (dimension 4n, coordinate
// derivatives) and the group (dimension 4n+3, frame derivatives).

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "calculus.hpp"
#include "decomp.hpp"
#include "field.hpp"
#include "heisenberg.hpp"
#include "quadrature.hpp"
#include "quaternion.hpp"

namespace qcg {

enum class Domain { Flat, Group };

// Quaternion-valued polynomial: F = c0 + i c1 + j c2 + k c3 with polynomial
// components, multiplied by the Hamilton rules.
struct QPoly {
  int dim = 0;
  std::array<Poly, 4> c;

  explicit QPoly(int d) : dim(d) { c.fill(Poly::constant(d, 0.0)); }

  static QPoly real(const Poly& p) {
    QPoly r(p.dim);
    r.c[0] = p;
    return r;
  }
  static QPoly constant(int d, const Quaternion& q) {
    QPoly r(d);
    r.c[0] = Poly::constant(d, q.t);
    r.c[1] = Poly::constant(d, q.x);
    r.c[2] = Poly::constant(d, q.y);
    r.c[3] = Poly::constant(d, q.z);
    return r;
  }
  // The quaternion variable whose four real coordinates sit at off..off+3.
  static QPoly coordinate(int d, int off) {
    QPoly r(d);
    for (int m = 0; m < 4; ++m) r.c[m] = Poly::var(d, off + m);
    return r;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly r(a.dim);
    for (int m = 0; m < 4; ++m) r.c[m] = a.c[m] + b.c[m];
    return r;
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    QPoly r(a.dim);
    for (int m = 0; m < 4; ++m) r.c[m] = a.c[m] - b.c[m];
    return r;
  }
  friend QPoly operator*(double s, const QPoly& a) {
    QPoly r(a.dim);
    for (int m = 0; m < 4; ++m) r.c[m] = s * a.c[m];
    return r;
  }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    // Hamilton product on components (1, i, j, k).
    QPoly r(a.dim);
    r.c[0] = a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
    r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0] + a.c[2] * b.c[3] - a.c[3] * b.c[2];
    r.c[2] = a.c[0] * b.c[2] - a.c[1] * b.c[3] + a.c[2] * b.c[0] + a.c[3] * b.c[1];
    r.c[3] = a.c[0] * b.c[3] + a.c[1] * b.c[2] - a.c[2] * b.c[1] + a.c[3] * b.c[0];
    return r;
  }
  friend QPoly conj(const QPoly& a) {
    QPoly r(a.dim);
    r.c[0] = a.c[0];
    for (int m = 1; m < 4; ++m) r.c[m] = -a.c[m];
    return r;
  }
  QPoly derivative(int i) const {
    QPoly r(dim);
    for (int m = 0; m < 4; ++m) r.c[m] = c[m].derivative(i);
    return r;
  }
  Quaternion eval(const std::vector<double>& p) const {
    return {c[0].eval(p), c[1].eval(p), c[2].eval(p), c[3].eval(p)};
  }
};

// Quaternion-valued field with jet-evaluable components.
struct QuaternionField {
  int dim = 0;
  std::array<ScalarField, 4> comp;

  Quaternion value(const std::vector<double>& p) const {
    return {comp[0](p, 0).value(), comp[1](p, 0).value(), comp[2](p, 0).value(),
            comp[3](p, 0).value()};
  }
  double scale(const std::vector<double>& p) const {
    double m = 1.0;
    for (int k = 0; k < 4; ++k) m = std::max(m, field_scale(comp[k], p));
    return m;
  }
};

inline QuaternionField qfield_from_qpoly(const QPoly& F) {
  QuaternionField r;
  r.dim = F.dim;
  for (int m = 0; m < 4; ++m) r.comp[m] = field_from_poly(F.c[m]);
  return r;
}

namespace detail {
// First derivatives of all four components along the four derivative
// directions of quaternion slot alpha: out[mu] = (d_mu F) as a quaternion,
// where d_mu is the coordinate derivative (flat) or frame derivative (group).
inline std::array<Quaternion, 4> slot_derivatives(const QuaternionField& F, int alpha,
                                                  const std::vector<double>& p, Domain dom) {
  std::array<Quaternion, 4> out;
  if (dom == Domain::Flat) {
    for (int m = 0; m < 4; ++m) {
      Jet j = F.comp[m](p, 1);
      for (int mu = 0; mu < 4; ++mu) out[mu].comp(m) = j.d1(4 * alpha + mu);
    }
  } else {
    const int n = (F.dim - 3) / 4;
    Eigen::MatrixXd C = frame_coefficients(n, p);
    for (int m = 0; m < 4; ++m) {
      Jet j = F.comp[m](p, 1);
      Eigen::VectorXd g(F.dim);
      for (int i = 0; i < F.dim; ++i) g(i) = j.d1(i);
      Eigen::VectorXd fg = C * g;
      for (int mu = 0; mu < 4; ++mu) out[mu].comp(m) = fg(4 * alpha + mu);
    }
  }
  return out;
}
}  // namespace detail

// First-order operators in slot alpha, acting by left multiplication:
// dirac     = d_t F - i d_x F - j d_y F - k d_z F,
// dirac_bar = d_t F + i d_x F + j d_y F + k d_z F.
inline Quaternion dirac(const QuaternionField& F, int alpha, const std::vector<double>& p,
                        Domain dom = Domain::Flat) {
  auto d = detail::slot_derivatives(F, alpha, p, dom);
  return d[0] - Quaternion::i() * d[1] - Quaternion::j() * d[2] - Quaternion::k() * d[3];
}
inline Quaternion dirac_bar(const QuaternionField& F, int alpha, const std::vector<double>& p,
                            Domain dom = Domain::Flat) {
  auto d = detail::slot_derivatives(F, alpha, p, dom);
  return d[0] + Quaternion::i() * d[1] + Quaternion::j() * d[2] + Quaternion::k() * d[3];
}

struct MembershipResult {
  bool member = false;
  double worst = 0.0;
};

// F is regular when dirac_bar annihilates it in every slot; anti-regular when
// dirac does. Checked over a sample of points against a tolerance.
inline MembershipResult is_regular(const QuaternionField& F,
                                   const std::vector<std::vector<double>>& grid, double tol,
                                   Domain dom = Domain::Flat) {
  const int n = dom == Domain::Flat ? F.dim / 4 : (F.dim - 3) / 4;
  MembershipResult r;
  for (const auto& p : grid)
    for (int a = 0; a < n; ++a) r.worst = std::max(r.worst, dirac_bar(F, a, p, dom).max_abs());
  r.member = r.worst <= tol;
  return r;
}
inline MembershipResult is_anti_regular(const QuaternionField& F,
                                        const std::vector<std::vector<double>>& grid, double tol,
                                        Domain dom = Domain::Flat) {
  const int n = dom == Domain::Flat ? F.dim / 4 : (F.dim - 3) / 4;
  MembershipResult r;
  for (const auto& p : grid)
    for (int a = 0; a < n; ++a) r.worst = std::max(r.worst, dirac(F, a, p, dom).max_abs());
  r.member = r.worst <= tol;
  return r;
}

// Second-derivative block of a real field between slots: B(mu, nu) =
// d_mu^(alpha') d_nu^(alpha) f with coordinate (flat) or frame (group)
// derivatives; on the group the order of the two derivatives matters.
namespace detail {
inline Eigen::Matrix4d slot_hessian_block(const ScalarField& f, int alpha_outer, int alpha_inner,
                                          const std::vector<double>& p, Domain dom) {
  Eigen::Matrix4d B;
  if (dom == Domain::Flat) {
    Jet j = f(p, 2);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) B(mu, nu) = j.d2(4 * alpha_outer + mu, 4 * alpha_inner + nu);
  } else {
    SecondOrderData s = second_order(f, p);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        B(mu, nu) = s.fhess(4 * alpha_outer + mu, 4 * alpha_inner + nu);
  }
  return B;
}
}  // namespace detail

enum class PluriKind { Q, Qbar };

// Second-order quaternionic operator on a real function f:
//   Q    : dirac_alpha (dirac_bar_beta f),
//   Qbar : dirac_bar_beta (dirac_alpha f).
// For real f, dirac_bar_beta f has components (d_t f, d_x f, d_y f, d_z f) in
// slot beta and dirac_alpha f the same with minus signs on the imaginary
// parts; the outer operator contracts the mixed second-derivative block with
// the quaternion units.
inline Quaternion pluriharmonic_residual(const ScalarField& f, int alpha, int beta,
                                         const std::vector<double>& p, PluriKind kind,
                                         Domain dom = Domain::Flat) {
  const Quaternion units[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(),
                               Quaternion::k()};
  Quaternion acc{0, 0, 0, 0};
  if (kind == PluriKind::Q) {
    // outer dirac over slot alpha of G = dirac_bar_beta f; G_components(nu) =
    // d_nu^beta f, so d_mu^alpha G has components B(mu, nu).
    Eigen::Matrix4d B = detail::slot_hessian_block(f, alpha, beta, p, dom);
    for (int mu = 0; mu < 4; ++mu) {
      Quaternion row{B(mu, 0), B(mu, 1), B(mu, 2), B(mu, 3)};
      acc += (mu == 0 ? Quaternion::one() : -units[mu]) * row;
    }
  } else {
    // outer dirac_bar over slot beta of G = dirac_alpha f with components
    // (d_t f, -d_x f, -d_y f, -d_z f) in slot alpha.
    Eigen::Matrix4d B = detail::slot_hessian_block(f, beta, alpha, p, dom);
    for (int mu = 0; mu < 4; ++mu) {
      Quaternion row{B(mu, 0), -B(mu, 1), -B(mu, 2), -B(mu, 3)};
      acc += units[mu] * row;
    }
  }
  return acc;
}

// Matrix of the 2-form d(I_i d f): for coordinate Hessian (flat) or frame
// Hessian (group, modulo the vertical forms) H, the matrix is
// Omega_i = I_i^T H - H I_i, and DD_{I_i} f = Omega_i - I_j^T Omega_i I_j
// with j the next cyclic index (equivalently with the third structure).
inline Eigen::MatrixXd dd_matrix(const ScalarField& f, int i, const std::vector<double>& p,
                                 Domain dom = Domain::Flat) {
  if (i < 1 || i > 3) throw std::domain_error("dd_matrix structure index must be 1..3");
  const int n = dom == Domain::Flat ? f.dim / 4 : (f.dim - 3) / 4;
  Eigen::MatrixXd H;
  if (dom == Domain::Flat) {
    Jet jf = f(p, 2);
    H.resize(4 * n, 4 * n);
    for (int a = 0; a < 4 * n; ++a)
      for (int b = 0; b < 4 * n; ++b) H(a, b) = jf.d2(a, b);
  } else {
    H = second_order(f, p).fhess;
  }
  Eigen::MatrixXd Ii = complex_structure(n, i);
  Eigen::MatrixXd omega = Ii.transpose() * H - H * Ii;
  const int j = i % 3 + 1;
  Eigen::MatrixXd Ij = complex_structure(n, j);
  return omega - Ij.transpose() * omega * Ij;
}

inline double dd_operator(const ScalarField& f, int i, const Eigen::VectorXd& X,
                          const Eigen::VectorXd& Y, const std::vector<double>& p,
                          Domain dom = Domain::Flat) {
  return X.transpose() * dd_matrix(f, i, p, dom) * Y;
}

// Quaternion-valued jets: a quadruple of jets multiplied by Hamilton rules.
struct QJet {
  std::array<Jet, 4> c;

  static QJet zero(const JetSpace* sp) {
    QJet r;
    for (int m = 0; m < 4; ++m) r.c[m] = Jet(sp);
    return r;
  }
  friend QJet operator+(const QJet& a, const QJet& b) {
    QJet r;
    for (int m = 0; m < 4; ++m) r.c[m] = a.c[m] + b.c[m];
    return r;
  }
  friend QJet operator*(double s, const QJet& a) {
    QJet r;
    for (int m = 0; m < 4; ++m) r.c[m] = s * a.c[m];
    return r;
  }
  friend QJet operator*(const QJet& a, const QJet& b) {
    QJet r;
    r.c[0] = a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
    r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0] + a.c[2] * b.c[3] - a.c[3] * b.c[2];
    r.c[2] = a.c[0] * b.c[2] - a.c[1] * b.c[3] + a.c[2] * b.c[0] + a.c[3] * b.c[1];
    r.c[3] = a.c[0] * b.c[3] + a.c[1] * b.c[2] - a.c[2] * b.c[1] + a.c[3] * b.c[0];
    return r;
  }
};

// Completion of an admissible real function on flat quaternion space to an
// anti-regular one:
//   F(q) = f(q) + Im  int_0^1 s^2 (dirac_bar_beta f)(sq) conj(q^beta) ds
// (sum over beta). The integrand is evaluated by Gauss-Legendre quadrature;
// jets at the scaled points rebase exactly onto the unscaled base point, so
// the returned field supports derivatives like any other.
inline QuaternionField complete_to_antiregular(const ScalarField& f, int quad_points = 64) {
  const int dim = f.dim;
  if (dim % 4 != 0) throw std::domain_error("completion expects a flat quaternion domain");
  const int n = dim / 4;
  auto nodes = gauss_legendre_01(quad_points);

  // Shared evaluator computing the full quaternion jet of F at (p, order).
  auto eval_all = [f, dim, n, nodes](const std::vector<double>& p, int order) {
    const JetSpace* sp = JetSpace::get(dim, order);
    QJet acc = QJet::zero(sp);
    acc.c[0] = f(p, order);
    for (const auto& [s, w] : nodes) {
      std::vector<double> ps(dim);
      for (int i = 0; i < dim; ++i) ps[i] = s * p[i];
      // Jet of (grad f)(s q) at q = p: take the jet at s p and scale the
      // coefficient of each monomial by s^degree.
      Jet jf = f(ps, order + 1);
      QJet term = QJet::zero(sp);
      for (int beta = 0; beta < n; ++beta) {
        QJet g = QJet::zero(sp);
        for (int nu = 0; nu < 4; ++nu) {
          Jet dnu = jf.derivative(4 * beta + nu);
          Jet scaled(sp);
          for (int idx = 0; idx < sp->size(); ++idx) {
            double m = dnu.coeff(idx);
            for (int k = 0; k < sp->degree[idx]; ++k) m *= s;
            scaled.coeff(idx) = m;
          }
          g.c[nu] = scaled;
        }
        QJet cq = QJet::zero(sp);
        cq.c[0] = Jet::variable(sp, 4 * beta + 0, p[4 * beta + 0]);
        for (int m = 1; m < 4; ++m)
          cq.c[m] = -1.0 * Jet::variable(sp, 4 * beta + m, p[4 * beta + m]);
        term = term + g * cq;
      }
      acc = acc + (w * s * s) * term;
    }
    // Taking Im of the integral keeps components 1..3; acc.c[0] (f plus the
    // real part of the integral) is never used.
    return acc;
  };

  QuaternionField F;
  F.dim = dim;
  // Component 0 is f itself (Im drops the real part of the integral);
  // components 1..3 are the imaginary parts of the integral.
  F.comp[0] = field_from_jet_fn(dim, [f](const std::vector<double>& p, int order) {
    return f(p, order);
  });
  for (int m = 1; m < 4; ++m)
    F.comp[m] = field_from_jet_fn(dim, [eval_all, m](const std::vector<double>& p, int order) {
      return eval_all(p, order).c[m];
    });
  return F;
}

inline Quaternion complete_to_antiregular(const ScalarField& f, const std::vector<double>& p,
                                          int quad_points) {
  return complete_to_antiregular(f, quad_points).value(p);
}

// Anti-regularity in the group frame: the slot-alpha residual
// T_alpha F - i X_alpha F - j Y_alpha F - k Z_alpha F.
inline Quaternion anti_crf_residual(const QuaternionField& F, int alpha,
                                    const std::vector<double>& p) {
  return dirac(F, alpha, p, Domain::Group);
}

// Second-order identities satisfied by the real part f of a group
// anti-regular function: with H the horizontal frame Hessian of f in the
// orthonormal frame,
//   H + sum_s I_s^T H I_s = lambda Id,  lambda = 4(xi_1 w + xi_2 u + xi_3 v)
// where (w, u, v) are the imaginary components of F = f + iw + ju + kv.
// Equivalently Re(D_b Dbar_a f) = lambda delta_ab, which pins the constant:
// in a normalization where the frame vectors have squared length 1/4 the
// right-hand side reads 4 lambda g. Returns the residual tensor
// H + dagger(H) - lambda Id and lambda itself.
struct CrfIdentities {
  Eigen::MatrixXd residual;
  double lambda = 0.0;
};
inline CrfIdentities crf_identities(const QuaternionField& F, const std::vector<double>& p) {
  const int n = (F.dim - 3) / 4;
  SecondOrderData s = second_order(F.comp[0], p);
  CrfIdentities out;
  double lam = 0;
  for (int k = 1; k < 4; ++k) {
    Jet j = F.comp[k](p, 1);
    Eigen::VectorXd g(F.dim);
    for (int i = 0; i < F.dim; ++i) g(i) = j.d1(i);
    // xi_k (component k) = 2 d/d(vertical k).
    lam += 2.0 * g(4 * n + (k - 1));
  }
  out.lambda = 4.0 * lam;
  out.residual = s.fhess + casimir(n, s.fhess) -
                 out.lambda * Eigen::MatrixXd::Identity(4 * n, 4 * n);
  return out;
}

// Annihilated-polynomial witness: a seeded random element of the space of
// quaternion-valued polynomials of total degree <= degree killed by every
// slot operator (the coordinate operators d/dt - i d/dx - j d/dy - k d/dz on
// flat space; their horizontal-frame analogues on the group). The space is
// the kernel of the linear map taking coefficient vectors to the stacked
// coefficients of all slot residuals, computed by a rank-revealing
// decomposition. Constants always lie in the kernel; the returned random
// combination is nonconstant whenever nonconstant solutions exist. The
// result is scaled so its largest coefficient has magnitude one.
inline QPoly anti_regular_witness(int n, int degree, std::uint64_t seed,
                                  Domain dom = Domain::Flat) {
  if (n < 1) throw std::domain_error("anti_regular_witness requires n >= 1");
  if (degree < 1 || degree > 6)
    throw std::domain_error("anti_regular_witness supports degrees 1..6");
  const int dim = (dom == Domain::Flat) ? 4 * n : 4 * n + 3;

  std::vector<Exponents> mons;
  {
    Exponents acc(dim, 0);
    for (int g = 0; g <= degree; ++g) detail::enumerate_exponents(dim, g, 0, acc, mons);
  }
  const int nm = static_cast<int>(mons.size());
  std::map<Exponents, int> eqidx;
  for (int i = 0; i < nm; ++i) eqidx[mons[i]] = i;

  std::vector<VectorFieldPoly> fr;
  if (dom == Domain::Group) fr = frame(n);
  auto vf_apply_q = [&](const VectorFieldPoly& V, const QPoly& F) {
    QPoly r(dim);
    for (int m = 0; m < 4; ++m) r.c[m] = apply_vf_poly(V, F.c[m]);
    return r;
  };

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<long>(n) * 4 * nm, 4L * nm);
  for (int m = 0; m < 4; ++m)
    for (int t = 0; t < nm; ++t) {
      QPoly F(dim);
      F.c[m].add_term(mons[t], 1.0);
      for (int al = 0; al < n; ++al) {
        std::array<QPoly, 4> d = {QPoly(dim), QPoly(dim), QPoly(dim), QPoly(dim)};
        for (int mu = 0; mu < 4; ++mu)
          d[mu] = (dom == Domain::Flat) ? F.derivative(4 * al + mu)
                                        : vf_apply_q(fr[4 * al + mu], F);
        QPoly r = d[0] - QPoly::constant(dim, Quaternion::i()) * d[1] -
                  QPoly::constant(dim, Quaternion::j()) * d[2] -
                  QPoly::constant(dim, Quaternion::k()) * d[3];
        for (int rc = 0; rc < 4; ++rc)
          for (const auto& [e, c] : r.c[rc].terms)
            A((static_cast<long>(al) * 4 + rc) * nm + eqidx.at(e),
              static_cast<long>(m) * nm + t) += c;
      }
    }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-10);
  Eigen::MatrixXd K = lu.kernel();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::VectorXd co(K.cols());
  for (long i = 0; i < K.cols(); ++i) co(i) = N(rng);
  Eigen::VectorXd v = K * co;
  double vmax = v.cwiseAbs().maxCoeff();
  if (vmax > 0) v /= vmax;

  QPoly W(dim);
  for (int m = 0; m < 4; ++m)
    for (int t = 0; t < nm; ++t)
      if (std::abs(v(static_cast<long>(m) * nm + t)) > 1e-13)
        W.c[m].add_term(mons[t], v(static_cast<long>(m) * nm + t));
  return W;
}

}  // namespace qcg
