#pragma once

// The rational conformal equivalence between the unit sphere in H^n x H
// minus a point and the group model realized as the boundary of a Siegel
// domain: the transform and its inverse, the standard quaternion-valued
// contact forms on both sides, tangent pushforwards computed from the
// algebraic differential identities, and pointwise residuals for the
// conformality identity in both directions.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "heisenberg.hpp"
#include "quaternion.hpp"

namespace qcg {

// Point of the unit sphere S = {|q|^2 + |p|^2 = 1} in H^n x H. Ambient
// coordinates are the 4n slot components followed by the 4 components of p.
struct SpherePoint {
  HVector q;
  Quaternion p;

  SpherePoint() : q(1) {}
  explicit SpherePoint(int n_) : q(static_cast<std::size_t>(n_)) {}

  int n() const { return static_cast<int>(q.size()); }
  double constraint_residual() const { return std::abs(norm_sq(q) + norm_sq(p) - 1.0); }

  std::vector<double> ambient() const {
    std::vector<double> a(4 * q.size() + 4);
    for (std::size_t b = 0; b < q.size(); ++b)
      for (int m = 0; m < 4; ++m) a[4 * b + m] = q[b].comp(m);
    for (int m = 0; m < 4; ++m) a[4 * q.size() + m] = p.comp(m);
    return a;
  }
  static SpherePoint from_ambient(const std::vector<double>& a) {
    if (a.size() < 8 || a.size() % 4 != 0)
      throw std::domain_error("sphere point needs 4n+4 ambient coordinates");
    SpherePoint s(static_cast<int>(a.size() / 4) - 1);
    for (int b = 0; b < s.n(); ++b)
      for (int m = 0; m < 4; ++m) s.q[b].comp(m) = a[4 * b + m];
    for (int m = 0; m < 4; ++m) s.p.comp(m) = a[4 * s.n() + m];
    return s;
  }
};

// Point of the Siegel-domain boundary {Re p = |q|^2} in H^n x H. The group
// carries coordinates (q, omega) with omega purely imaginary; the two are
// identified by (q, omega) <-> (q, |q|^2 - omega).
struct SiegelPoint {
  HVector q;
  Quaternion p;

  SiegelPoint() : q(1) {}
  explicit SiegelPoint(int n_) : q(static_cast<std::size_t>(n_)) {}

  int n() const { return static_cast<int>(q.size()); }
  double constraint_residual() const { return std::abs(re(p) - norm_sq(q)); }
};

inline SiegelPoint group_to_siegel(const GroupPoint& g) {
  SiegelPoint z(g.n);
  for (int b = 0; b < g.n; ++b) z.q[b] = g.q(b);
  const Quaternion omega(0, g.c[4 * g.n], g.c[4 * g.n + 1], g.c[4 * g.n + 2]);
  z.p = Quaternion(norm_sq(z.q)) - omega;
  return z;
}

inline GroupPoint siegel_to_group(const SiegelPoint& z) {
  GroupPoint g(z.n());
  for (int b = 0; b < g.n; ++b)
    for (int m = 0; m < 4; ++m) g.c[4 * b + m] = z.q[b].comp(m);
  g.c[4 * g.n] = -z.p.x;
  g.c[4 * g.n + 1] = -z.p.y;
  g.c[4 * g.n + 2] = -z.p.z;
  return g;
}

namespace detail {

inline constexpr double kPoleTolSq = 1e-30;

inline Quaternion quat_at(const std::vector<double>& v, int off) {
  return {v[off], v[off + 1], v[off + 2], v[off + 3]};
}

}  // namespace detail

// q' = (1+p)^{-1} q,  p' = (1+p)^{-1}(1-p).  Defined away from p = -1.
inline SiegelPoint cayley(const SpherePoint& s) {
  const Quaternion d = Quaternion::one() + s.p;
  if (norm_sq(d) < detail::kPoleTolSq)
    throw std::domain_error("transform pole: p = -1 is not mapped");
  const Quaternion u = inverse(d);
  SiegelPoint z(s.n());
  for (int b = 0; b < s.n(); ++b) z.q[b] = u * s.q[b];
  z.p = u * (Quaternion::one() - s.p);
  return z;
}

// q = 2(1+p')^{-1} q',  p = (1+p')^{-1}(1-p').  Defined away from p' = -1.
inline SpherePoint inverse_cayley(const SiegelPoint& z) {
  const Quaternion d = Quaternion::one() + z.p;
  if (norm_sq(d) < detail::kPoleTolSq)
    throw std::domain_error("inverse transform pole: p' = -1 is not mapped");
  const Quaternion u = inverse(d);
  SpherePoint s(z.n());
  for (int b = 0; b < z.n(); ++b) s.q[b] = 2.0 * (u * z.q[b]);
  s.p = u * (Quaternion::one() - z.p);
  return s;
}

// Radial component of an ambient vector at a sphere point; zero for genuine
// tangent vectors (the sphere has radius one).
inline double sphere_tangency_residual(const SpherePoint& s, const std::vector<double>& v) {
  const std::vector<double> a = s.ambient();
  double dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * v[i];
  return std::abs(dot);
}

inline std::vector<double> project_sphere_tangent(const SpherePoint& s,
                                                  std::vector<double> v) {
  const std::vector<double> a = s.ambient();
  double dot = 0, nn = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * v[i];
    nn += a[i] * a[i];
  }
  for (std::size_t i = 0; i < a.size(); ++i) v[i] -= (dot / nn) * a[i];
  return v;
}

// Standard contact form on the sphere evaluated on an ambient vector:
//   eta = dq . conj(q) + dp . conj(p) - q . conj(dq) - p . conj(dp)
//       = 2 Im( dq . conj(q) + dp . conj(p) ),
// a purely imaginary quaternion.
inline Quaternion sphere_contact_form(const SpherePoint& s, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != 4 * s.n() + 4)
    throw std::domain_error("tangent vector has wrong ambient dimension");
  Quaternion acc;
  for (int b = 0; b < s.n(); ++b) acc += detail::quat_at(v, 4 * b) * conj(s.q[b]);
  acc += detail::quat_at(v, 4 * s.n()) * conj(s.p);
  return 2.0 * im(acc);
}

// Imaginary-quaternion packaging of the three group contact forms evaluated
// on a group-coordinate tangent: i Theta_1 + j Theta_2 + k Theta_3.
inline Quaternion group_contact_form(const std::vector<std::vector<Poly>>& rows,
                                     const std::vector<double>& at,
                                     const std::vector<double>& v) {
  return {0.0, contact_form_value(rows[0], at, v), contact_form_value(rows[1], at, v),
          contact_form_value(rows[2], at, v)};
}

// Pushforward of an ambient sphere tangent through the transform, from the
// algebraic differentials
//   dp' = -2 (1+p)^{-1} dp (1+p)^{-1},
//   dq' = (1+p)^{-1} [ dq - dp (1+p)^{-1} q ].
struct SiegelTangent {
  HVector dq;
  Quaternion dp;
};
inline SiegelTangent cayley_pushforward(const SpherePoint& s, const std::vector<double>& v) {
  const Quaternion d = Quaternion::one() + s.p;
  if (norm_sq(d) < detail::kPoleTolSq)
    throw std::domain_error("transform pole: p = -1 is not mapped");
  const Quaternion u = inverse(d);
  const Quaternion dp = detail::quat_at(v, 4 * s.n());
  SiegelTangent out;
  out.dq = HVector(s.q.size());
  for (int b = 0; b < s.n(); ++b)
    out.dq[b] = u * (detail::quat_at(v, 4 * b) - dp * (u * s.q[b]));
  out.dp = -2.0 * (u * dp * u);
  return out;
}

// Group-coordinate components of a Siegel tangent at z under the
// identification (q, omega) <-> (q, |q|^2 - omega): slot components are
// unchanged and d(omega) = -Im dp.
inline std::vector<double> siegel_tangent_to_group(const SiegelTangent& tv) {
  const int n = static_cast<int>(tv.dq.size());
  std::vector<double> w(4 * n + 3);
  for (int b = 0; b < n; ++b)
    for (int m = 0; m < 4; ++m) w[4 * b + m] = tv.dq[b].comp(m);
  w[4 * n] = -tv.dp.x;
  w[4 * n + 1] = -tv.dp.y;
  w[4 * n + 2] = -tv.dp.z;
  return w;
}

// Pointwise conformality residual on the sphere side:
//   | 2 (C^* Theta)(v) - |1+p|^{-2} lambda eta(v) conj(lambda) |,
// with lambda = |1+p| (1+p)^{-1} a unit quaternion. The pullback is
// evaluated by pushing v forward and pairing with the group contact form at
// the image point.
inline double conformality_residual(const SpherePoint& s, const std::vector<double>& v) {
  const SiegelPoint z = cayley(s);
  const GroupPoint g = siegel_to_group(z);
  const SiegelTangent tv = cayley_pushforward(s, v);
  const std::vector<double> w = siegel_tangent_to_group(tv);
  const auto rows = contact_form_rows(s.n());
  const Quaternion lhs = 2.0 * group_contact_form(rows, g.c, w);

  const Quaternion d = Quaternion::one() + s.p;
  const Quaternion lam = norm(d) * inverse(d);
  const Quaternion rhs =
      (1.0 / norm_sq(d)) * (lam * sphere_contact_form(s, v) * conj(lam));
  return (lhs - rhs).max_abs();
}
inline double conformality_residual(const SpherePoint& s, const std::vector<double>& v1,
                                    const std::vector<double>& v2) {
  return std::max(conformality_residual(s, v1), conformality_residual(s, v2));
}

// Reciprocal identity expressed from the group side:
//   lambda (C^{-1})^* eta (w) conj(lambda) = (8 / |1+p'|^2) Theta(w),
// with lambda = (1+p')/|1+p'| and w a group-coordinate tangent at z.
inline double conformality_residual_siegel(const SiegelPoint& z,
                                           const std::vector<double>& w) {
  const int n = z.n();
  if (static_cast<int>(w.size()) != 4 * n + 3)
    throw std::domain_error("tangent vector has wrong group dimension");
  const Quaternion d = Quaternion::one() + z.p;
  if (norm_sq(d) < detail::kPoleTolSq)
    throw std::domain_error("inverse transform pole: p' = -1 is not mapped");
  const Quaternion u = inverse(d);
  const SpherePoint s = inverse_cayley(z);

  // Siegel differentials of w: slots verbatim; dp = d|q|^2 - d(omega).
  HVector dq(z.q.size());
  for (int b = 0; b < n; ++b) dq[b] = detail::quat_at(w, 4 * b);
  double dnorm = 0;
  for (int b = 0; b < n; ++b) dnorm += 2.0 * re(dq[b] * conj(z.q[b]));
  const Quaternion domega(0, w[4 * n], w[4 * n + 1], w[4 * n + 2]);
  const Quaternion dpz = Quaternion(dnorm) - domega;

  // Pull back to the sphere through the inverse differentials
  //   dq_S = 2 (1+p')^{-1} [ dq' - dp' (1+p')^{-1} q' ],
  //   dp_S = -2 (1+p')^{-1} dp' (1+p')^{-1}.
  Quaternion eta;
  for (int b = 0; b < n; ++b) {
    const Quaternion dqs = 2.0 * (u * (dq[b] - dpz * (u * z.q[b])));
    eta += dqs * conj(s.q[b]);
  }
  const Quaternion dps = -2.0 * (u * dpz * u);
  eta += dps * conj(s.p);
  eta = 2.0 * im(eta);

  const Quaternion lam = d / norm(d);
  const Quaternion lhs = lam * eta * conj(lam);
  const GroupPoint g = siegel_to_group(z);
  const auto rows = contact_form_rows(n);
  const Quaternion rhs = (8.0 / norm_sq(d)) * group_contact_form(rows, g.c, w);
  return (lhs - rhs).max_abs();
}

// Seeded samplers: a uniform point of the sphere and a uniform unit tangent
// direction at it.
inline SpherePoint random_sphere_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> a(4 * n + 4);
  double nn = 0;
  do {
    nn = 0;
    for (auto& c : a) {
      c = N(rng);
      nn += c * c;
    }
  } while (nn < 1e-12);
  const double inv = 1.0 / std::sqrt(nn);
  for (auto& c : a) c *= inv;
  return SpherePoint::from_ambient(a);
}

inline std::vector<double> random_sphere_tangent(const SpherePoint& s,
                                                 std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> v(4 * s.n() + 4);
  for (auto& c : v) c = N(rng);
  v = project_sphere_tangent(s, v);
  double nn = 0;
  for (double c : v) nn += c * c;
  if (nn > 1e-12) {
    const double inv = 1.0 / std::sqrt(nn);
    for (auto& c : v) c *= inv;
  }
  return v;
}

}  // namespace qcg
