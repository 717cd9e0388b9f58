#pragma once

// Quaternion and H^n arithmetic. Multiplication is Hamilton's:
// i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j, applied left to right;
// nothing here assumes commutativity.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qcg {

struct Quaternion {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double t_, double x_, double y_, double z_)
      : t(t_), x(x_), y(y_), z(z_) {}
  // Real scalars embed as t + 0i + 0j + 0k.
  constexpr Quaternion(double real) : t(real) {}

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  // Components in the order (t, x, y, z) = (real, i, j, k).
  double& comp(int m) {
    switch (m) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }
  double comp(int m) const {
    switch (m) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a) {
    return {-a.t, -a.x, -a.y, -a.z};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
            a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
            a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
            a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& a) {
    return {s * a.t, s * a.x, s * a.y, s * a.z};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, double s) { return s * a; }
  friend constexpr Quaternion operator/(const Quaternion& a, double s) {
    return {a.t / s, a.x / s, a.y / s, a.z / s};
  }
  Quaternion& operator+=(const Quaternion& b) { return *this = *this + b; }
  Quaternion& operator-=(const Quaternion& b) { return *this = *this - b; }

  friend constexpr Quaternion conj(const Quaternion& a) {
    return {a.t, -a.x, -a.y, -a.z};
  }
  friend constexpr double re(const Quaternion& a) { return a.t; }
  friend constexpr Quaternion im(const Quaternion& a) { return {0, a.x, a.y, a.z}; }
  friend constexpr double norm_sq(const Quaternion& a) {
    return a.t * a.t + a.x * a.x + a.y * a.y + a.z * a.z;
  }
  friend double norm(const Quaternion& a) { return std::sqrt(norm_sq(a)); }

  friend Quaternion inverse(const Quaternion& a) {
    const double n2 = norm_sq(a);
    if (n2 == 0.0) throw std::domain_error("quaternion inverse of zero");
    return conj(a) / n2;
  }

  // exp(t + v) = e^t (cos|v| + (v/|v|) sin|v|).
  friend Quaternion exp(const Quaternion& a) {
    const Quaternion v = im(a);
    const double r = norm(v);
    const double e = std::exp(a.t);
    if (r == 0.0) return {e, 0, 0, 0};
    const double s = e * std::sin(r) / r;
    return Quaternion{e * std::cos(r), 0, 0, 0} + s * v;
  }

  double max_abs() const {
    return std::max(std::max(std::abs(t), std::abs(x)),
                    std::max(std::abs(y), std::abs(z)));
  }
};

// Point/vector in H^n.
struct HVector {
  std::vector<Quaternion> entries;

  HVector() = default;
  explicit HVector(std::size_t n) : entries(n) {}
  HVector(std::initializer_list<Quaternion> qs) : entries(qs) {}

  std::size_t size() const { return entries.size(); }
  Quaternion& operator[](std::size_t i) { return entries[i]; }
  const Quaternion& operator[](std::size_t i) const { return entries[i]; }

  friend HVector operator+(const HVector& a, const HVector& b) {
    HVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend HVector operator-(const HVector& a, const HVector& b) {
    HVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
  }
  friend HVector operator-(const HVector& a) {
    HVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
  }
  friend HVector operator*(double s, const HVector& a) {
    HVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
  }
};

// q_o . conj(q) = sum_alpha q_o^alpha * conj(q^alpha).
inline Quaternion dot_conj(const HVector& a, const HVector& b) {
  Quaternion s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * conj(b[i]);
  return s;
}

inline double norm_sq(const HVector& a) {
  double s = 0;
  for (const auto& q : a.entries) s += norm_sq(q);
  return s;
}

}  // namespace qcg
