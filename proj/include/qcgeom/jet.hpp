#pragma once

// Dense truncated Taylor jets: forward-mode automatic differentiation in
// d variables up to order 4. A jet stores the Taylor coefficients of a
// function at a base point, indexed by a shared per-(dim, order) table of
// multi-indices; products and unary compositions are truncated-polynomial
// arithmetic, so all derivatives of polynomial inputs are exact.

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "poly.hpp"

namespace qcg {

inline constexpr int kMaxJetOrder = 4;

namespace detail {
inline std::uint64_t pack_exponents(const Exponents& e) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < e.size(); ++i) key |= std::uint64_t(e[i] & 0x7) << (3 * i);
  return key;
}
}  // namespace detail

struct JetSpace {
  int dim = 0;
  int order = 0;
  std::vector<Exponents> exps;                     // graded order; degree-1 block in variable order
  std::vector<int> degree;                         // total degree per index
  std::unordered_map<std::uint64_t, int> index;    // packed exponents -> position
  std::vector<std::int32_t> mul;                   // flattened (a, b, c) triples: c += a * b
  std::vector<std::vector<std::pair<int, double>>> diff;  // per var: (source index, factor), aligned with lower-order table
  const JetSpace* lower = nullptr;

  int size() const { return static_cast<int>(exps.size()); }

  int index_of(const Exponents& e) const {
    auto it = index.find(detail::pack_exponents(e));
    if (it == index.end()) throw std::domain_error("multi-index outside jet order");
    return it->second;
  }

  static const JetSpace* get(int dim, int order);
};

namespace detail {

inline void enumerate_exponents(int dim, int deg, int pos, Exponents& acc,
                                std::vector<Exponents>& out) {
  if (pos == dim - 1) {
    acc[pos] = static_cast<std::uint8_t>(deg);
    out.push_back(acc);
    acc[pos] = 0;
    return;
  }
  for (int e = deg; e >= 0; --e) {
    acc[pos] = static_cast<std::uint8_t>(e);
    enumerate_exponents(dim, deg - e, pos + 1, acc, out);
  }
  acc[pos] = 0;
}

inline std::unique_ptr<JetSpace> build_space(int dim, int order, const JetSpace* lower) {
  auto sp = std::make_unique<JetSpace>();
  sp->dim = dim;
  sp->order = order;
  sp->lower = lower;
  Exponents acc(dim, 0);
  for (int g = 0; g <= order; ++g) {
    std::size_t before = sp->exps.size();
    enumerate_exponents(dim, g, 0, acc, sp->exps);
    for (std::size_t i = before; i < sp->exps.size(); ++i) sp->degree.push_back(g);
  }
  // The enumeration yields the degree-1 block in variable order, so entry
  // 1 + i is the monomial x_i; positional gradient access relies on this.
  for (int i = 0; i < sp->size(); ++i) sp->index[pack_exponents(sp->exps[i])] = i;

  for (int a = 0; a < sp->size(); ++a) {
    for (int b = 0; b < sp->size(); ++b) {
      if (sp->degree[a] + sp->degree[b] > order) continue;
      Exponents e(sp->exps[a]);
      for (int i = 0; i < dim; ++i) e[i] = static_cast<std::uint8_t>(e[i] + sp->exps[b][i]);
      sp->mul.push_back(a);
      sp->mul.push_back(b);
      sp->mul.push_back(sp->index.at(pack_exponents(e)));
    }
  }

  if (lower != nullptr) {
    sp->diff.resize(dim);
    for (int i = 0; i < dim; ++i) {
      sp->diff[i].reserve(lower->size());
      for (const auto& e : lower->exps) {
        Exponents src(e);
        src[i] += 1;
        sp->diff[i].emplace_back(sp->index.at(pack_exponents(src)), double(src[i]));
      }
    }
  }
  return sp;
}

}  // namespace detail

inline const JetSpace* JetSpace::get(int dim, int order) {
  if (order < 0 || order > kMaxJetOrder)
    throw std::domain_error("jet order " + std::to_string(order) +
                            " requested; supported orders are 0.." +
                            std::to_string(kMaxJetOrder));
  if (dim < 1 || dim > 21) throw std::domain_error("jet dimension out of range");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  // Materialize orders 0..order so every space has its lower-order chain.
  const JetSpace* prev = nullptr;
  for (int o = 0; o <= order; ++o) {
    auto key = std::make_pair(dim, o);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, detail::build_space(dim, o, prev)).first;
    prev = it->second.get();
  }
  return prev;
}

class Jet {
 public:
  Jet() = default;
  explicit Jet(const JetSpace* sp) : sp_(sp), c_(sp->size(), 0.0) {}

  static Jet constant(const JetSpace* sp, double v) {
    Jet j(sp);
    j.c_[0] = v;
    return j;
  }
  static Jet variable(const JetSpace* sp, int i, double v) {
    Jet j(sp);
    j.c_[0] = v;
    if (sp->order >= 1) j.c_[1 + i] = 1.0;
    return j;
  }

  const JetSpace* space() const { return sp_; }
  int dim() const { return sp_->dim; }
  int order() const { return sp_->order; }

  double value() const { return c_[0]; }
  double d1(int i) const { return sp_->order >= 1 ? c_[1 + i] : 0.0; }
  // Second partial derivative (not the raw Taylor coefficient).
  double d2(int i, int j) const {
    Exponents e(sp_->dim, 0);
    e[i] += 1;
    e[j] += 1;
    return c_[sp_->index_of(e)] * (i == j ? 2.0 : 1.0);
  }
  double coeff(int idx) const { return c_[idx]; }
  double coeff(const Exponents& e) const { return c_[sp_->index_of(e)]; }
  double& coeff(int idx) { return c_[idx]; }

  double max_abs_coeff() const {
    double m = 0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  Jet derivative(int i) const {
    if (sp_->lower == nullptr)
      throw std::domain_error("jet order exhausted: derivative of an order-0 jet");
    Jet r(sp_->lower);
    const auto& tbl = sp_->diff[i];
    for (std::size_t k = 0; k < tbl.size(); ++k) r.c_[k] = c_[tbl[k].first] * tbl[k].second;
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend Jet operator-(const Jet& a) {
    Jet r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Jet operator*(double s, const Jet& a) {
    Jet r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  friend Jet operator*(const Jet& a, double s) { return s * a; }
  friend Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c_[0] += s;
    return r;
  }
  friend Jet operator-(const Jet& a, double s) { return a + (-s); }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.sp_);
    const auto& m = a.sp_->mul;
    for (std::size_t t = 0; t < m.size(); t += 3)
      r.c_[m[t + 2]] += a.c_[m[t]] * b.c_[m[t + 1]];
    return r;
  }
  Jet& operator+=(const Jet& b) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& b) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
    return *this;
  }

  // phi(f) for unary phi given the Taylor coefficients phi^(k)(f0)/k!.
  Jet compose_unary(const std::vector<double>& taylor) const {
    Jet p = *this;
    p.c_[0] = 0.0;
    Jet r = Jet::constant(sp_, taylor[sp_->order]);
    for (int k = sp_->order - 1; k >= 0; --k) r = r * p + taylor[k];
    return r;
  }

  Jet pow(double e) const {
    const double g0 = value();
    const int N = sp_->order;
    std::vector<double> t(N + 1);
    if (g0 <= 0.0) throw std::domain_error("jet pow: non-positive base");
    double fall = 1.0, fact = 1.0;
    for (int k = 0; k <= N; ++k) {
      if (k > 0) {
        fall *= (e - (k - 1));
        fact *= k;
      }
      t[k] = fall / fact * std::pow(g0, e - k);
    }
    return compose_unary(t);
  }
  Jet reciprocal() const {
    const double g0 = value();
    if (g0 == 0.0) throw std::domain_error("jet reciprocal at zero");
    const int N = sp_->order;
    std::vector<double> t(N + 1);
    double v = 1.0 / g0;
    for (int k = 0; k <= N; ++k) {
      t[k] = v;
      v *= -1.0 / g0;
    }
    return compose_unary(t);
  }

 private:
  const JetSpace* sp_ = nullptr;
  std::vector<double> c_;
};

// Exact Taylor coefficients of a polynomial at a point:
// coeff(a) = sum over terms e >= a of c * prod_i C(e_i, a_i) p_i^(e_i - a_i).
inline Jet poly_jet(const Poly& poly, const std::vector<double>& p, const JetSpace* sp) {
  static const double binom[9][9] = {
      {1, 0, 0, 0, 0, 0, 0, 0, 0},       {1, 1, 0, 0, 0, 0, 0, 0, 0},
      {1, 2, 1, 0, 0, 0, 0, 0, 0},       {1, 3, 3, 1, 0, 0, 0, 0, 0},
      {1, 4, 6, 4, 1, 0, 0, 0, 0},       {1, 5, 10, 10, 5, 1, 0, 0, 0},
      {1, 6, 15, 20, 15, 6, 1, 0, 0},    {1, 7, 21, 35, 35, 21, 7, 1, 0},
      {1, 8, 28, 56, 70, 56, 28, 8, 1}};
  Jet j(sp);
  for (const auto& [e, c] : poly.terms) {
    for (int idx = 0; idx < sp->size(); ++idx) {
      const Exponents& a = sp->exps[idx];
      double m = c;
      bool ok = true;
      for (int i = 0; i < sp->dim && ok; ++i) {
        if (a[i] > e[i]) {
          ok = false;
          break;
        }
        m *= binom[e[i]][a[i]];
        for (int k = 0; k < e[i] - a[i]; ++k) m *= p[i];
      }
      if (ok) j.coeff(idx) += m;
    }
  }
  return j;
}

}  // namespace qcg
