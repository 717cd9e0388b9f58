#pragma once

// Horizontal calculus on the group: frame derivatives of scalar fields,
// the horizontal gradient and (non-symmetric) frame Hessian, the
// sub-Laplacian, and a one-jet-evaluation fast path that extracts all
// second-order frame data from a single order-2 coordinate jet.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "heisenberg.hpp"

namespace qcg {

// Frame coefficient matrix at p: row a holds the d/dx_i coefficients of the
// a-th frame field. Horizontal rows are e_a = d_a + (linear vertical terms);
// vertical rows are 2 d_(vertical).
inline Eigen::MatrixXd frame_coefficients(int n, const std::vector<double>& p) {
  const int d = 4 * n + 3;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
  for (int alpha = 0; alpha < n; ++alpha)
    for (int mu = 0; mu < 4; ++mu) {
      const int a = 4 * alpha + mu;
      C(a, a) = 1.0;
      for (int s = 0; s < 3; ++s)
        C(a, 4 * n + s) = kFrameVertSgn[mu][s] * p[4 * alpha + kFrameVertSrc[mu][s]];
    }
  for (int s = 0; s < 3; ++s) C(4 * n + s, 4 * n + s) = 2.0;
  return C;
}

// All second-order frame data of f at p from one order-2 jet. The frame
// Hessian fhess(a, b) = (e_a e_b f)(p) uses the chain rule through the
// coefficient matrix; only the vertical coefficients of the frame vary, and
// each depends on a single coordinate of its own quaternion slot.
struct SecondOrderData {
  int n = 0;
  double value = 0.0;
  Eigen::VectorXd cgrad;  // coordinate gradient, 4n+3
  Eigen::MatrixXd chess;  // coordinate Hessian, symmetric
  Eigen::VectorXd fgrad;  // frame first derivatives, 4n+3
  Eigen::MatrixXd fhess;  // horizontal frame Hessian, 4n x 4n

  double xi(int s) const { return fgrad(4 * n + s); }
  double xi_xi(int s, int t) const { return 4.0 * chess(4 * n + s, 4 * n + t); }
  double grad_norm_sq() const { return fgrad.head(4 * n).squaredNorm(); }
  double sub_laplacian() const { return fhess.trace(); }
};

namespace detail {
// Fill the frame-level data of s from its coordinate-level data at p.
inline void frame_transform(SecondOrderData& s, const std::vector<double>& p) {
  const int n = s.n;
  Eigen::MatrixXd C = frame_coefficients(n, p);
  s.fgrad = C * s.cgrad;
  s.fhess.resize(4 * n, 4 * n);
  for (int beta = 0; beta < n; ++beta)
    for (int nu = 0; nu < 4; ++nu) {
      const int b = 4 * beta + nu;
      const Eigen::VectorXd Hw = s.chess * C.row(b).transpose();
      for (int a = 0; a < 4 * n; ++a) {
        double v = C.row(a) * Hw;
        // e_a hits the coordinate-dependent vertical coefficients of e_b:
        // d_i C(b, 4n+s) is nonzero only at i = 4 beta + src[nu][s], and the
        // horizontal part of e_a is exactly d_a.
        for (int t = 0; t < 3; ++t)
          if (a == 4 * beta + kFrameVertSrc[nu][t]) v += kFrameVertSgn[nu][t] * s.cgrad(4 * n + t);
        s.fhess(a, b) = v;
      }
    }
}
}  // namespace detail

inline SecondOrderData second_order(const ScalarField& f, const std::vector<double>& p) {
  const int d = f.dim;
  if ((d - 3) % 4 != 0 || d < 7)
    throw std::domain_error("second_order expects a group of dimension 4n+3");
  Jet j = f(p, 2);
  SecondOrderData s;
  s.n = (d - 3) / 4;
  s.value = j.value();
  s.cgrad.resize(d);
  for (int i = 0; i < d; ++i) s.cgrad(i) = j.d1(i);
  s.chess.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = i; k < d; ++k) {
      const double v = j.d2(i, k);
      s.chess(i, k) = v;
      s.chess(k, i) = v;
    }
  detail::frame_transform(s, p);
  return s;
}

// Pre-differentiated polynomial field for tight evaluation loops: the value,
// gradient, and Hessian polynomials are compiled once, then each point costs
// one pass over their terms plus the frame transform.
struct CompiledSecondOrder {
  int n = 0;
  int dim = 0;
  CompiledPoly value;
  std::vector<CompiledPoly> grad;
  std::vector<CompiledPoly> hess;  // upper triangle, row-major: (i, k >= i)

  explicit CompiledSecondOrder(const Poly& h) {
    dim = h.dim;
    if ((dim - 3) % 4 != 0 || dim < 7)
      throw std::domain_error("CompiledSecondOrder expects a group of dimension 4n+3");
    n = (dim - 3) / 4;
    value = CompiledPoly::compile(h);
    std::vector<Poly> d1;
    d1.reserve(dim);
    for (int i = 0; i < dim; ++i) d1.push_back(h.derivative(i));
    for (int i = 0; i < dim; ++i) {
      grad.push_back(CompiledPoly::compile(d1[i]));
      for (int k = i; k < dim; ++k) hess.push_back(CompiledPoly::compile(d1[i].derivative(k)));
    }
  }

  SecondOrderData at(const std::vector<double>& p) const {
    SecondOrderData s;
    s.n = n;
    s.value = value.eval(p.data());
    s.cgrad.resize(dim);
    for (int i = 0; i < dim; ++i) s.cgrad(i) = grad[i].eval(p.data());
    s.chess.resize(dim, dim);
    std::size_t idx = 0;
    for (int i = 0; i < dim; ++i)
      for (int k = i; k < dim; ++k) {
        const double v = hess[idx++].eval(p.data());
        s.chess(i, k) = v;
        s.chess(k, i) = v;
      }
    detail::frame_transform(s, p);
    return s;
  }
};

// Second-order data of u = (a f)^e from the second-order data of f at the
// same point, by the scalar chain rule. Requires a f(p) > 0. Much cheaper
// than re-evaluating jets of the composed field, and exact to roundoff.
inline SecondOrderData second_order_scaled_power(const SecondOrderData& s,
                                                 const std::vector<double>& p, double a,
                                                 double e) {
  const double w = a * s.value;
  if (w <= 0.0) throw std::domain_error("second_order_scaled_power: non-positive base");
  const double g1 = e * std::pow(w, e - 1.0) * a;
  const double g2 = e * (e - 1.0) * std::pow(w, e - 2.0) * a * a;
  SecondOrderData r;
  r.n = s.n;
  r.value = std::pow(w, e);
  r.cgrad = g1 * s.cgrad;
  r.chess = g2 * (s.cgrad * s.cgrad.transpose()) + g1 * s.chess;
  detail::frame_transform(r, p);
  return r;
}

inline Eigen::VectorXd horizontal_gradient(const ScalarField& f, const std::vector<double>& p) {
  const int d = f.dim;
  const int n = (d - 3) / 4;
  Jet j = f(p, 1);
  Eigen::VectorXd g(d);
  for (int i = 0; i < d; ++i) g(i) = j.d1(i);
  return (frame_coefficients(n, p) * g).head(4 * n);
}

inline double grad_norm_sq(const ScalarField& f, const std::vector<double>& p) {
  return horizontal_gradient(f, p).squaredNorm();
}

inline Eigen::MatrixXd horizontal_hessian(const ScalarField& f, const std::vector<double>& p) {
  return second_order(f, p).fhess;
}

inline double sub_laplacian(const ScalarField& f, const std::vector<double>& p) {
  return second_order(f, p).sub_laplacian();
}

// Iterated frame derivatives: word (a_1, ..., a_k) computes
// (e_{a_1} e_{a_2} ... e_{a_k} f)(p). Each derivative consumes one jet order.
inline double apply_word(const std::vector<VectorFieldPoly>& fr, const std::vector<int>& word,
                         const ScalarField& f, const std::vector<double>& p) {
  const int k = static_cast<int>(word.size());
  if (k > kMaxJetOrder)
    throw std::domain_error("derivative word of length " + std::to_string(k) +
                            " requires jet order " + std::to_string(k) +
                            "; maximum supported order is " + std::to_string(kMaxJetOrder));
  ScalarField g = f;
  for (int i = k - 1; i >= 0; --i) g = apply_vf(fr[word[i]], g);
  return g(p, 0).value();
}

inline double apply_word(int n, const std::vector<int>& word, const ScalarField& f,
                         const std::vector<double>& p) {
  return apply_word(frame(n), word, f, p);
}

// Coordinate frame on flat H^n (dimension 4n, no vertical directions).
inline std::vector<VectorFieldPoly> flat_frame(int n) {
  std::vector<VectorFieldPoly> F;
  F.reserve(4 * n);
  for (int i = 0; i < 4 * n; ++i) {
    VectorFieldPoly V(4 * n);
    V.coeff[i] = Poly::constant(4 * n, 1.0);
    F.push_back(std::move(V));
  }
  return F;
}

}  // namespace qcg
