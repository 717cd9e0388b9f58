#pragma once

// Decomposition of horizontal 2-tensors under the three almost complex
// structures: the quaternionic triple I_1, I_2, I_3 on the horizontal space,
// the fundamental 2-forms, the four-fold type decomposition, and the
// Casimir-type splitting into the [3] and [-1] eigenspaces.

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace qcg {

// 4n x 4n block-diagonal matrix of I_s acting on the horizontal frame
// (T, X, Y, Z per quaternion slot); column a holds the image of e_a.
// I_1: (T,X,Y,Z) -> (X,-T,Z,-Y); I_2: -> (Y,-Z,-T,X); I_3: -> (Z,Y,-X,-T).
inline Eigen::MatrixXd complex_structure(int n, int s) {
  if (s < 1 || s > 3) throw std::domain_error("complex structure index must be 1..3");
  Eigen::Matrix4d B = Eigen::Matrix4d::Zero();
  switch (s) {
    case 1:
      B(1, 0) = 1;  B(0, 1) = -1;  B(3, 2) = 1;  B(2, 3) = -1;
      break;
    case 2:
      B(2, 0) = 1;  B(3, 1) = -1;  B(0, 2) = -1;  B(1, 3) = 1;
      break;
    default:
      B(3, 0) = 1;  B(2, 1) = 1;  B(1, 2) = -1;  B(0, 3) = -1;
      break;
  }
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int alpha = 0; alpha < n; ++alpha) I.block<4, 4>(4 * alpha, 4 * alpha) = B;
  return I;
}

// Matrix of the fundamental 2-form omega_s on the horizontal frame:
// omega_s(u, v) = u^T W v, with omega_1(T, X) = +1.
inline Eigen::MatrixXd fundamental_form(int n, int s) {
  return complex_structure(n, s).transpose();
}

// Casimir-type operator on bilinear forms: (dagger M) = sum_s I_s^T M I_s.
// Its eigenvalues on the relevant invariant subspaces are 3 and -1.
inline Eigen::MatrixXd casimir(int n, const Eigen::MatrixXd& M) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(M.rows(), M.cols());
  for (int s = 1; s <= 3; ++s) {
    Eigen::MatrixXd I = complex_structure(n, s);
    r += I.transpose() * M * I;
  }
  return r;
}

// Projections onto the Casimir eigenspaces: P3 = (dagger + 1)/4 and
// Pm1 = (3 - dagger)/4.
inline Eigen::MatrixXd project_3(int n, const Eigen::MatrixXd& M) {
  return 0.25 * (casimir(n, M) + M);
}
inline Eigen::MatrixXd project_minus1(int n, const Eigen::MatrixXd& M) {
  return 0.25 * (3.0 * M - casimir(n, M));
}

struct CasimirSplit {
  Eigen::MatrixXd part3;
  Eigen::MatrixXd part_minus1;
};
inline CasimirSplit split_3_minus1(int n, const Eigen::MatrixXd& M) {
  return {project_3(n, M), project_minus1(n, M)};
}

// Four-fold type decomposition of a bilinear form by the signs epsilon_s in
// Psi(I_s ., I_s .) = epsilon_s Psi. Since the three involutions multiply as
// the quaternion units, only the patterns +++, +--, -+-, --+ occur; the +++
// part is the one commuting with the whole triple.
struct FourPart {
  Eigen::MatrixXd ppp, pmm, mpm, mmp;
};
inline FourPart four_part(int n, const Eigen::MatrixXd& M) {
  Eigen::MatrixXd t1 = complex_structure(n, 1).transpose() * M * complex_structure(n, 1);
  Eigen::MatrixXd t2 = complex_structure(n, 2).transpose() * M * complex_structure(n, 2);
  Eigen::MatrixXd t3 = complex_structure(n, 3).transpose() * M * complex_structure(n, 3);
  FourPart r;
  r.ppp = 0.25 * (M + t1 + t2 + t3);
  r.pmm = 0.25 * (M + t1 - t2 - t3);
  r.mpm = 0.25 * (M - t1 + t2 - t3);
  r.mmp = 0.25 * (M - t1 - t2 + t3);
  return r;
}

// Symmetric part projected to the [-1] eigenspace.
inline Eigen::MatrixXd project_sym_minus1(int n, const Eigen::MatrixXd& M) {
  Eigen::MatrixXd S = 0.5 * (M + M.transpose());
  return project_minus1(n, S);
}

// Trace-free [3] component (the [3] part of a symmetric tensor is a multiple
// of the metric plus a trace-free remainder; this returns the remainder).
inline Eigen::MatrixXd project_3_0(int n, const Eigen::MatrixXd& M) {
  Eigen::MatrixXd P = project_3(n, 0.5 * (M + M.transpose()));
  const double tr = P.trace() / (4.0 * n);
  return P - tr * Eigen::MatrixXd::Identity(4 * n, 4 * n);
}

// A horizontal 2-tensor with its slot count, serialized row-major.
struct HTensor {
  int n = 0;
  Eigen::MatrixXd m;

  HTensor() = default;
  HTensor(int n_, Eigen::MatrixXd m_) : n(n_), m(std::move(m_)) {
    if (m.rows() != 4 * n || m.cols() != 4 * n)
      throw std::domain_error("HTensor must be 4n x 4n");
  }
  double max_abs() const { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
};

inline void to_json(nlohmann::json& j, const HTensor& t) {
  std::vector<double> flat;
  flat.reserve(t.m.size());
  for (int r = 0; r < t.m.rows(); ++r)
    for (int c = 0; c < t.m.cols(); ++c) flat.push_back(t.m(r, c));
  j = nlohmann::json{{"n", t.n}, {"entries", flat}};
}
inline void from_json(const nlohmann::json& j, HTensor& t) {
  t.n = j.at("n").get<int>();
  const auto flat = j.at("entries").get<std::vector<double>>();
  if (static_cast<int>(flat.size()) != 16 * t.n * t.n)
    throw std::domain_error("HTensor entries must have length (4n)^2");
  t.m.resize(4 * t.n, 4 * t.n);
  for (int r = 0; r < 4 * t.n; ++r)
    for (int c = 0; c < 4 * t.n; ++c) t.m(r, c) = flat[static_cast<std::size_t>(r) * 4 * t.n + c];
}

}  // namespace qcg
