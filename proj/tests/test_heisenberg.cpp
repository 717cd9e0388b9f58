#include <catch2/catch_amalgamated.hpp>

#include <qcgeom/decomp.hpp>
#include <qcgeom/heisenberg.hpp>

#include <Eigen/Dense>
#include <random>

using namespace qcg;
using Catch::Approx;

namespace {

GroupPoint random_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  GroupPoint p(n);
  for (auto& c : p.c) c = U(rng);
  return p;
}

std::vector<double> random_vec(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::vector<double> v(d);
  for (auto& c : v) c = U(rng);
  return v;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("group law is associative with identity and inverses") {
  std::mt19937_64 rng(31);
  for (int n : {1, 2}) {
    const GroupPoint e(n);
    for (int t = 0; t < 20; ++t) {
      const GroupPoint a = random_point(n, rng), b = random_point(n, rng),
                       c = random_point(n, rng);
      const GroupPoint ab_c = group_mul(group_mul(a, b), c);
      const GroupPoint a_bc = group_mul(a, group_mul(b, c));
      for (int i = 0; i < a.dim(); ++i) CHECK(ab_c.c[i] == Approx(a_bc.c[i]).margin(1e-12));
      const GroupPoint ae = group_mul(a, e), ea = group_mul(e, a);
      for (int i = 0; i < a.dim(); ++i) {
        CHECK(ae.c[i] == Approx(a.c[i]).margin(1e-14));
        CHECK(ea.c[i] == Approx(a.c[i]).margin(1e-14));
      }
      const GroupPoint z = group_mul(a, group_inverse(a));
      for (int i = 0; i < a.dim(); ++i) CHECK(z.c[i] == Approx(0.0).margin(1e-12));
    }
  }
}

TEST_CASE("dilations are automorphisms of the group law") {
  std::mt19937_64 rng(32);
  const int n = 2;
  for (int t = 0; t < 10; ++t) {
    const GroupPoint a = random_point(n, rng), b = random_point(n, rng);
    const double r = 0.3 + t * 0.2;
    const GroupPoint lhs = dilation(r, group_mul(a, b));
    const GroupPoint rhs = group_mul(dilation(r, a), dilation(r, b));
    for (int i = 0; i < a.dim(); ++i) CHECK(lhs.c[i] == Approx(rhs.c[i]).margin(1e-11));
    // Weights: horizontal scale r, vertical scale r^2.
    const GroupPoint d = dilation(r, a);
    CHECK(d.c[0] == Approx(r * a.c[0]));
    CHECK(d.c[4 * n] == Approx(r * r * a.c[4 * n]));
  }
}

TEST_CASE("frame fields are invariant under left translation") {
  std::mt19937_64 rng(33);
  for (int n : {1, 2}) {
    const int d = 4 * n + 3;
    const auto fr = frame(n);
    for (int t = 0; t < 5; ++t) {
      const GroupPoint g0 = random_point(n, rng), p = random_point(n, rng);
      const auto phi = left_translation_map(g0);
      // Constant differential of the affine translation.
      Eigen::MatrixXd B(d, d);
      const std::vector<double> zero(d, 0.0);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) B(j, i) = phi[j].derivative(i).eval(zero);
      const GroupPoint gp = group_mul(g0, p);
      for (int a = 0; a < d; ++a) {
        const auto va = fr[a].at(p.c);
        const auto wa = fr[a].at(gp.c);
        Eigen::VectorXd v(d);
        for (int i = 0; i < d; ++i) v(i) = va[i];
        const Eigen::VectorXd pushed = B * v;
        for (int i = 0; i < d; ++i) CHECK(wa[i] == Approx(pushed(i)).margin(1e-11));
      }
    }
  }
}

TEST_CASE("contact forms are normalized on the frame and left-invariant") {
  std::mt19937_64 rng(34);
  for (int n : {1, 2}) {
    const int d = 4 * n + 3;
    const auto rows = contact_form_rows(n);
    const auto fr = frame(n);
    for (int t = 0; t < 10; ++t) {
      const GroupPoint p = random_point(n, rng);
      // Annihilates the horizontal frame, dual to the vertical frame.
      for (int s = 0; s < 3; ++s) {
        for (int a = 0; a < 4 * n; ++a)
          CHECK(contact_form_value(rows[s], p.c, fr[a].at(p.c)) == Approx(0.0).margin(1e-12));
        for (int k = 0; k < 3; ++k)
          CHECK(contact_form_value(rows[s], p.c, fr[4 * n + k].at(p.c)) ==
                Approx(s == k ? 1.0 : 0.0).margin(1e-13));
      }
      // Pullback by left translation leaves the forms unchanged.
      const GroupPoint g0 = random_point(n, rng);
      const auto phi = left_translation_map(g0);
      Eigen::MatrixXd B(d, d);
      const std::vector<double> zero(d, 0.0);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) B(j, i) = phi[j].derivative(i).eval(zero);
      const GroupPoint gp = group_mul(g0, p);
      const auto v = random_vec(d, rng);
      Eigen::VectorXd ve(d);
      for (int i = 0; i < d; ++i) ve(i) = v[i];
      const Eigen::VectorXd Bv = B * ve;
      std::vector<double> bv(Bv.data(), Bv.data() + d);
      for (int s = 0; s < 3; ++s)
        CHECK(contact_form_value(rows[s], gp.c, bv) ==
              Approx(contact_form_value(rows[s], p.c, v)).margin(1e-11));
    }
  }
}

TEST_CASE("exterior derivative matrices match the differentiated form rows exactly") {
  for (int n : {1, 2}) {
    const int d = 4 * n + 3;
    const auto rows = contact_form_rows(n);
    for (int s = 0; s < 3; ++s) {
      const auto A = dtheta_matrix(n, s);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const Poly expect = rows[s][j].derivative(i) - rows[s][i].derivative(j);
          CHECK(expect == Poly::constant(d, A[i][j]));
          CHECK(A[i][j] == -A[j][i]);
        }
    }
  }
  CHECK_THROWS_AS(dtheta_matrix(1, 3), std::domain_error);
  CHECK_THROWS_AS(dtheta_matrix(1, -1), std::domain_error);
}

TEST_CASE("exterior derivatives pair the frame through the structure matrices") {
  std::mt19937_64 rng(35);
  const int n = 2;
  const auto fr = frame(n);
  const GroupPoint p = random_point(n, rng);
  for (int s = 0; s < 3; ++s) {
    const auto A = dtheta_matrix(n, s);
    const Eigen::MatrixXd I = complex_structure(n, s + 1);
    for (int a = 0; a < 4 * n; ++a)
      for (int b = 0; b < 4 * n; ++b)
        CHECK(dtheta_value(A, fr[a].at(p.c), fr[b].at(p.c)) ==
              Approx(2.0 * I(b, a)).margin(1e-12));
  }
}

TEST_CASE("left-translation pullback of polynomials is exact composition") {
  std::mt19937_64 rng(36);
  const int n = 1, d = 7;
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Poly f = Poly::constant(d, U(rng));
  for (int t = 0; t < 8; ++t) {
    Poly m = Poly::constant(d, U(rng));
    for (int k = 0; k < 2; ++k) m = m * Poly::var(d, static_cast<int>(rng() % d));
    f = f + m;
  }
  const GroupPoint g0 = random_point(n, rng);
  const Poly pulled = pullback_left_translate(g0, f);
  for (int t = 0; t < 10; ++t) {
    const GroupPoint p = random_point(n, rng);
    CHECK(pulled.eval(p.c) == Approx(f.eval(group_mul(g0, p).c)).margin(1e-11));
  }
}

TEST_CASE("group points serialize to coordinate arrays and back") {
  GroupPoint p(2);
  for (int i = 0; i < p.dim(); ++i) p.c[i] = 0.5 * i;
  nlohmann::json j = p;
  const GroupPoint q = j.get<GroupPoint>();
  CHECK(q.n == 2);
  CHECK(max_abs(q.c) == Approx(0.5 * (p.dim() - 1)));
  nlohmann::json bad = std::vector<double>{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(bad.get<GroupPoint>(), std::domain_error);
  CHECK_THROWS_AS(GroupPoint(1, {1.0, 2.0}), std::domain_error);
}
