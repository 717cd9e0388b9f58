#include <catch2/catch_amalgamated.hpp>

#include <qcgeom/einstein.hpp>
#include <qcgeom/heisenberg.hpp>

#include <random>

using namespace qcg;
using Catch::Approx;

namespace {

GroupPoint random_group_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  GroupPoint g(n);
  for (auto& c : g.c) c = U(rng);
  return g;
}

std::vector<double> random_point(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::vector<double> p(d);
  for (auto& c : p) c = U(rng);
  return p;
}

}  // namespace

TEST_CASE("distinguished conformal factors satisfy both second-order identities") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> P(0.2, 2.0);
  for (int n : {1, 2}) {
    const int d = 4 * n + 3;
    for (int inst = 0; inst < 3; ++inst) {
      const double c = P(rng), nu = P(rng);
      const GroupPoint g0 = random_group_point(n, rng);
      const Poly h = pullback_left_translate(g0, solution_h(n, c, nu));
      const CompiledSecondOrder fast(h);
      for (int t = 0; t < 25; ++t) {
        const auto p = random_point(d, rng);
        const SecondOrderData s = fast.at(p);
        const double scale = einstein_scale(s);
        CHECK(residual_con01(s).cwiseAbs().maxCoeff() < 1e-8 * scale);
        CHECK(hessian_relations(s) < 1e-8 * scale);
        const VerticalHessian v = vertical_hessian(s);
        CHECK(v.max_spread < 1e-8 * scale);
        CHECK(v.max_mixed < 1e-8 * scale);
        CHECK(v.common == Approx(8.0 * c * nu * nu).epsilon(1e-9));
        if (n >= 2) CHECK(residual_con03(s).max_abs() < 1e-8 * scale);
        const ConformalRicci r = conformal_ricci_traceless(s);
        CHECK(r.t0.max_abs() < 1e-8 * scale);
        CHECK(r.u.max_abs() < 1e-8 * scale);
        CHECK(r.ric0.max_abs() < 1e-8 * scale);
      }
    }
  }
}

TEST_CASE("transformed scalar curvature is the expected constant") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> P(0.2, 2.0);
  for (int n : {1, 2, 3}) {
    const int d = 4 * n + 3;
    const double c = P(rng), nu = P(rng);
    const Poly h = solution_h(n, c, nu);
    const CompiledSecondOrder fast(h);
    const double expect = 128.0 * n * (n + 2) * c * nu;
    for (int t = 0; t < 20; ++t) {
      const auto p = random_point(d, rng);
      CHECK(conformal_scal(fast.at(p)) == Approx(expect).epsilon(1e-9));
    }
    // Left translates carry the same constant.
    const Poly ht = pullback_left_translate(random_group_point(n, rng), h);
    const CompiledSecondOrder fast_t(ht);
    CHECK(conformal_scal(fast_t.at(random_point(d, rng))) == Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("the normalized parameter choice reproduces the reference constant") {
  // c nu = 1/8 gives scalar curvature 16 n (n+2).
  for (int n : {1, 2, 3}) {
    const Poly h = solution_h(n, 0.5, 0.25);
    const CompiledSecondOrder fast(h);
    const std::vector<double> p(4 * n + 3, 0.3);
    CHECK(conformal_scal(fast.at(p)) == Approx(16.0 * n * (n + 2)).epsilon(1e-10));
  }
}

TEST_CASE("the critical-exponent residual vanishes on the induced power") {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> P(0.2, 2.0);
  for (int n : {1, 2}) {
    const int d = 4 * n + 3;
    const double c = P(rng), nu = P(rng);
    const Poly h = pullback_left_translate(random_group_point(n, rng), solution_h(n, c, nu));
    const CompiledSecondOrder fast(h);
    const ScalarField hf = field_from_poly(h);
    const ScalarField u = field_pow(2.0 * hf, -(n + 1.0));
    const double scal = 128.0 * n * (n + 2) * c * nu;
    for (int t = 0; t < 8; ++t) {
      const auto p = random_point(d, rng);
      // Fast chain-rule path and jet path agree, and both near-annihilate.
      const SecondOrderData su_fast = second_order_scaled_power(fast.at(p), p, 2.0, -(n + 1.0));
      const SecondOrderData su_slow = second_order(u, p);
      CHECK(su_fast.sub_laplacian() == Approx(su_slow.sub_laplacian()).margin(1e-9));
      const double scale = einstein_scale(su_slow);
      CHECK(std::abs(yamabe_residual(su_slow, scal)) < 1e-7 * scale);
      CHECK(std::abs(yamabe_residual(su_fast, scal)) < 1e-7 * scale);
    }
  }
}

TEST_CASE("generic conformal factors violate the identities") {
  std::mt19937_64 rng(64);
  const int n = 1, d = 7;
  // Quadratic bump added to a family member leaves the family.
  const Poly h = solution_h(n, 1.0, 1.0);
  Poly bump = Poly::var(d, 0) * Poly::var(d, 0);
  const CompiledSecondOrder fast(h + 0.01 * bump);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto p = random_point(d, rng);
    worst = std::max(worst, residual_con01(fast.at(p)).cwiseAbs().maxCoeff());
  }
  CHECK(worst > 1e-4);
}

TEST_CASE("degenerate inputs are rejected") {
  const int n = 1, d = 7;
  const ScalarField zero = field_constant(d, 0.0);
  const std::vector<double> p(d, 0.1);
  CHECK_THROWS_AS(conformal_scal(zero, p), std::domain_error);
  CHECK_THROWS_AS(residual_con03(zero, p), std::domain_error);
  CHECK_THROWS_AS(conformal_ricci_traceless(zero, p), std::domain_error);
  const ScalarField negative = field_constant(d, -1.0);
  CHECK_THROWS_AS(yamabe_residual(negative, p, 1.0), std::domain_error);
}
