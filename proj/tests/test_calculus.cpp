#include <catch2/catch_amalgamated.hpp>

#include <qcgeom/calculus.hpp>
#include <qcgeom/decomp.hpp>
#include <qcgeom/field.hpp>

#include <random>

using namespace qcg;
using Catch::Approx;

namespace {

Poly random_cubic(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Poly f = Poly::constant(d, U(rng));
  for (int t = 0; t < 20; ++t) {
    Poly m = Poly::constant(d, U(rng));
    const int deg = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < deg; ++k) m = m * Poly::var(d, static_cast<int>(rng() % d));
    f = f + m;
  }
  return f;
}

std::vector<double> random_point(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::vector<double> p(d);
  for (auto& c : p) c = U(rng);
  return p;
}

}  // namespace

TEST_CASE("second-order frame data matches iterated frame derivatives") {
  std::mt19937_64 rng(41);
  for (int n : {1, 2}) {
    const int d = 4 * n + 3;
    const auto fr = frame(n);
    const Poly fp = random_cubic(d, rng);
    const ScalarField f = field_from_poly(fp);
    for (int t = 0; t < 3; ++t) {
      const auto p = random_point(d, rng);
      const SecondOrderData s = second_order(f, p);
      CHECK(s.value == Approx(fp.eval(p)).margin(1e-11));
      for (int a = 0; a < d; ++a)
        CHECK(s.fgrad(a) == Approx(apply_word(fr, {a}, f, p)).margin(1e-10));
      for (int a = 0; a < 4 * n; ++a)
        for (int b = 0; b < 4 * n; ++b)
          CHECK(s.fhess(a, b) == Approx(apply_word(fr, {a, b}, f, p)).margin(1e-10));
      for (int ss = 0; ss < 3; ++ss)
        for (int tt = 0; tt < 3; ++tt)
          CHECK(s.xi_xi(ss, tt) ==
                Approx(apply_word(fr, {4 * n + ss, 4 * n + tt}, f, p)).margin(1e-10));
    }
  }
}

TEST_CASE("frame Hessian antisymmetry reproduces the commutator table") {
  std::mt19937_64 rng(42);
  const int n = 2, d = 4 * n + 3;
  const ScalarField f = field_from_poly(random_cubic(d, rng));
  for (int t = 0; t < 5; ++t) {
    const auto p = random_point(d, rng);
    const SecondOrderData s = second_order(f, p);
    for (int a = 0; a < 4 * n; ++a)
      for (int b = 0; b < 4 * n; ++b) {
        double want = 0.0;
        for (int k = 1; k <= 3; ++k)
          want += -2.0 * complex_structure(n, k)(b, a) * s.xi(k - 1);
        CHECK(s.fhess(a, b) - s.fhess(b, a) == Approx(want).margin(1e-10));
      }
  }
}

TEST_CASE("compiled evaluation agrees with the jet path") {
  std::mt19937_64 rng(43);
  const int n = 1, d = 7;
  const Poly fp = random_cubic(d, rng);
  const ScalarField f = field_from_poly(fp);
  const CompiledSecondOrder fast(fp);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_point(d, rng);
    const SecondOrderData a = second_order(f, p), b = fast.at(p);
    CHECK((a.cgrad - b.cgrad).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((a.chess - b.chess).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((a.fgrad - b.fgrad).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((a.fhess - b.fhess).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("sub-Laplacian and gradient reductions agree with the full data") {
  std::mt19937_64 rng(44);
  const int n = 1, d = 7;
  const ScalarField f = field_from_poly(random_cubic(d, rng));
  const auto p = random_point(d, rng);
  const SecondOrderData s = second_order(f, p);
  CHECK(sub_laplacian(f, p) == Approx(s.fhess.trace()).margin(1e-11));
  CHECK(grad_norm_sq(f, p) == Approx(s.grad_norm_sq()).margin(1e-11));
  const Eigen::VectorXd g = horizontal_gradient(f, p);
  CHECK((g - s.fgrad.head(4 * n)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("power composition transforms second-order data by the chain rule") {
  std::mt19937_64 rng(45);
  const int n = 1, d = 7;
  // Strictly positive polynomial: 3 + (small cubic)^0 ... keep it simple:
  // f = 3 + sum of squares scaled small.
  Poly fp = Poly::constant(d, 3.0);
  std::uniform_real_distribution<double> U(-0.2, 0.2);
  for (int i = 0; i < d; ++i) fp = fp + U(rng) * Poly::var(d, i) * Poly::var(d, i);
  const ScalarField f = field_from_poly(fp);
  const double a = 2.0, e = -1.5;
  const ScalarField u = field_pow(a * f, e);
  for (int t = 0; t < 5; ++t) {
    const auto p = random_point(d, rng);
    const SecondOrderData sh = second_order(f, p);
    const SecondOrderData fast = second_order_scaled_power(sh, p, a, e);
    const SecondOrderData slow = second_order(u, p);
    CHECK(fast.value == Approx(slow.value).margin(1e-11));
    CHECK((fast.fgrad - slow.fgrad).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((fast.fhess - slow.fhess).cwiseAbs().maxCoeff() < 1e-10);
  }
  SecondOrderData neg = second_order(f, random_point(d, rng));
  neg.value = -1.0;
  CHECK_THROWS_AS(second_order_scaled_power(neg, random_point(d, rng), 1.0, 0.5),
                  std::domain_error);
}

TEST_CASE("derivative words longer than the jet order are rejected") {
  const int n = 1, d = 7;
  const ScalarField f = field_constant(d, 1.0);
  const std::vector<double> p(d, 0.0);
  CHECK_THROWS_AS(apply_word(n, {0, 1, 2, 3, 0}, f, p), std::domain_error);
  CHECK_NOTHROW(apply_word(n, {0, 1, 2, 3}, f, p));
}

TEST_CASE("second-order evaluation rejects non-group dimensions") {
  ScalarField f = field_constant(8, 1.0);
  CHECK_THROWS_AS(second_order(f, std::vector<double>(8, 0.0)), std::domain_error);
}
