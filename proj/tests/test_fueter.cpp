#include <catch2/catch_amalgamated.hpp>

#include <qcgeom/fueter.hpp>

#include <random>

using namespace qcg;
using Catch::Approx;

namespace {

std::vector<std::vector<double>> grid(int dim, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::vector<std::vector<double>> g(count, std::vector<double>(dim));
  for (auto& p : g)
    for (auto& c : p) c = U(rng);
  return g;
}

Poly random_cubic(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Poly f = Poly::constant(d, U(rng));
  for (int t = 0; t < 15; ++t) {
    Poly m = Poly::constant(d, U(rng));
    const int deg = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < deg; ++k) m = m * Poly::var(d, static_cast<int>(rng() % d));
    f = f + m;
  }
  return f;
}

}  // namespace

TEST_CASE("slot operators annihilate the constructed witnesses") {
  std::mt19937_64 rng(71);
  for (int n : {1, 2}) {
    const int deg = n == 1 ? 3 : 2;
    const QPoly W = anti_regular_witness(n, deg, 777 + n, Domain::Flat);
    // Nonconstant witness.
    int maxdeg = 0;
    for (int m = 0; m < 4; ++m) maxdeg = std::max(maxdeg, W.c[m].degree());
    CHECK(maxdeg >= 1);
    const QuaternionField F = qfield_from_qpoly(W);
    const auto pts = grid(4 * n, 25, rng);
    const MembershipResult r = is_anti_regular(F, pts, 1e-10, Domain::Flat);
    CHECK(r.member);
    CHECK(r.worst < 1e-10);
  }
}

TEST_CASE("real parts of annihilated functions satisfy the second-order systems") {
  std::mt19937_64 rng(72);
  for (int n : {1, 2}) {
    const int deg = n == 1 ? 3 : 2;
    const QPoly W = anti_regular_witness(n, deg, 900 + n, Domain::Flat);
    const ScalarField f = field_from_poly(W.c[0]);
    const auto pts = grid(4 * n, 15, rng);
    for (const auto& p : pts) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          CHECK(pluriharmonic_residual(f, a, b, p, PluriKind::Q).max_abs() < 1e-10);
      for (int i = 1; i <= 3; ++i)
        CHECK(dd_matrix(f, i, p).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("the two second-order criteria agree on generic polynomials") {
  std::mt19937_64 rng(73);
  const int n = 1, d = 4;
  const auto pts = grid(d, 10, rng);
  int witnessed_pass = 0, witnessed_fail = 0;
  for (int t = 0; t < 25; ++t) {
    ScalarField f;
    if (t < 3) {
      // Members of the annihilated class must pass both.
      f = field_from_poly(anti_regular_witness(n, 3, 100 + t, Domain::Flat).c[0]);
    } else {
      f = field_from_poly(random_cubic(d, rng));
    }
    double worst_dd = 0.0, worst_pl = 0.0;
    for (const auto& p : pts) {
      for (int i = 1; i <= 3; ++i)
        worst_dd = std::max(worst_dd, dd_matrix(f, i, p).cwiseAbs().maxCoeff());
      worst_pl = std::max(worst_pl,
                          pluriharmonic_residual(f, 0, 0, p, PluriKind::Q).max_abs());
    }
    const bool dd_ok = worst_dd < 1e-10, pl_ok = worst_pl < 1e-10;
    CHECK(dd_ok == pl_ok);
    (dd_ok ? witnessed_pass : witnessed_fail)++;
  }
  // Both verdicts must actually occur in the sample.
  CHECK(witnessed_pass >= 3);
  CHECK(witnessed_fail >= 10);
}

TEST_CASE("integral completion produces an annihilated extension of its input") {
  std::mt19937_64 rng(74);
  const int n = 1, d = 4;
  const QPoly W = anti_regular_witness(n, 3, 4242, Domain::Flat);
  const ScalarField f = field_from_poly(W.c[0]);
  const QuaternionField F = complete_to_antiregular(f);
  const auto pts = grid(d, 8, rng);
  // Real part is exactly f.
  for (const auto& p : pts)
    CHECK(F.comp[0](p, 0).value() == Approx(f(p, 0).value()).margin(1e-13));
  // Dirac residual small in every slot.
  for (const auto& p : pts)
    for (int a = 0; a < n; ++a) CHECK(dirac(F, a, p, Domain::Flat).max_abs() < 1e-8);
  CHECK_THROWS_AS(complete_to_antiregular(field_constant(7, 1.0)), std::domain_error);
}

TEST_CASE("group-frame witnesses satisfy the frame Hessian identity") {
  std::mt19937_64 rng(75);
  for (int n : {1, 2}) {
    const int d = 4 * n + 3;
    const QPoly W = anti_regular_witness(n, 2, 31337 + n, Domain::Group);
    const QuaternionField F = qfield_from_qpoly(W);
    const auto pts = grid(d, 10, rng);
    for (const auto& p : pts) {
      for (int a = 0; a < n; ++a) CHECK(anti_crf_residual(F, a, p).max_abs() < 1e-10);
      const CrfIdentities id = crf_identities(F, p);
      const double scale = std::max(1.0, std::abs(id.lambda));
      CHECK(id.residual.cwiseAbs().maxCoeff() < 1e-8 * scale);
    }
  }
}

TEST_CASE("witness construction validates its arguments") {
  CHECK_THROWS_AS(anti_regular_witness(0, 2, 1), std::domain_error);
  CHECK_THROWS_AS(anti_regular_witness(1, 0, 1), std::domain_error);
  CHECK_THROWS_AS(anti_regular_witness(1, 7, 1), std::domain_error);
  CHECK_THROWS_AS(dd_matrix(field_constant(4, 1.0), 0, {0, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(dd_matrix(field_constant(4, 1.0), 4, {0, 0, 0, 0}), std::domain_error);
}

TEST_CASE("membership predicates distinguish the two annihilated classes") {
  std::mt19937_64 rng(76);
  const int n = 1;
  const auto pts = grid(4 * n, 15, rng);
  const QPoly W = anti_regular_witness(n, 2, 55, Domain::Flat);
  const QuaternionField F = qfield_from_qpoly(W);
  CHECK(is_anti_regular(F, pts, 1e-10).member);
  // The identity chart map q -> q is annihilated by neither first-order
  // operator (constants aside, the operators are not complex-linear).
  const QuaternionField Q = qfield_from_qpoly(QPoly::coordinate(4, 0));
  CHECK_FALSE(is_anti_regular(Q, pts, 1e-10).member);
  CHECK_FALSE(is_regular(Q, pts, 1e-10).member);
}
