#include <catch2/catch_amalgamated.hpp>

#include <qcgeom/cayley.hpp>

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
}  // namespace

TEST_CASE("the rational transform is involutive between sphere and boundary model") {
  std::mt19937_64 rng(81);
  for (int n : {1, 2}) {
    for (int t = 0; t < 100; ++t) {
      const SpherePoint s = random_sphere_point(n, rng);
      if (norm_sq(Quaternion::one() + s.p) < 1e-3) continue;
      const SiegelPoint z = cayley(s);
      // Image satisfies the boundary constraint.
      CHECK(z.constraint_residual() < 1e-12);
      // Round trip restores the point.
      const SpherePoint back = inverse_cayley(z);
      double worst = (back.p - s.p).max_abs();
      for (int b = 0; b < n; ++b) worst = std::max(worst, (back.q[b] - s.q[b]).max_abs());
      CHECK(worst < 1e-12);
    }
    // Round trip in the other direction, starting from group coordinates.
    for (int t = 0; t < 50; ++t) {
      const GroupPoint g = random_group_point(n, rng);
      const SiegelPoint z = group_to_siegel(g);
      CHECK(z.constraint_residual() < 1e-12);
      const GroupPoint g2 = siegel_to_group(cayley(inverse_cayley(z)));
      for (int i = 0; i < g.dim(); ++i) CHECK(g2.c[i] == Approx(g.c[i]).margin(1e-11));
    }
  }
}

TEST_CASE("the sphere form is imaginary and vanishes radially") {
  std::mt19937_64 rng(82);
  const int n = 2;
  for (int t = 0; t < 30; ++t) {
    const SpherePoint s = random_sphere_point(n, rng);
    const auto v = random_sphere_tangent(s, rng);
    CHECK(sphere_tangency_residual(s, v) < 1e-12);
    const Quaternion eta = sphere_contact_form(s, v);
    CHECK(re(eta) == 0.0);
    // The radial direction pairs to zero.
    CHECK(sphere_contact_form(s, s.ambient()).max_abs() < 1e-13);
  }
}

TEST_CASE("tangent pushforward matches a finite difference of the transform") {
  std::mt19937_64 rng(83);
  const int n = 1;
  const double eps = 1e-5;
  for (int t = 0; t < 20; ++t) {
    const SpherePoint s = random_sphere_point(n, rng);
    if (norm_sq(Quaternion::one() + s.p) < 1e-2) continue;
    const auto v = random_sphere_tangent(s, rng);
    const SiegelTangent tv = cayley_pushforward(s, v);
    // The transform formulas are rational in the ambient coordinates, so a
    // central difference along v approximates the differential with
    // truncation O(eps^2) scaled by third derivatives, which grow like
    // |1+p|^{-3} toward the pole; 1e-7 covers that budget.
    auto shift = [&](double e) {
      std::vector<double> a = s.ambient();
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += e * v[i];
      return cayley(SpherePoint::from_ambient(a));
    };
    const SiegelPoint plus = shift(eps), minus = shift(-eps);
    for (int b = 0; b < n; ++b) {
      const Quaternion fd = (plus.q[b] - minus.q[b]) / (2.0 * eps);
      CHECK((fd - tv.dq[b]).max_abs() < 1e-7);
    }
    const Quaternion fdp = (plus.p - minus.p) / (2.0 * eps);
    CHECK((fdp - tv.dp).max_abs() < 1e-7);
  }
}

TEST_CASE("the conformality identity holds pointwise in both directions") {
  std::mt19937_64 rng(84);
  for (int n : {1, 2}) {
    for (int t = 0; t < 60; ++t) {
      SpherePoint s = random_sphere_point(n, rng);
      while (norm_sq(Quaternion::one() + s.p) < 1e-3) s = random_sphere_point(n, rng);
      const auto v1 = random_sphere_tangent(s, rng), v2 = random_sphere_tangent(s, rng);
      CHECK(conformality_residual(s, v1, v2) < 1e-10);
    }
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int t = 0; t < 60; ++t) {
      const GroupPoint g = random_group_point(n, rng);
      const SiegelPoint z = group_to_siegel(g);
      if (norm_sq(Quaternion::one() + z.p) < 1e-3) continue;
      std::vector<double> w(g.dim());
      for (auto& c : w) c = U(rng);
      CHECK(conformality_residual_siegel(z, w) < 1e-10);
    }
  }
}

TEST_CASE("the excluded antipode is rejected, not mapped") {
  SpherePoint s(1);
  s.p = Quaternion{-1.0, 0.0, 0.0, 0.0};  // |q| = 0, p = -1 lies on the sphere
  CHECK(s.constraint_residual() < 1e-15);
  CHECK_THROWS_AS(cayley(s), std::domain_error);
  SiegelPoint z(1);
  z.p = Quaternion{-1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(inverse_cayley(z), std::domain_error);
  CHECK_THROWS_AS(sphere_contact_form(s, std::vector<double>(5, 0.0)), std::domain_error);
}

TEST_CASE("sphere samplers produce on-sphere points with unit tangents") {
  std::mt19937_64 rng(85);
  for (int t = 0; t < 50; ++t) {
    const SpherePoint s = random_sphere_point(2, rng);
    CHECK(s.constraint_residual() < 1e-12);
    const auto v = random_sphere_tangent(s, rng);
    double nn = 0;
    for (double c : v) nn += c * c;
    CHECK(nn == Approx(1.0).epsilon(1e-10));
  }
}
