#include <catch2/catch_amalgamated.hpp>

#include <qcgeom/quaternion.hpp>

#include <cmath>
#include <random>

using namespace qcg;
using Catch::Approx;

namespace {
Quaternion random_q(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  return {U(rng), U(rng), U(rng), U(rng)};
}
}  // namespace

TEST_CASE("unit multiplication table follows the Hamilton rules") {
  const Quaternion one = Quaternion::one(), i = Quaternion::i(), j = Quaternion::j(),
                   k = Quaternion::k();
  CHECK((i * i + one).max_abs() == 0.0);
  CHECK((j * j + one).max_abs() == 0.0);
  CHECK((k * k + one).max_abs() == 0.0);
  CHECK((i * j - k).max_abs() == 0.0);
  CHECK((j * k - i).max_abs() == 0.0);
  CHECK((k * i - j).max_abs() == 0.0);
  CHECK((j * i + k).max_abs() == 0.0);
  CHECK((k * j + i).max_abs() == 0.0);
  CHECK((i * k + j).max_abs() == 0.0);
}

TEST_CASE("multiplication is associative and distributes over addition") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Quaternion a = random_q(rng), b = random_q(rng), c = random_q(rng);
    CHECK(((a * b) * c - a * (b * c)).max_abs() < 1e-13);
    CHECK((a * (b + c) - a * b - a * c).max_abs() < 1e-13);
  }
}

TEST_CASE("conjugation is an anti-automorphism and norm is multiplicative") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const Quaternion a = random_q(rng), b = random_q(rng);
    CHECK((conj(a * b) - conj(b) * conj(a)).max_abs() < 1e-13);
    CHECK(norm_sq(a * b) == Approx(norm_sq(a) * norm_sq(b)).epsilon(1e-12));
    CHECK(norm_sq(a) == Approx(re(a * conj(a))).epsilon(1e-12));
  }
}

TEST_CASE("real and imaginary parts split a quaternion") {
  const Quaternion a{1.5, -2.0, 0.25, 3.0};
  CHECK(re(a) == 1.5);
  CHECK((im(a) - Quaternion{0, -2.0, 0.25, 3.0}).max_abs() == 0.0);
  CHECK((Quaternion(re(a)) + im(a) - a).max_abs() == 0.0);
}

TEST_CASE("component accessor indexes (real, i, j, k)") {
  Quaternion a;
  a.comp(0) = 1;
  a.comp(1) = 2;
  a.comp(2) = 3;
  a.comp(3) = 4;
  CHECK(a.t == 1);
  CHECK(a.x == 2);
  CHECK(a.y == 3);
  CHECK(a.z == 4);
  const Quaternion b = a;
  CHECK(b.comp(3) == 4);
}

TEST_CASE("inverse multiplies to one and rejects zero") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Quaternion a = random_q(rng);
    if (norm_sq(a) < 1e-6) continue;
    CHECK((a * inverse(a) - Quaternion::one()).max_abs() < 1e-13);
    CHECK((inverse(a) * a - Quaternion::one()).max_abs() < 1e-13);
  }
  CHECK_THROWS_AS(inverse(Quaternion{}), std::domain_error);
}

TEST_CASE("exponential of an imaginary direction is a rotation") {
  const double pi = std::acos(-1.0);
  CHECK((exp(pi * Quaternion::i()) + Quaternion::one()).max_abs() < 1e-14);
  CHECK((exp(0.5 * pi * Quaternion::j()) - Quaternion::j()).max_abs() < 1e-14);
  // |exp(v)| = 1 for imaginary v.
  const Quaternion v{0, 0.3, -0.7, 1.1};
  CHECK(norm(exp(v)) == Approx(1.0).epsilon(1e-13));
  // exp(t + v) = e^t exp(v).
  const Quaternion w{0.4, 0.3, -0.7, 1.1};
  CHECK((exp(w) - std::exp(0.4) * exp(v)).max_abs() < 1e-13);
}

TEST_CASE("slot-vector pairing is conjugate-symmetric with real squared norm") {
  std::mt19937_64 rng(14);
  HVector a(3), b(3);
  for (int s = 0; s < 3; ++s) {
    a[s] = random_q(rng);
    b[s] = random_q(rng);
  }
  CHECK((dot_conj(a, b) - conj(dot_conj(b, a))).max_abs() < 1e-13);
  CHECK(re(dot_conj(a, a)) == Approx(norm_sq(a)).epsilon(1e-12));
  CHECK(im(dot_conj(a, a)).max_abs() < 1e-13);
  // Linear in the first argument.
  const HVector sum = a + b;
  CHECK((dot_conj(sum, b) - dot_conj(a, b) - dot_conj(b, b)).max_abs() < 1e-12);
}
