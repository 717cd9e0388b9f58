#include <catch2/catch_amalgamated.hpp>

#include <qcgeom/decomp.hpp>

#include <Eigen/Dense>
#include <random>

using namespace qcg;
using Catch::Approx;

namespace {
Eigen::MatrixXd random_tensor(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::MatrixXd M(4 * n, 4 * n);
  for (int i = 0; i < 4 * n; ++i)
    for (int j = 0; j < 4 * n; ++j) M(i, j) = N(rng);
  return M;
}
}  // namespace

TEST_CASE("structure matrices are a quaternionic triple of isometries") {
  for (int n : {1, 2, 3}) {
    const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(4 * n, 4 * n);
    const Eigen::MatrixXd I1 = complex_structure(n, 1), I2 = complex_structure(n, 2),
                          I3 = complex_structure(n, 3);
    CHECK((I1 * I1 + Id).cwiseAbs().maxCoeff() == 0.0);
    CHECK((I2 * I2 + Id).cwiseAbs().maxCoeff() == 0.0);
    CHECK((I3 * I3 + Id).cwiseAbs().maxCoeff() == 0.0);
    CHECK((I1 * I2 - I3).cwiseAbs().maxCoeff() == 0.0);
    CHECK((I2 * I1 + I3).cwiseAbs().maxCoeff() == 0.0);
    CHECK((I2 * I3 - I1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((I3 * I1 - I2).cwiseAbs().maxCoeff() == 0.0);
    // Orthogonal and antisymmetric.
    for (int s = 1; s <= 3; ++s) {
      const Eigen::MatrixXd I = complex_structure(n, s);
      CHECK((I.transpose() * I - Id).cwiseAbs().maxCoeff() == 0.0);
      CHECK((I.transpose() + I).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  CHECK_THROWS_AS(complex_structure(1, 0), std::domain_error);
  CHECK_THROWS_AS(complex_structure(1, 4), std::domain_error);
}

TEST_CASE("fundamental two-forms pair the first slot frame as expected") {
  const Eigen::MatrixXd W1 = fundamental_form(1, 1), W2 = fundamental_form(1, 2),
                        W3 = fundamental_form(1, 3);
  // omega_s(u, v) = u^T W v on (T, X, Y, Z).
  CHECK(W1(0, 1) == 1.0);   // omega_1(T, X) = 1
  CHECK(W1(2, 3) == 1.0);   // omega_1(Y, Z) = 1
  CHECK(W2(0, 2) == 1.0);   // omega_2(T, Y) = 1
  CHECK(W3(0, 3) == 1.0);   // omega_3(T, Z) = 1
  CHECK((W1 + W1.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projectors split every tensor into complementary eigenspaces") {
  std::mt19937_64 rng(51);
  for (int n : {1, 2}) {
    for (int t = 0; t < 100; ++t) {
      const Eigen::MatrixXd M = random_tensor(n, rng);
      const Eigen::MatrixXd P3 = project_3(n, M), Pm1 = project_minus1(n, M);
      CHECK((P3 + Pm1 - M).cwiseAbs().maxCoeff() < 1e-12);
      // Idempotence and disjointness.
      CHECK((project_3(n, P3) - P3).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((project_minus1(n, Pm1) - Pm1).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(project_minus1(n, P3).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(project_3(n, Pm1).cwiseAbs().maxCoeff() < 1e-12);
      // Eigenvalues of the averaging operator.
      CHECK((casimir(n, P3) - 3.0 * P3).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((casimir(n, Pm1) + Pm1).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("four-fold type decomposition carries the sign signature") {
  std::mt19937_64 rng(52);
  const int signat[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (int n : {1, 2}) {
    for (int t = 0; t < 50; ++t) {
      const Eigen::MatrixXd M = random_tensor(n, rng);
      const FourPart fp = four_part(n, M);
      const Eigen::MatrixXd* parts[4] = {&fp.ppp, &fp.pmm, &fp.mpm, &fp.mmp};
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(4 * n, 4 * n);
      for (int k = 0; k < 4; ++k) {
        sum += *parts[k];
        for (int s = 1; s <= 3; ++s) {
          const Eigen::MatrixXd I = complex_structure(n, s);
          CHECK((I.transpose() * (*parts[k]) * I - double(signat[k][s - 1]) * (*parts[k]))
                    .cwiseAbs()
                    .maxCoeff() < 1e-12);
        }
      }
      CHECK((sum - M).cwiseAbs().maxCoeff() < 1e-12);
      // The all-plus part is exactly the 3-eigenspace component.
      CHECK((fp.ppp - project_3(n, M)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("symmetric projections are traceless or symmetric as designed") {
  std::mt19937_64 rng(53);
  const int n = 2;
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXd M = random_tensor(n, rng);
    const Eigen::MatrixXd S = project_sym_minus1(n, M);
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((casimir(n, S) + S).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd T = project_3_0(n, M);
    CHECK(std::abs(T.trace()) < 1e-12);
    CHECK((casimir(n, T) - 3.0 * T).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("single-slot symmetric tensors have scalar invariant part") {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd M = random_tensor(1, rng);
    const Eigen::MatrixXd S = 0.5 * (M + M.transpose());
    const Eigen::MatrixXd P = project_3(1, S);
    const double lam = P.trace() / 4.0;
    CHECK((P - lam * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("horizontal tensors serialize with shape validation") {
  std::mt19937_64 rng(55);
  const HTensor t(1, random_tensor(1, rng));
  nlohmann::json j = t;
  const HTensor back = j.get<HTensor>();
  CHECK(back.n == 1);
  CHECK((back.m - t.m).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(HTensor(2, Eigen::MatrixXd::Zero(4, 4)), std::domain_error);
  nlohmann::json bad = {{"n", 1}, {"entries", std::vector<double>(3, 0.0)}};
  CHECK_THROWS_AS(bad.get<HTensor>(), std::domain_error);
}
