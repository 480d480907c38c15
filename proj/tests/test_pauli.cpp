#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <telres/linalg.hpp>
#include <telres/pauli.hpp>
#include <telres/random.hpp>

using namespace telres;
using std::numbers::pi;

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix cyclic_defect(const ComplexMatrix& a, const ComplexMatrix& b,
                            const ComplexMatrix& c) {
  // a*b should equal -i*c for a right-handed complementary triple.
  return ComplexMatrix(a * b + kI * c);
}

}  // namespace

TEST_CASE("pauli matrices match their defining entries") {
  CHECK(max_abs(pauli(0) - ComplexMatrix::Identity(2, 2)) == 0.0);
  ComplexMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, kI, -kI, 0;
  s3 << 1, 0, 0, -1;
  CHECK(max_abs(pauli(1) - s1) == 0.0);
  CHECK(max_abs(pauli(2) - s2) == 0.0);
  CHECK(max_abs(pauli(3) - s3) == 0.0);
  CHECK_THROWS_AS(pauli(4), std::invalid_argument);
  CHECK_THROWS_AS(pauli(-1), std::invalid_argument);
}

TEST_CASE("pauli algebra: s_j s_k = delta_jk I - i eps_jkl s_l") {
  const auto eps = [](int j, int k, int l) -> double {
    return ((j - k) * (k - l) * (l - j)) / 2.0;
  };
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
      if (j == k) expect = ComplexMatrix::Identity(2, 2);
      for (int l = 1; l <= 3; ++l) expect -= kI * eps(j, k, l) * pauli(l);
      CHECK(max_abs(pauli(j) * pauli(k) - expect) < 1e-15);
    }
  }
}

TEST_CASE("su2_rotation reproduces frozen anchor matrices") {
  CHECK(max_abs(su2_rotation(0, 0, 0) - ComplexMatrix::Identity(2, 2)) == 0.0);
  ComplexMatrix flip(2, 2);
  flip << 0, 1, -1, 0;
  CHECK(max_abs(su2_rotation(0, pi, 0) - flip) < 1e-15);
  // Pure alpha rotation is diagonal with conjugate phases.
  const ComplexMatrix rz = su2_rotation(pi / 3, 0, 0);
  CHECK(std::abs(rz(0, 0) - std::exp(-kI * (pi / 6.0))) < 1e-15);
  CHECK(std::abs(rz(1, 1) - std::exp(kI * (pi / 6.0))) < 1e-15);
  CHECK(std::abs(rz(0, 1)) == 0.0);
}

TEST_CASE("su2_rotation is special unitary for arbitrary angles") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix r =
        su2_rotation(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
    CHECK(max_abs(r.adjoint() * r - ComplexMatrix::Identity(2, 2)) < 1e-14);
    CHECK(std::abs(r.determinant() - Complex(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("EulerAngles validates its ranges") {
  CHECK_THROWS_AS(EulerAngles(-0.1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(EulerAngles(0, 3.2, 0), std::invalid_argument);
  CHECK_THROWS_AS(EulerAngles(0, 0, 7.0), std::invalid_argument);
  CHECK_NOTHROW(EulerAngles(0, pi, 2 * pi - 1e-12));
  CHECK_NOTHROW(EulerAngles(0, 0, 0));
}

TEST_CASE("canonical wraps angles onto the fundamental domain without moving the frame") {
  Rng rng(515);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = rng.uniform(-20.0, 20.0);
    const double b = rng.uniform(-20.0, 20.0);
    const double g = rng.uniform(-20.0, 20.0);
    const EulerAngles ang = EulerAngles::canonical(a, b, g);
    CHECK(ang.alpha >= 0.0);
    CHECK(ang.alpha < 2 * pi);
    CHECK(ang.beta >= 0.0);
    CHECK(ang.beta <= pi);
    CHECK(ang.gamma >= 0.0);
    CHECK(ang.gamma < 2 * pi);
    // The adjoint action (the frame) is unchanged by canonicalization.
    const ComplexMatrix raw = su2_rotation(a, b, g);
    const ComplexMatrix canon = su2_from_euler(ang);
    for (int k = 1; k <= 3; ++k) {
      const ComplexMatrix x_raw = raw * pauli(k) * raw.adjoint();
      const ComplexMatrix x_can = canon * pauli(k) * canon.adjoint();
      CHECK(max_abs(x_raw - x_can) < 1e-12);
    }
  }
}

TEST_CASE("sigma_triple is the untouched pauli triple") {
  const ComplementaryTriple t = sigma_triple();
  for (int k = 0; k < 3; ++k) CHECK(max_abs(t.x[k] - pauli(k + 1)) == 0.0);
  CHECK((t.frame - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs(t.su2 - ComplexMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("hadamard rotation permutes the pauli axes as expected") {
  ComplexMatrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  const ComplementaryTriple t = triple_from_su2(h);
  CHECK(max_abs(t.x[0] - pauli(3)) < 1e-15);  // H s1 H = s3
  CHECK(max_abs(t.x[1] + pauli(2)) < 1e-15);  // H s2 H = -s2
  CHECK(max_abs(t.x[2] - pauli(1)) < 1e-15);  // H s3 H = s1
}

TEST_CASE("triples satisfy the complementary-observable algebra") {
  Rng rng(808);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix r =
        su2_rotation(rng.uniform(0.0, 2 * pi), rng.uniform(0.0, pi), rng.uniform(0.0, 2 * pi));
    const ComplementaryTriple t = triple_from_su2(r);
    for (int k = 0; k < 3; ++k) {
      CHECK(hermiticity_residual(t.x[k]) < 1e-14);
      CHECK(max_abs(t.x[k] * t.x[k] - ComplexMatrix::Identity(2, 2)) < 1e-13);
      CHECK(std::abs(t.x[k].trace()) < 1e-13);
    }
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k)
        CHECK(max_abs(t.x[j] * t.x[k] + t.x[k] * t.x[j]) < 1e-13);
    // Cyclic products close with X1 X2 = -i X3 and X1 X2 X3 = -i I.
    CHECK(max_abs(cyclic_defect(t.x[0], t.x[1], t.x[2])) < 1e-13);
    CHECK(max_abs(cyclic_defect(t.x[1], t.x[2], t.x[0])) < 1e-13);
    CHECK(max_abs(cyclic_defect(t.x[2], t.x[0], t.x[1])) < 1e-13);
    CHECK(max_abs(t.x[0] * t.x[1] * t.x[2] + kI * ComplexMatrix::Identity(2, 2)) < 1e-13);
    // The frame is a proper rotation.
    CHECK((t.frame.transpose() * t.frame - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(t.frame.determinant() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("triple_from_su2 ignores a global phase on the rotation") {
  const ComplexMatrix r = su2_rotation(1.1, 0.7, 2.3);
  const ComplementaryTriple base = triple_from_su2(r);
  for (const Complex phase : {Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
    const ComplementaryTriple t = triple_from_su2(ComplexMatrix(phase * r));
    for (int k = 0; k < 3; ++k) CHECK(max_abs(t.x[k] - base.x[k]) == 0.0);
  }
  const Complex generic = std::exp(kI * 0.4142);
  const ComplementaryTriple t = triple_from_su2(ComplexMatrix(generic * r));
  CHECK((t.frame - base.frame).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("triple_from_frame inverts triple_from_su2") {
  Rng rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix r =
        su2_rotation(rng.uniform(0.0, 2 * pi), rng.uniform(0.0, pi), rng.uniform(0.0, 2 * pi));
    const ComplementaryTriple forward = triple_from_su2(r);
    const ComplementaryTriple back =
        triple_from_frame(forward.frame.col(0), forward.frame.col(1), forward.frame.col(2));
    for (int k = 0; k < 3; ++k) CHECK(max_abs(back.x[k] - forward.x[k]) < 1e-9);
    CHECK((back.frame - forward.frame).cwiseAbs().maxCoeff() < 1e-9);
    // The recovered su2 really conjugates the paulis onto the triple.
    for (int k = 0; k < 3; ++k)
      CHECK(max_abs(back.su2 * pauli(k + 1) * back.su2.adjoint() - back.x[k]) < 1e-9);
  }
}

TEST_CASE("triple_from_frame rejects improper or skewed frames") {
  const Eigen::Vector3d e1 = Eigen::Vector3d::UnitX();
  const Eigen::Vector3d e2 = Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e3 = Eigen::Vector3d::UnitZ();
  CHECK_THROWS_WITH_AS(triple_from_frame(e1, e2, -e3), doctest::Contains("det"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(triple_from_frame(e1, e1 * 0.05 + e2, e3), doctest::Contains("Gram"),
                       std::invalid_argument);
}

TEST_CASE("triple_from_su2 rejects non-unitary input") {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, 1.5;
  CHECK_THROWS_AS(triple_from_su2(m), std::invalid_argument);
}
