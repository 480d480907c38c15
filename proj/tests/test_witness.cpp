#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <telres/linalg.hpp>
#include <telres/random.hpp>
#include <telres/witness.hpp>

#include "test_support.hpp"

using namespace telres;

namespace {

PureState two_qubit_schmidt(double theta) {
  ComplexVector v = ComplexVector::Zero(4);
  v[0] = std::cos(theta);
  v[3] = std::sin(theta);
  return PureState(v, SubsystemLayout::bipartite(2, 2));
}

}  // namespace

TEST_CASE("identity witness is the shifted bell projector") {
  const Witness w = witness_identity(2);
  CHECK(w.alpha == 0.5);
  CHECK(w.d == 2);
  CHECK(w.source == WitnessSource::Identity);

  ComplexMatrix expect = 0.5 * ComplexMatrix::Identity(4, 4);
  const ComplexVector phi = max_entangled_pure(2).amplitudes;
  expect -= phi * phi.adjoint();
  CHECK(max_abs(w.matrix - expect) == 0.0);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(w.matrix, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()[0] == doctest::Approx(-0.5).epsilon(1e-12));
  for (int k = 1; k < 4; ++k)
    CHECK(es.eigenvalues()[k] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("evaluation anchors") {
  for (int d : {2, 3, 4}) {
    const Witness w = witness_identity(d);
    const DensityMatrix target = to_density(max_entangled_pure(d));
    CHECK(evaluate(w, target) == doctest::Approx(1.0 / d - 1.0).epsilon(1e-12));

    ComplexVector zero = ComplexVector::Zero(Eigen::Index(d) * d);
    zero[0] = 1.0;
    const DensityMatrix product = to_density(PureState(zero, w.layout));
    CHECK(std::abs(evaluate(w, product)) < 1e-14);

    const DensityMatrix mixed(
        ComplexMatrix::Identity(Eigen::Index(d) * d, Eigen::Index(d) * d) /
            static_cast<double>(d * d),
        w.layout);
    CHECK(evaluate(w, mixed) == doctest::Approx((d - 1.0) / (d * d)).epsilon(1e-12));
  }

  const Witness w2 = witness_identity(2);
  for (double p : {0.0, 0.3, 0.5, 1.0})
    CHECK(evaluate(w2, werner_state(p)) == doctest::Approx((1.0 - 3.0 * p) / 4.0).epsilon(1e-12));
}

TEST_CASE("rotated witnesses transform covariantly") {
  Rng rng(3003);
  for (int d : {2, 3}) {
    const ComplexMatrix u = random_unitary(d, rng.next_u64());
    const Witness w = witness_rotated(u);
    const ComplexMatrix local = kron(u, ComplexMatrix::Identity(d, d));
    const ComplexMatrix expect = local * witness_identity(d).matrix * local.adjoint();
    CHECK(max_abs(w.matrix - expect) < 1e-14);
    CHECK(w.alpha == 1.0 / d);
    CHECK(w.source == WitnessSource::Rotated);
  }
  // U = I reduces exactly to the identity witness.
  const Witness at_identity = witness_rotated(ComplexMatrix::Identity(3, 3));
  CHECK(max_abs(at_identity.matrix - witness_identity(3).matrix) == 0.0);

  ComplexMatrix not_unitary(2, 2);
  not_unitary << 1, 0, 0, 1.5;
  CHECK_THROWS_AS(witness_rotated(not_unitary), std::invalid_argument);
  CHECK_THROWS_AS(witness_rotated(ComplexMatrix::Identity(1, 1)), std::invalid_argument);
}

TEST_CASE("witness evaluation equals the shifted teleportation fidelity") {
  Rng rng(7171);
  const DensityMatrix rho = random_density(SubsystemLayout::bipartite(2, 2), 4, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix u = random_unitary(2, rng.next_u64());
    const double via_witness = evaluate(witness_rotated(u), rho);
    const double via_fidelity = 0.5 - fef_objective(rho, u);
    CHECK(std::abs(via_witness - via_fidelity) < 1e-12);
  }
}

TEST_CASE("witnesses built from pure states") {
  const Witness from_bell = witness_from_pure(max_entangled_pure(2));
  CHECK(from_bell.alpha == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_abs(from_bell.matrix - witness_identity(2).matrix) < 1e-12);
  CHECK(from_bell.source == WitnessSource::FromPure);

  const double theta = std::numbers::pi / 6.0;
  const Witness tilted = witness_from_pure(two_qubit_schmidt(theta));
  CHECK(tilted.alpha == doctest::Approx(0.75).epsilon(1e-12));

  ComplexVector zero = ComplexVector::Zero(4);
  zero[0] = 1.0;
  CHECK_THROWS_AS(witness_from_pure(PureState(zero, SubsystemLayout::bipartite(2, 2))),
                  std::invalid_argument);

  // Block positivity: no product state may see a negative value.
  Rng rng(888);
  const SubsystemLayout layout = SubsystemLayout::bipartite(2, 2);
  for (int trial = 0; trial < 10000; ++trial) {
    const ComplexVector v = random_product_pure(layout, rng.next_u64()).amplitudes;
    CHECK(v.dot(tilted.matrix * v).real() >= -1e-12);
  }
  // ... while its own core is detected.
  const DensityMatrix core = to_density(two_qubit_schmidt(theta));
  CHECK(evaluate(tilted, core) == doctest::Approx(0.75 - 1.0).epsilon(1e-12));
}

TEST_CASE("spanning product vectors for d = 2 are the frozen quartet") {
  const auto vectors = optimality_vectors(2);
  REQUIRE(vectors.size() == 4);
  ComplexVector v00 = ComplexVector::Zero(4), v11 = ComplexVector::Zero(4);
  v00[0] = 1.0;
  v11[3] = 1.0;
  ComplexVector plus(4), circ(4);
  plus << 1, 1, 1, 1;
  circ << 1, Complex(0, -1), Complex(0, 1), 1;
  CHECK(max_abs(vectors[0] - v00) == 0.0);
  CHECK(max_abs(vectors[1] - v11) == 0.0);
  CHECK(max_abs(vectors[2] - plus) == 0.0);
  CHECK(max_abs(vectors[3] - circ) == 0.0);

  const Witness w = witness_identity(2);
  for (const auto& v : vectors) CHECK(std::abs(v.dot(w.matrix * v).real()) < 1e-12);
  CHECK_THROWS_AS(optimality_vectors(1), std::invalid_argument);
}

TEST_CASE("identity and rotated witnesses are certified optimal") {
  for (int d = 2; d <= 6; ++d) {
    const OptimalityCertificate cert = check_optimality(witness_identity(d));
    CHECK(cert.optimal);
    CHECK(cert.gram_rank == d * d);
    CHECK(cert.vectors.size() == static_cast<size_t>(d * d));
    CHECK(cert.annihilation_residuals.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(cert.note.empty());
  }
  Rng rng(606060);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 3; ++trial) {
      const Witness w = witness_rotated(random_unitary(d, rng.next_u64()));
      const OptimalityCertificate cert = check_optimality(w);
      CHECK(cert.optimal);
      CHECK(cert.gram_rank == d * d);
    }
  }
}

TEST_CASE("a shifted witness keeps the span but loses annihilation") {
  Witness w = witness_identity(2);
  w.matrix += 0.01 * ComplexMatrix::Identity(4, 4);
  const OptimalityCertificate cert = check_optimality(w);
  CHECK_FALSE(cert.optimal);
  CHECK(cert.gram_rank == 4);
  CHECK(cert.annihilation_residuals[0] == doctest::Approx(0.01).epsilon(1e-9));
  // The widened product vectors pick up residual 0.01 * |v|^2.
  CHECK(cert.annihilation_residuals[2] == doctest::Approx(0.04).epsilon(1e-9));
}

TEST_CASE("optimality for witnesses from pure states needs a maximally entangled core") {
  const OptimalityCertificate good = check_optimality(witness_from_pure(max_entangled_pure(3)));
  CHECK(good.optimal);
  CHECK(good.gram_rank == 9);
  CHECK(good.note.empty());

  const OptimalityCertificate bad =
      check_optimality(witness_from_pure(two_qubit_schmidt(std::numbers::pi / 6.0)));
  CHECK_FALSE(bad.optimal);
  CHECK_FALSE(bad.note.empty());
}

TEST_CASE("usefulness detection through the witness family") {
  FefConfig config;
  config.restarts = 8;

  for (int d : {2, 3}) {
    const DensityMatrix target = to_density(max_entangled_pure(d));
    const WitnessDetection det = detect_useful_via_witness(target, d, config);
    CHECK(det.verdict == Usefulness::Useful);
    CHECK(det.min_value == doctest::Approx(1.0 / d - 1.0).epsilon(1e-8));
    // The reported unitary certifies the reported minimum.
    CHECK(std::abs(evaluate(witness_rotated(det.best_unitary), target) - det.min_value) < 1e-9);
  }

  const WitnessDetection strong = detect_useful_via_witness(werner_state(0.5), 2, config);
  CHECK(strong.verdict == Usefulness::Useful);
  CHECK(strong.min_value == doctest::Approx(-0.125).epsilon(1e-6));
  CHECK(strong.fef.value == doctest::Approx(0.625).epsilon(1e-6));

  const WitnessDetection weak = detect_useful_via_witness(werner_state(0.2), 2, config);
  CHECK(weak.verdict == Usefulness::Inconclusive);
  CHECK(weak.min_value == doctest::Approx(0.1).epsilon(1e-6));

  // States with positive partial transpose never trip the detector.
  for (std::uint64_t seed : {11u, 22u, 33u}) {
    const DensityMatrix ppt = telres::testing::random_ppt_two_qubit(seed);
    const WitnessDetection det = detect_useful_via_witness(ppt, 2, config);
    CHECK(det.verdict == Usefulness::Inconclusive);
    CHECK(det.min_value >= -config.usefulness_margin);
  }
}

TEST_CASE("no sampled witness value undercuts the certified minimum") {
  const DensityMatrix rho = werner_state(0.5);
  FefConfig config;
  config.restarts = 8;
  const WitnessDetection det = detect_useful_via_witness(rho, 2, config);
  const double sampled_best = telres::testing::mc_fef_sweep(rho.matrix, 2, 20000, 4321);
  CHECK(0.5 - sampled_best >= det.min_value - 1e-9);
  CHECK(0.5 - sampled_best <= det.min_value + 0.05);
}
