#include <telres/witness.hpp>

#include <telres/linalg.hpp>

#include <cmath>
#include <limits>

namespace telres {

namespace {

ComplexVector rotated_core(const ComplexMatrix& u) {
  const Eigen::Index d = u.rows();
  ComplexVector chi(d * d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) chi[i * d + j] = u(i, j) * scale;
  return chi;
}

ComplexMatrix shifted_projector(double alpha, const ComplexVector& chi) {
  const Eigen::Index dim = chi.size();
  ComplexMatrix w = alpha * ComplexMatrix::Identity(dim, dim);
  w -= chi * chi.adjoint();
  return w;
}

int gram_rank(const std::vector<ComplexVector>& vectors) {
  const Eigen::Index m = static_cast<Eigen::Index>(vectors.size());
  ComplexMatrix gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      gram(i, j) = vectors[static_cast<size_t>(i)].dot(vectors[static_cast<size_t>(j)]);
  Eigen::JacobiSVD<ComplexMatrix> svd(gram);
  const double threshold = static_cast<double>(m) * std::numeric_limits<double>::epsilon() *
                           svd.singularValues()[0];
  int rank = 0;
  for (Eigen::Index k = 0; k < m; ++k)
    if (svd.singularValues()[k] > threshold) ++rank;
  return rank;
}

OptimalityCertificate certify(const Witness& w, const std::vector<ComplexVector>& vectors) {
  OptimalityCertificate cert;
  cert.vectors = vectors;
  cert.annihilation_residuals.resize(static_cast<Eigen::Index>(vectors.size()));
  double worst = 0.0;
  for (size_t i = 0; i < vectors.size(); ++i) {
    const double r = vectors[i].dot(w.matrix * vectors[i]).real();
    cert.annihilation_residuals[static_cast<Eigen::Index>(i)] = r;
    worst = std::max(worst, std::abs(r));
  }
  cert.gram_rank = gram_rank(vectors);
  cert.optimal = cert.gram_rank == w.d * w.d && worst <= tol::structural;
  return cert;
}

}  // namespace

Witness witness_identity(int d) {
  if (d < 2) throw std::invalid_argument("witness_identity: d must be >= 2");
  const PureState psi = max_entangled_pure(d);
  return Witness{shifted_projector(1.0 / d, psi.amplitudes),
                 1.0 / d,
                 WitnessSource::Identity,
                 ComplexMatrix(),
                 psi.amplitudes,
                 psi.layout,
                 d};
}

Witness witness_rotated(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() < 2)
    throw std::invalid_argument("witness_rotated: expected a square unitary of dimension >= 2");
  const Eigen::Index d = u.rows();
  const double unitarity = max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d));
  if (unitarity > tol::structural)
    throw std::invalid_argument("witness_rotated: matrix is not unitary");
  const ComplexVector chi = rotated_core(u);
  return Witness{shifted_projector(1.0 / static_cast<double>(d), chi),
                 1.0 / static_cast<double>(d),
                 WitnessSource::Rotated,
                 u,
                 chi,
                 SubsystemLayout::bipartite(static_cast<int>(d), static_cast<int>(d)),
                 static_cast<int>(d)};
}

Witness witness_from_pure(const PureState& psi) {
  const RealVector schmidt = schmidt_coefficients(psi);
  const double alpha = schmidt[0] * schmidt[0];
  if (alpha >= 1.0 - tol::structural)
    throw std::invalid_argument(
        "witness_from_pure: product state (largest Schmidt coefficient 1) gives no witness");
  const bool square = psi.layout.dim_a() == psi.layout.dim_b();
  return Witness{shifted_projector(alpha, psi.amplitudes),
                 alpha,
                 WitnessSource::FromPure,
                 ComplexMatrix(),
                 psi.amplitudes,
                 psi.layout,
                 square ? static_cast<int>(psi.layout.dim_a()) : 0};
}

double evaluate(const Witness& w, const DensityMatrix& rho) {
  if (rho.matrix.rows() != w.matrix.rows())
    throw std::invalid_argument("evaluate: witness and state dimensions differ");
  return expectation(rho, w.matrix);
}

std::vector<ComplexVector> optimality_vectors(int d) {
  if (d < 2) throw std::invalid_argument("optimality_vectors: d must be >= 2");
  const Eigen::Index dim = Eigen::Index(d) * d;
  std::vector<ComplexVector> vectors;
  vectors.reserve(static_cast<size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    ComplexVector v = ComplexVector::Zero(dim);
    v[Eigen::Index(j) * d + j] = 1.0;
    vectors.push_back(std::move(v));
  }
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      ComplexVector v = ComplexVector::Zero(dim);
      v[Eigen::Index(k) * d + k] = 1.0;
      v[Eigen::Index(k) * d + l] = 1.0;
      v[Eigen::Index(l) * d + k] = 1.0;
      v[Eigen::Index(l) * d + l] = 1.0;
      vectors.push_back(std::move(v));
    }
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      // (|k> + i|l>) x (|k> - i|l>)
      ComplexVector v = ComplexVector::Zero(dim);
      v[Eigen::Index(k) * d + k] = 1.0;
      v[Eigen::Index(k) * d + l] = Complex(0.0, -1.0);
      v[Eigen::Index(l) * d + k] = Complex(0.0, 1.0);
      v[Eigen::Index(l) * d + l] = 1.0;
      vectors.push_back(std::move(v));
    }
  return vectors;
}

OptimalityCertificate check_optimality(const Witness& w) {
  ComplexMatrix u;
  if (w.source == WitnessSource::Identity) {
    u = ComplexMatrix::Identity(w.d, w.d);
  } else if (w.source == WitnessSource::Rotated) {
    u = w.unitary;
  } else {
    // The spanning construction transports W(I); it applies only when the
    // core is maximally entangled, in which case chi = (U x I)|psi+> with
    // U read off the reshaped amplitudes.
    const PureState core(w.core_state, w.layout);
    const RealVector schmidt = schmidt_coefficients(core);
    const bool square = w.d > 0;
    const bool uniform = square && (schmidt[0] - schmidt[schmidt.size() - 1]) <= tol::derived;
    if (!uniform) {
      OptimalityCertificate cert;
      cert.note = "core state is not maximally entangled; the spanning product-vector "
                  "construction does not apply";
      return cert;
    }
    u.resize(w.d, w.d);
    const double scale = std::sqrt(static_cast<double>(w.d));
    for (int i = 0; i < w.d; ++i)
      for (int j = 0; j < w.d; ++j) u(i, j) = w.core_state[Eigen::Index(i) * w.d + j] * scale;
  }

  std::vector<ComplexVector> vectors = optimality_vectors(w.d);
  for (ComplexVector& v : vectors) {
    ComplexMatrix m(w.d, w.d);
    for (int a = 0; a < w.d; ++a)
      for (int b = 0; b < w.d; ++b) m(a, b) = v[Eigen::Index(a) * w.d + b];
    m = (u * m).eval();  // (U x I)|v>
    for (int a = 0; a < w.d; ++a)
      for (int b = 0; b < w.d; ++b) v[Eigen::Index(a) * w.d + b] = m(a, b);
  }
  return certify(w, vectors);
}

WitnessDetection detect_useful_via_witness(const DensityMatrix& rho, int d,
                                           const FefConfig& config) {
  WitnessDetection detection;
  detection.fef = fef_optimize(rho, d, config);
  detection.min_value = 1.0 / d - detection.fef.value;
  detection.best_unitary = detection.fef.optimizer_unitary;
  detection.verdict = detection.min_value < -config.usefulness_margin ? Usefulness::Useful
                                                                      : Usefulness::Inconclusive;
  return detection;
}

}  // namespace telres
