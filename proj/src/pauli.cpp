#include <telres/pauli.hpp>

#include <telres/linalg.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace telres {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

// Nearest orthogonal matrix (polar factor); inputs are already orthonormal
// to 1e-9, this just removes the residual skew.
Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& f) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// Unique (up to phase) unitary R with R sigma_k = X_k R, found as the
// nullspace of the stacked intertwiner equations.
ComplexMatrix solve_intertwiner(const std::array<ComplexMatrix, 3>& x) {
  Eigen::Matrix<Complex, 12, 4> stack;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  for (int k = 0; k < 3; ++k) {
    // vec(X_k R) - vec(R sigma_k) = (I (x) X_k - sigma_k^T (x) I) vec(R)
    const ComplexMatrix block = kron(id, x[static_cast<size_t>(k)]) -
                                kron(pauli(k + 1).transpose().eval(), id);
    stack.block<4, 4>(4 * k, 0) = block;
  }
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 12, 4>> svd(stack, Eigen::ComputeFullV);
  const Eigen::Vector4cd null_vec = svd.matrixV().col(3);
  ComplexMatrix r(2, 2);
  r(0, 0) = null_vec[0];  // column-major vec
  r(1, 0) = null_vec[1];
  r(0, 1) = null_vec[2];
  r(1, 1) = null_vec[3];
  // R~^dagger R~ = c I for an intertwiner; rescale to unitary.
  r *= std::sqrt(2.0) / r.norm();
  return r;
}

ComplementaryTriple triple_from_clean_frame(const Eigen::Matrix3d& frame) {
  ComplementaryTriple t;
  t.frame = frame;
  for (int k = 0; k < 3; ++k) {
    ComplexMatrix xk = ComplexMatrix::Zero(2, 2);
    for (int j = 0; j < 3; ++j) xk += frame(j, k) * pauli(j + 1);
    t.x[static_cast<size_t>(k)] = std::move(xk);
  }
  t.su2 = solve_intertwiner(t.x);
  return t;
}

}  // namespace

ComplexMatrix pauli(int k) {
  ComplexMatrix m(2, 2);
  switch (k) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, Complex(0, 1), Complex(0, -1), 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument("pauli: index must be in {0,1,2,3}");
  }
  return m;
}

EulerAngles::EulerAngles(double a, double b, double g) : alpha(a), beta(b), gamma(g) {
  if (!(alpha >= 0.0 && alpha < kTwoPi) || !(gamma >= 0.0 && gamma < kTwoPi) ||
      !(beta >= 0.0 && beta <= std::numbers::pi))
    throw std::invalid_argument("euler angles: out of range [0,2pi) x [0,pi] x [0,2pi)");
}

EulerAngles EulerAngles::canonical(double alpha, double beta, double gamma) {
  beta = wrap_two_pi(beta);
  if (beta > std::numbers::pi) {
    // R(a, b, g) = -R(a+pi, 2pi-b, g+pi); the sign is a global phase.
    beta = kTwoPi - beta;
    alpha += std::numbers::pi;
    gamma += std::numbers::pi;
  }
  return EulerAngles(wrap_two_pi(alpha), beta, wrap_two_pi(gamma));
}

ComplexMatrix su2_rotation(double alpha, double beta, double gamma) {
  const Complex za = std::polar(1.0, -0.5 * alpha);
  const Complex zg = std::polar(1.0, -0.5 * gamma);
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  // diag(za, za*) * [[c, s], [-s, c]] * diag(zg, zg*)
  ComplexMatrix r(2, 2);
  r(0, 0) = za * c * zg;
  r(0, 1) = za * s * std::conj(zg);
  r(1, 0) = -std::conj(za) * s * zg;
  r(1, 1) = std::conj(za) * c * std::conj(zg);
  return r;
}

ComplexMatrix su2_from_euler(const EulerAngles& angles) {
  return su2_rotation(angles.alpha, angles.beta, angles.gamma);
}

ComplementaryTriple triple_from_su2(const ComplexMatrix& r) {
  if (r.rows() != 2 || r.cols() != 2)
    throw std::invalid_argument("triple_from_su2: expected a 2x2 matrix");
  const double unitarity = max_abs(r.adjoint() * r - ComplexMatrix::Identity(2, 2));
  if (unitarity > tol::structural)
    throw std::invalid_argument("triple_from_su2: matrix is not unitary");
  ComplementaryTriple t;
  t.su2 = r;
  for (int k = 0; k < 3; ++k) {
    t.x[static_cast<size_t>(k)] = r * pauli(k + 1) * r.adjoint();
    for (int j = 0; j < 3; ++j)
      t.frame(j, k) = 0.5 * (t.x[static_cast<size_t>(k)] * pauli(j + 1)).trace().real();
  }
  return t;
}

ComplementaryTriple triple_from_frame(const Eigen::Vector3d& a1, const Eigen::Vector3d& a2,
                                      const Eigen::Vector3d& a3) {
  Eigen::Matrix3d f;
  f.col(0) = a1;
  f.col(1) = a2;
  f.col(2) = a3;
  const double gram_residual = (f.transpose() * f - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double det = f.determinant();
  if (gram_residual > 1e-9) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "triple_from_frame: frame not orthonormal (Gram residual "
       << gram_residual << ")";
    throw std::invalid_argument(os.str());
  }
  if (det < 0.0) {
    std::ostringstream os;
    os.precision(6);
    os << "triple_from_frame: left-handed frame rejected (det " << det << ")";
    throw std::invalid_argument(os.str());
  }
  return triple_from_clean_frame(orthonormalize(f));
}

ComplementaryTriple sigma_triple() {
  return triple_from_su2(ComplexMatrix::Identity(2, 2));
}

}  // namespace telres
