// pauli.hpp — Pauli matrices, complementary observable triples, SU(2) charts
//
// Convention: sigma_1 = |0><1| + |1><0|, sigma_2 = i(|0><1| - |1><0|),
// sigma_3 = |0><0| - |1><1|. With this sign of sigma_2 the algebra reads
// sigma_j sigma_k = delta_jk I - i eps_jkl sigma_l, so a right-handed
// orthonormal frame {a_k} gives observables X_k = a_k . sigma with
// X_1 X_2 X_3 = -i I_2.

#pragma once

#include <telres/types.hpp>

#include <array>

namespace telres {

// k in {0, 1, 2, 3} naming {I_2, sigma_1, sigma_2, sigma_3}.
ComplexMatrix pauli(int k);

struct EulerAngles {
  double alpha;  // [0, 2*pi)
  double beta;   // [0, pi]
  double gamma;  // [0, 2*pi)

  EulerAngles(double alpha, double beta, double gamma);

  // Wraps arbitrary reals into range, preserving the rotation up to global
  // phase (which conjugation kills).
  static EulerAngles canonical(double alpha, double beta, double gamma);
};

// exp(-i alpha sigma_3/2) exp(-i beta sigma_2/2) exp(-i gamma sigma_3/2).
// Unconstrained chart; any reals are accepted.
ComplexMatrix su2_rotation(double alpha, double beta, double gamma);

// Range-checked wrapper over su2_rotation.
ComplexMatrix su2_from_euler(const EulerAngles& angles);

// Three single-qubit observables X_k = a_k . sigma with an orthonormal
// right-handed frame, satisfying X_1 X_2 X_3 = -i I_2.
struct ComplementaryTriple {
  std::array<ComplexMatrix, 3> x;  // X_1, X_2, X_3
  Eigen::Matrix3d frame;           // column k-1 holds a_k
  ComplexMatrix su2;               // R with X_k = R sigma_k R^dagger
};

// X_k = R sigma_k R^dagger; the frame is recovered as a_k^j = Tr(X_k sigma_j)/2.
ComplementaryTriple triple_from_su2(const ComplexMatrix& r);

// X_k = a_k . sigma. Rejects non-orthonormal or left-handed frames with the
// offending Gram residual / determinant in the message.
ComplementaryTriple triple_from_frame(const Eigen::Vector3d& a1, const Eigen::Vector3d& a2,
                                      const Eigen::Vector3d& a3);

// The identity-frame triple (sigma_1, sigma_2, sigma_3).
ComplementaryTriple sigma_triple();

}  // namespace telres
