// witness.hpp — Teleportation witnesses alpha I - |chi><chi|, their
// evaluation, the spanning-product-vector optimality certificate, and
// usefulness detection through the witness family.

#pragma once

#include <telres/fef.hpp>
#include <telres/state.hpp>
#include <telres/types.hpp>

#include <string>
#include <vector>

namespace telres {

enum class WitnessSource { Identity, Rotated, FromPure };

// W = alpha I - |chi><chi| on a bipartite space. For Identity/Rotated
// sources alpha = 1/d and chi is (U x I)|psi+>; FromPure witnesses use an
// arbitrary entangled core with alpha its largest squared Schmidt
// coefficient.
struct Witness {
  ComplexMatrix matrix;
  double alpha;
  WitnessSource source;
  ComplexMatrix unitary;     // Rotated: the d x d U; empty otherwise
  ComplexVector core_state;  // |chi>, unit norm
  SubsystemLayout layout;
  int d;                     // local dimension for square layouts, 0 otherwise
};

// W(I) = I/d - |psi+><psi+|.
Witness witness_identity(int d);

// W(U) = (U x I) W(I) (U^dagger x I); U must be unitary within 1e-10.
Witness witness_rotated(const ComplexMatrix& u);

// alpha = (largest Schmidt coefficient)^2. Product states are rejected:
// alpha = 1 gives a positive operator, not a witness.
Witness witness_from_pure(const PureState& psi);

// Tr(W rho); negative values certify detection.
double evaluate(const Witness& w, const DensityMatrix& rho);

// The d^2 unnormalized product vectors annihilated by W(I):
// |jj> for each j; (|k>+|l>) x (|k>+|l>) and (|k>+i|l>) x (|k>-i|l>) for
// each k < l.
std::vector<ComplexVector> optimality_vectors(int d);

struct OptimalityCertificate {
  std::vector<ComplexVector> vectors;   // product vectors tested against W
  RealVector annihilation_residuals;    // <v|W|v> per vector
  int gram_rank = 0;
  bool optimal = false;
  std::string note;
};

// Optimal iff the vectors span (Gram rank d^2, singular values above
// d^2 * eps * largest) and all residuals are <= 1e-10. Rotated witnesses
// transport the base vectors through U x I. FromPure witnesses qualify only
// when the core is maximally entangled (uniform Schmidt spectrum); otherwise
// the certificate comes back optimal=false with a note.
OptimalityCertificate check_optimality(const Witness& w);

struct WitnessDetection {
  Usefulness verdict = Usefulness::Inconclusive;
  double min_value = 0.0;        // min over U of Tr(W(U) rho), as certified
  ComplexMatrix best_unitary;
  FefResult fef;
};

// Minimizes Tr(W(U) rho) = 1/d - <psi+|(U^dagger x I) rho (U x I)|psi+>
// by running the fully-entangled-fraction optimizer; Useful iff the minimum
// is below -usefulness_margin.
WitnessDetection detect_useful_via_witness(const DensityMatrix& rho, int d,
                                           const FefConfig& config = {});

}  // namespace telres
