// random.hpp — Seeded, splittable sampling of states and unitaries

#pragma once

#include <telres/state.hpp>
#include <telres/types.hpp>

#include <cstdint>

namespace telres {

// Counter-based generator (splitmix64). Every stochastic operation takes an
// explicit seed; independent streams are derived with split(), so results
// are reproducible regardless of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();            // [0, 1)
  double uniform(double lo, double hi);
  double normal();             // standard Gaussian, Box-Muller
  Complex complex_normal();    // independent N(0,1) real and imaginary parts

  // Decorrelated child stream; deterministic in (current state, stream).
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
};

// Normalized complex Gaussian vector (Haar on the sphere).
PureState random_haar_pure(const SubsystemLayout& layout, std::uint64_t seed);

// G G^dagger / Tr(G G^dagger) with G a total_dim x rank complex Gaussian.
DensityMatrix random_density(const SubsystemLayout& layout, int rank, std::uint64_t seed);

// Tensor product of independent single-slot Haar states; fully separable
// by construction.
PureState random_product_pure(const SubsystemLayout& layout, std::uint64_t seed);

// Haar unitary via QR of a Ginibre matrix with phase-fixed R diagonal.
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

}  // namespace telres
