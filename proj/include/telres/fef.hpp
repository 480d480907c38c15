// fef.hpp — Fully entangled fraction for bipartite d x d states, the optimal
// teleportation fidelity it implies, and the usefulness verdict.

#pragma once

#include <telres/state.hpp>
#include <telres/types.hpp>

#include <cstdint>

namespace telres {

enum class FefMethod { ClosedFormPure, ManifoldAscent };
enum class Usefulness { Useful, Inconclusive };

struct FefConfig {
  int restarts = 32;
  int max_iters = 500;             // ascent iterations per restart
  std::uint64_t seed = 0;
  double usefulness_margin = 1e-7; // Useful: value > 1/d + margin
  int jobs = 1;                    // concurrent restart workers
  bool force_optimizer = false;    // send pure inputs through the ascent path too
};

struct FefResult {
  double value = 0.0;
  ComplexMatrix optimizer_unitary;  // d x d witness of the reported value
  FefMethod method = FefMethod::ManifoldAscent;
  int restarts_used = 0;
  bool converged = false;
};

struct TeleportationVerdict {
  FefResult fef;
  double fidelity = 0.0;
  Usefulness useful = Usefulness::Inconclusive;
};

// <psi+| (U^dagger x I) rho (U x I) |psi+> for a d x d unitary U; the
// quantity maximized by the fully entangled fraction.
double fef_objective(const DensityMatrix& rho, const ComplexMatrix& u);

// Closed form for pure states: ((sum of Schmidt coefficients)^2)/d, with the
// optimizer built from the singular vectors of the amplitude matrix.
FefResult fef_pure(const PureState& phi, int d);

// Projected-gradient ascent over the unitary manifold (polar retraction,
// backtracking line search), best over restarts; restart 0 starts at the
// identity, the rest at seeded Haar unitaries. Deterministic for fixed seed
// regardless of jobs. The value is a certified lower bound on the maximum.
// Requires 2 <= d <= 8.
FefResult fef_optimize(const DensityMatrix& rho, int d, const FefConfig& config = {});

// Routing wrapper: pure inputs (Tr rho^2 >= 1 - 1e-9) go to the closed form
// unless config.force_optimizer is set; everything else to fef_optimize.
FefResult compute_fef(const DensityMatrix& rho, int d, const FefConfig& config = {});

// (d F + 1)/(d + 1).
double fidelity_from_fef(double fef, int d);

// Useful iff the computed fraction exceeds 1/d + usefulness_margin; the
// negative direction is never certified.
TeleportationVerdict is_useful(const DensityMatrix& rho, int d, const FefConfig& config = {});

}  // namespace telres
