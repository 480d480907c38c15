// state.hpp — Subsystem bookkeeping and validated state types

#pragma once

#include <telres/types.hpp>

#include <vector>

namespace telres {

// Ordered tensor factors with an A|B cut. Slot 0 is the leftmost (most
// significant) factor; the basis index of a composite state is the
// mixed-radix number over slots. Slots [0, side_split) form the A side,
// the rest form B.
class SubsystemLayout {
 public:
  SubsystemLayout(std::vector<int> dims, int side_split);

  // n qubits per side, ordered A_1..A_n, B_1..B_n.
  static SubsystemLayout multiqubit(int qubits_per_side);
  // Two factors of local dimension d_a, d_b.
  static SubsystemLayout bipartite(int dim_a, int dim_b);

  const std::vector<int>& dims() const { return dims_; }
  int side_split() const { return side_split_; }
  int num_slots() const { return static_cast<int>(dims_.size()); }

  Eigen::Index total_dim() const;
  Eigen::Index dim_a() const;  // product of A-side dims
  Eigen::Index dim_b() const;

  // All slots are qubits and the cut is symmetric (A_1..A_n, B_1..B_n).
  bool is_multiqubit() const;
  int qubits_per_side() const;  // throws unless is_multiqubit()

  // Same factors grouped into two slots [dim_a, dim_b].
  SubsystemLayout grouped_bipartite() const;

  bool operator==(const SubsystemLayout& other) const = default;

 private:
  std::vector<int> dims_;
  int side_split_;
};

// Unit-norm complex amplitude vector over a layout.
struct PureState {
  ComplexVector amplitudes;
  SubsystemLayout layout;

  // Validates length, finiteness, and unit norm (1e-10).
  PureState(ComplexVector amplitudes, SubsystemLayout layout);
};

// Hermitian, unit-trace, positive-semidefinite matrix over a layout.
struct DensityMatrix {
  ComplexMatrix matrix;
  SubsystemLayout layout;

  // Validates shape, Hermiticity (1e-10), trace (1e-10), and minimum
  // eigenvalue (>= -1e-9).
  DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout);
};

DensityMatrix to_density(const PureState& psi);

double purity(const DensityMatrix& rho);  // Tr(rho^2)

// Tensor product of Bell pairs across the A|B cut:
// (1/sqrt(2^n)) sum_i |i_1..i_n>_A |i_1..i_n>_B, layout A_1..A_n,B_1..B_n.
PureState bell_tensor(int n);

// (1/sqrt(d)) sum_i |ii> on a bipartite d x d layout.
PureState max_entangled_pure(int d);

// Two-qubit p |phi+><phi+| + (1-p) I/4 for p in [0, 1].
DensityMatrix werner_state(double p);

}  // namespace telres
