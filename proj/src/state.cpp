#include <telres/state.hpp>

#include <telres/linalg.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

namespace telres {

namespace {

std::string residual_message(const char* check, double residual, const char* bound) {
  std::ostringstream os;
  os.precision(1);
  os << std::scientific << check << " residual " << residual << " exceeds " << bound;
  return os.str();
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<int> dims, int side_split)
    : dims_(std::move(dims)), side_split_(side_split) {
  if (dims_.size() < 2) throw std::invalid_argument("layout: need at least two slots");
  for (int d : dims_)
    if (d < 2) throw std::invalid_argument("layout: all local dimensions must be >= 2");
  if (side_split_ < 1 || side_split_ >= num_slots())
    throw std::invalid_argument("layout: side_split out of range");
}

SubsystemLayout SubsystemLayout::multiqubit(int qubits_per_side) {
  if (qubits_per_side < 1) throw std::invalid_argument("layout: qubits_per_side must be >= 1");
  return SubsystemLayout(std::vector<int>(2 * qubits_per_side, 2), qubits_per_side);
}

SubsystemLayout SubsystemLayout::bipartite(int dim_a, int dim_b) {
  return SubsystemLayout({dim_a, dim_b}, 1);
}

Eigen::Index SubsystemLayout::total_dim() const {
  Eigen::Index d = 1;
  for (int k : dims_) d *= k;
  return d;
}

Eigen::Index SubsystemLayout::dim_a() const {
  Eigen::Index d = 1;
  for (int i = 0; i < side_split_; ++i) d *= dims_[static_cast<size_t>(i)];
  return d;
}

Eigen::Index SubsystemLayout::dim_b() const { return total_dim() / dim_a(); }

bool SubsystemLayout::is_multiqubit() const {
  if (num_slots() % 2 != 0 || side_split_ != num_slots() / 2) return false;
  for (int d : dims_)
    if (d != 2) return false;
  return true;
}

int SubsystemLayout::qubits_per_side() const {
  if (!is_multiqubit())
    throw std::invalid_argument("layout: not a symmetric multiqubit A|B layout");
  return side_split_;
}

SubsystemLayout SubsystemLayout::grouped_bipartite() const {
  return bipartite(static_cast<int>(dim_a()), static_cast<int>(dim_b()));
}

PureState::PureState(ComplexVector amps, SubsystemLayout lay)
    : amplitudes(std::move(amps)), layout(std::move(lay)) {
  if (amplitudes.size() != layout.total_dim())
    throw std::invalid_argument("pure state: amplitude length does not match layout");
  if (amplitudes.size() > kMaxPureDim)
    throw std::invalid_argument("pure state: dimension exceeds supported maximum 4096");
  if (!amplitudes.allFinite()) throw ValidationError("pure state: non-finite amplitude");
  const double norm_residual = std::abs(amplitudes.norm() - 1.0);
  if (norm_residual > tol::structural)
    throw ValidationError(residual_message("norm", norm_residual, "1e-10"));
}

DensityMatrix::DensityMatrix(ComplexMatrix m, SubsystemLayout lay)
    : matrix(std::move(m)), layout(std::move(lay)) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != layout.total_dim())
    throw std::invalid_argument("density matrix: shape does not match layout");
  if (matrix.rows() > kMaxDensityDim)
    throw std::invalid_argument("density matrix: dimension exceeds supported maximum 1024");
  if (!matrix.allFinite()) throw ValidationError("density matrix: non-finite entry");
  const double herm = hermiticity_residual(matrix);
  if (herm > tol::structural)
    throw ValidationError(residual_message("hermiticity", herm, "1e-10"));
  const double trace_residual = std::abs(matrix.trace() - Complex(1.0, 0.0));
  if (trace_residual > tol::structural)
    throw ValidationError(residual_message("trace", trace_residual, "1e-10"));
  const double min_eig = min_eigenvalue_hermitian(matrix);
  if (min_eig < tol::eigen_floor) {
    std::ostringstream os;
    os.precision(1);
    os << std::scientific << "minimum eigenvalue " << min_eig << " below -1e-9";
    throw ValidationError(os.str());
  }
}

DensityMatrix to_density(const PureState& psi) {
  return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint(), psi.layout);
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix * rho.matrix).trace().real();
}

PureState bell_tensor(int n) {
  if (n < 1) throw std::invalid_argument("bell_tensor: n must be >= 1");
  const SubsystemLayout layout = SubsystemLayout::multiqubit(n);
  const Eigen::Index half = Eigen::Index(1) << n;
  ComplexVector amps = ComplexVector::Zero(half * half);
  const double a = 1.0 / std::sqrt(static_cast<double>(half));
  for (Eigen::Index k = 0; k < half; ++k) amps[k * half + k] = a;
  return PureState(std::move(amps), layout);
}

PureState max_entangled_pure(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled_pure: d must be >= 2");
  const SubsystemLayout layout = SubsystemLayout::bipartite(d, d);
  ComplexVector amps = ComplexVector::Zero(Eigen::Index(d) * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) amps[Eigen::Index(i) * d + i] = a;
  return PureState(std::move(amps), layout);
}

DensityMatrix werner_state(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner_state: p must be in [0, 1]");
  const PureState bell = bell_tensor(1);
  ComplexMatrix rho = p * (bell.amplitudes * bell.amplitudes.adjoint());
  rho += (1.0 - p) * 0.25 * ComplexMatrix::Identity(4, 4);
  return DensityMatrix(std::move(rho), bell.layout);
}

}  // namespace telres
