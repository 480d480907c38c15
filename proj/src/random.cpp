#include <telres/random.hpp>

#include <telres/linalg.hpp>

#include <cmath>
#include <numbers>

namespace telres {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // u1 in (0, 1] so the log is finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im);
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix64(state_ ^ (kGolden * (stream + 1))));
}

PureState random_haar_pure(const SubsystemLayout& layout, std::uint64_t seed) {
  Rng rng(seed);
  ComplexVector v(layout.total_dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.complex_normal();
  v /= v.norm();
  return PureState(std::move(v), layout);
}

DensityMatrix random_density(const SubsystemLayout& layout, int rank, std::uint64_t seed) {
  if (rank < 1) throw std::invalid_argument("random_density: rank must be >= 1");
  Rng rng(seed);
  const Eigen::Index d = layout.total_dim();
  ComplexMatrix g(d, rank);
  for (Eigen::Index j = 0; j < rank; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  // Symmetrize away the last bits of rounding noise.
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(std::move(rho), layout);
}

PureState random_product_pure(const SubsystemLayout& layout, std::uint64_t seed) {
  Rng rng(seed);
  ComplexVector v = ComplexVector::Ones(1);
  for (int s = 0; s < layout.num_slots(); ++s) {
    const int d = layout.dims()[static_cast<size_t>(s)];
    ComplexVector f(d);
    for (int i = 0; i < d; ++i) f[i] = rng.complex_normal();
    f /= f.norm();
    ComplexVector next(v.size() * d);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      for (int j = 0; j < d; ++j) next[i * d + j] = v[i] * f[j];
    v = std::move(next);
  }
  return PureState(std::move(v), layout);
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be >= 1");
  Rng rng(seed);
  ComplexMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the R-diagonal phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0.0) ? rjj / a : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace telres
