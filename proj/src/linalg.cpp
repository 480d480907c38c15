#include <telres/linalg.hpp>

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace telres {

namespace {

// map[x] = index obtained by routing source digit j to position dest[j].
std::vector<Eigen::Index> index_relabel_map(const std::vector<int>& dims,
                                            const std::vector<int>& dest) {
  const int m = static_cast<int>(dims.size());
  std::vector<int> dims_tgt(dims.size());
  for (int j = 0; j < m; ++j) dims_tgt[static_cast<size_t>(dest[static_cast<size_t>(j)])] =
      dims[static_cast<size_t>(j)];

  // Place value of each target position (slot 0 most significant).
  std::vector<Eigen::Index> weight(dims.size(), 1);
  for (int p = m - 2; p >= 0; --p)
    weight[static_cast<size_t>(p)] =
        weight[static_cast<size_t>(p + 1)] * dims_tgt[static_cast<size_t>(p + 1)];

  Eigen::Index total = 1;
  for (int d : dims) total *= d;

  std::vector<Eigen::Index> map(static_cast<size_t>(total));
  std::vector<int> digit(dims.size());
  for (Eigen::Index x = 0; x < total; ++x) {
    Eigen::Index rest = x;
    for (int j = m - 1; j >= 0; --j) {
      digit[static_cast<size_t>(j)] = static_cast<int>(rest % dims[static_cast<size_t>(j)]);
      rest /= dims[static_cast<size_t>(j)];
    }
    Eigen::Index y = 0;
    for (int j = 0; j < m; ++j)
      y += digit[static_cast<size_t>(j)] * weight[static_cast<size_t>(dest[static_cast<size_t>(j)])];
    map[static_cast<size_t>(x)] = y;
  }
  return map;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

ComplexMatrix tensor_product(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw std::invalid_argument("tensor_product: empty operator list");
  ComplexMatrix out = ops.front();
  for (size_t i = 1; i < ops.size(); ++i) out = kron(out, ops[i]);
  return out;
}

ComplexMatrix permute_slots(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& dest) {
  if (dims.size() != dest.size())
    throw std::invalid_argument("permute_slots: dims/dest size mismatch");
  std::vector<int> seen(dims.size(), 0);
  for (int p : dest) {
    if (p < 0 || p >= static_cast<int>(dims.size()) || seen[static_cast<size_t>(p)]++)
      throw std::invalid_argument("permute_slots: dest is not a permutation");
  }
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("permute_slots: matrix does not match dims");

  const auto map = index_relabel_map(dims, dest);
  ComplexMatrix out(total, total);
  for (Eigen::Index c = 0; c < total; ++c)
    for (Eigen::Index r = 0; r < total; ++r)
      out(map[static_cast<size_t>(r)], map[static_cast<size_t>(c)]) = m(r, c);
  return out;
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& positions,
                             const SubsystemLayout& layout) {
  const auto& dims = layout.dims();
  const int m = layout.num_slots();
  std::vector<int> taken(dims.size(), 0);
  Eigen::Index op_dim = 1;
  for (int p : positions) {
    if (p < 0 || p >= m) throw std::invalid_argument("embed_operator: position out of range");
    if (taken[static_cast<size_t>(p)]++) throw std::invalid_argument("embed_operator: duplicate position");
    op_dim *= dims[static_cast<size_t>(p)];
  }
  if (op.rows() != op.cols() || op.rows() != op_dim)
    throw std::invalid_argument("embed_operator: operator dimension does not match positions");

  // Source slot order: the listed positions first, remaining slots ascending.
  std::vector<int> src_dims;
  std::vector<int> dest;
  src_dims.reserve(dims.size());
  dest.reserve(dims.size());
  for (int p : positions) {
    src_dims.push_back(dims[static_cast<size_t>(p)]);
    dest.push_back(p);
  }
  Eigen::Index rest_dim = 1;
  for (int s = 0; s < m; ++s) {
    if (!taken[static_cast<size_t>(s)]) {
      src_dims.push_back(dims[static_cast<size_t>(s)]);
      dest.push_back(s);
      rest_dim *= dims[static_cast<size_t>(s)];
    }
  }

  ComplexMatrix big = kron(op, ComplexMatrix::Identity(rest_dim, rest_dim));
  return permute_slots(big, src_dims, dest);
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
  if (op.rows() != rho.matrix.rows() || op.cols() != rho.matrix.cols())
    throw std::invalid_argument("expectation: operator dimension mismatch");
  if (hermiticity_residual(op) > tol::structural)
    throw std::invalid_argument("expectation: operator is not Hermitian");
  // Tr(op * rho) without forming the product.
  const Complex value = op.cwiseProduct(rho.matrix.transpose()).sum();
  if (std::abs(value.imag()) > tol::derived)
    throw std::logic_error("expectation: imaginary residue above 1e-9");
  return value.real();
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Side side) {
  const Eigen::Index da = rho.layout.dim_a();
  const Eigen::Index db = rho.layout.dim_b();
  const ComplexMatrix& in = rho.matrix;
  ComplexMatrix out(in.rows(), in.cols());
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index ap = 0; ap < da; ++ap)
      for (Eigen::Index b = 0; b < db; ++b)
        for (Eigen::Index bp = 0; bp < db; ++bp) {
          const Eigen::Index r = a * db + b, c = ap * db + bp;
          const Eigen::Index rt = (side == Side::A) ? ap * db + b : a * db + bp;
          const Eigen::Index ct = (side == Side::A) ? a * db + bp : ap * db + b;
          out(rt, ct) = in(r, c);
        }
  return out;
}

bool is_ppt(const DensityMatrix& rho) {
  return min_eigenvalue_hermitian(partial_transpose(rho, Side::B)) >= tol::eigen_floor;
}

RealVector schmidt_coefficients(const PureState& phi) {
  const Eigen::Index da = phi.layout.dim_a();
  const Eigen::Index db = phi.layout.dim_b();
  ComplexMatrix amp(da, db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b) amp(a, b) = phi.amplitudes[a * db + b];
  Eigen::JacobiSVD<ComplexMatrix> svd(amp);
  return svd.singularValues();
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double min_eigenvalue_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue_hermitian: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace telres
