#include <telres/gamma.hpp>

#include <telres/linalg.hpp>
#include <telres/nelder_mead.hpp>
#include <telres/random.hpp>

#include <cmath>
#include <numbers>
#include <thread>

namespace telres {

namespace {

constexpr double kTieBreak = 1e-12;

void check_pair_count(size_t n, size_t max_n, const char* who) {
  if (n < 1 || n > max_n)
    throw std::invalid_argument(std::string(who) + ": pair count out of range");
}

// (I x I + X_1 x s_1 - X_2 x s_2 + X_3 x s_3) / 4, one Bell-pair block.
ComplexMatrix pair_factor(const ComplementaryTriple& t) {
  ComplexMatrix f = kron(pauli(0), pauli(0));
  f += kron(t.x[0], pauli(1));
  f -= kron(t.x[1], pauli(2));
  f += kron(t.x[2], pauli(3));
  return 0.25 * f;
}

void check_invariants(const GammaOperator& g) {
  if (hermiticity_residual(g.matrix) > tol::structural)
    throw std::logic_error("gamma assembly: matrix not Hermitian");
  if (std::abs(g.matrix.trace() - Complex(1.0)) > tol::derived)
    throw std::logic_error("gamma assembly: trace differs from 1");
}

// Expectation of Gamma against a fixed spectral decomposition of rho,
// evaluated per angle vector without rebuilding the 4^n matrix: with
// |g> = (R x I)|phi+>, <g|psi_r> = sum_ab conj(R(a,b)) Psi_r(a,b) / sqrt(2^n)
// where Psi_r is the eigenvector reshaped to 2^n x 2^n.
class GammaObjective {
 public:
  GammaObjective(const DensityMatrix& rho, int n) : n_(n), dim_(Eigen::Index(1) << n) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix);
    for (Eigen::Index r = 0; r < es.eigenvalues().size(); ++r) {
      const double lambda = es.eigenvalues()[r];
      if (lambda <= 1e-12) continue;
      weights_.push_back(lambda);
      ComplexMatrix psi(dim_, dim_);
      for (Eigen::Index a = 0; a < dim_; ++a)
        for (Eigen::Index b = 0; b < dim_; ++b) psi(a, b) = es.eigenvectors()(a * dim_ + b, r);
      vectors_.push_back(std::move(psi));
    }
  }

  double value(const Eigen::VectorXd& angles) const {
    ComplexMatrix rot = ComplexMatrix::Identity(1, 1);
    for (int i = 0; i < n_; ++i)
      rot = kron(rot, su2_rotation(angles[3 * i], angles[3 * i + 1], angles[3 * i + 2])).eval();
    double total = 0.0;
    for (size_t r = 0; r < weights_.size(); ++r) {
      const Complex overlap = rot.conjugate().cwiseProduct(vectors_[r]).sum();
      total += weights_[r] * std::norm(overlap);
    }
    return total / static_cast<double>(dim_);
  }

 private:
  int n_;
  Eigen::Index dim_;
  std::vector<double> weights_;
  std::vector<ComplexMatrix> vectors_;
};

struct RestartOutcome {
  Eigen::VectorXd angles;
  double value = -1.0;
  bool converged = false;
};

RestartOutcome run_restart(const GammaObjective& objective, int n, int index,
                           const SearchConfig& config) {
  Eigen::VectorXd start = Eigen::VectorXd::Zero(3 * n);
  if (index > 0) {
    Rng rng = Rng(config.seed).split(static_cast<std::uint64_t>(index));
    for (int i = 0; i < n; ++i) {
      start[3 * i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
      start[3 * i + 1] = rng.uniform(0.0, std::numbers::pi);
      start[3 * i + 2] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
  }
  NelderMeadOptions opts;
  opts.max_iters = config.max_iters;
  const NelderMeadResult nm =
      nelder_mead([&](const Eigen::VectorXd& a) { return -objective.value(a); }, start, opts);
  return {nm.x, -nm.value, nm.converged};
}

}  // namespace

GammaOperator build_gamma_product(const std::vector<ComplementaryTriple>& triples) {
  check_pair_count(triples.size(), 6, "build_gamma_product");
  const int n = static_cast<int>(triples.size());

  std::vector<ComplexMatrix> factors;
  factors.reserve(triples.size());
  for (const auto& t : triples) factors.push_back(pair_factor(t));
  const ComplexMatrix paired = tensor_product(factors);

  // Source slot order is A_1,B_1,A_2,B_2,..; route A_i to slot i-1 and
  // B_i to slot n+i-1.
  std::vector<int> dims(static_cast<size_t>(2 * n), 2);
  std::vector<int> dest(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    dest[static_cast<size_t>(2 * i)] = i;
    dest[static_cast<size_t>(2 * i + 1)] = n + i;
  }

  GammaOperator g{n, triples, permute_slots(paired, dims, dest)};
  check_invariants(g);
  return g;
}

GammaOperator build_gamma_sum(const std::vector<ComplementaryTriple>& triples) {
  check_pair_count(triples.size(), 4, "build_gamma_sum");
  const int n = static_cast<int>(triples.size());
  const SubsystemLayout layout = SubsystemLayout::multiqubit(n);
  const Eigen::Index dim = layout.total_dim();

  // Assignment digit per pair: 0 = pair absent, j in {1,2,3} = X_j x s_j.
  std::vector<int> digits(static_cast<size_t>(n), 0);
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  const std::uint64_t assignments = 1ull << (2 * n);
  for (std::uint64_t code = 0; code < assignments; ++code) {
    std::uint64_t rest = code;
    int sign = 1;
    for (int i = 0; i < n; ++i) {
      digits[static_cast<size_t>(i)] = static_cast<int>(rest & 3u);
      rest >>= 2;
      if (digits[static_cast<size_t>(i)] == 2) sign = -sign;
    }
    if (code == 0) {
      total += ComplexMatrix::Identity(dim, dim);
      continue;
    }
    std::vector<ComplexMatrix> ops;
    std::vector<int> positions;
    for (int i = 0; i < n; ++i) {
      const int j = digits[static_cast<size_t>(i)];
      if (j == 0) continue;
      ops.push_back(triples[static_cast<size_t>(i)].x[static_cast<size_t>(j - 1)]);
      positions.push_back(i);
    }
    for (int i = 0; i < n; ++i) {
      const int j = digits[static_cast<size_t>(i)];
      if (j == 0) continue;
      ops.push_back(pauli(j));
      positions.push_back(n + i);
    }
    total += static_cast<double>(sign) * embed_operator(tensor_product(ops), positions, layout);
  }
  total /= std::pow(4.0, n);

  GammaOperator g{n, triples, std::move(total)};
  check_invariants(g);
  return g;
}

double gamma_expectation(const DensityMatrix& rho,
                         const std::vector<ComplementaryTriple>& triples) {
  if (!rho.layout.is_multiqubit())
    throw std::invalid_argument("gamma_expectation: state layout is not n qubits per side");
  if (rho.layout.qubits_per_side() != static_cast<int>(triples.size()))
    throw std::invalid_argument("gamma_expectation: triple count differs from qubits per side");
  return expectation(rho, build_gamma_product(triples).matrix);
}

GammaSearchResult maximize_gamma(const DensityMatrix& rho, const SearchConfig& config) {
  if (!rho.layout.is_multiqubit())
    throw std::invalid_argument("maximize_gamma: state layout is not n qubits per side");
  if (config.restarts < 1) throw std::invalid_argument("maximize_gamma: restarts must be >= 1");
  if (config.max_iters < 1) throw std::invalid_argument("maximize_gamma: max_iters must be >= 1");
  const int n = rho.layout.qubits_per_side();

  const GammaObjective objective(rho, n);
  std::vector<RestartOutcome> outcomes(static_cast<size_t>(config.restarts));
  const int jobs = std::clamp(config.jobs, 1, config.restarts);
  if (jobs == 1) {
    for (int i = 0; i < config.restarts; ++i)
      outcomes[static_cast<size_t>(i)] = run_restart(objective, n, i, config);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (int i = w; i < config.restarts; i += jobs)
          outcomes[static_cast<size_t>(i)] = run_restart(objective, n, i, config);
      });
    }
    for (auto& t : workers) t.join();
  }

  // Reduce in restart order; a later restart must beat the incumbent by
  // more than the tie-break to win, so the result is jobs-independent.
  size_t best = 0;
  for (size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].value > outcomes[best].value + kTieBreak) best = i;

  GammaSearchResult result;
  result.restarts_used = config.restarts;
  result.converged = outcomes[best].converged;
  for (int i = 0; i < n; ++i) {
    result.best_angles.push_back(EulerAngles::canonical(outcomes[best].angles[3 * i],
                                                        outcomes[best].angles[3 * i + 1],
                                                        outcomes[best].angles[3 * i + 2]));
    result.best_triples.push_back(triple_from_su2(su2_from_euler(result.best_angles.back())));
  }
  Eigen::VectorXd canonical(3 * n);
  for (int i = 0; i < n; ++i) {
    canonical[3 * i] = result.best_angles[static_cast<size_t>(i)].alpha;
    canonical[3 * i + 1] = result.best_angles[static_cast<size_t>(i)].beta;
    canonical[3 * i + 2] = result.best_angles[static_cast<size_t>(i)].gamma;
  }
  result.best_value = objective.value(canonical);
  return result;
}

GammaSearchResult detect_ideal_resource(const DensityMatrix& rho, const SearchConfig& config) {
  if (purity(rho) < 1.0 - tol::derived)
    throw std::invalid_argument("detect_ideal_resource: input must be pure (Tr rho^2 >= 1 - 1e-9)");
  GammaSearchResult result = maximize_gamma(rho, config);
  result.verdict = result.best_value >= 1.0 - config.ideal_tol ? GammaVerdict::Ideal
                                                               : GammaVerdict::Inconclusive;
  return result;
}

GammaSearchResult separability_test(const DensityMatrix& rho, const SearchConfig& config) {
  GammaSearchResult result = maximize_gamma(rho, config);
  const double ceiling = 1.0 / std::pow(2.0, rho.layout.qubits_per_side());
  result.verdict = result.best_value > ceiling + config.margin ? GammaVerdict::Entangled
                                                               : GammaVerdict::Inconclusive;
  return result;
}

}  // namespace telres
