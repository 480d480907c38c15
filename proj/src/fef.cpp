#include <telres/fef.hpp>

#include <telres/linalg.hpp>
#include <telres/random.hpp>

#include <cmath>
#include <thread>

namespace telres {

namespace {

constexpr double kTieBreak = 1e-12;

void check_square_bipartite(const SubsystemLayout& layout, int d, const char* who) {
  if (layout.dim_a() != d || layout.dim_b() != d)
    throw std::invalid_argument(std::string(who) + ": state is not bipartite d x d for the given d");
}

// vec with v[i*d + j] = U(i, j)/sqrt(d); the image of |psi+> under U x I.
ComplexVector rotated_max_entangled(const ComplexMatrix& u) {
  const Eigen::Index d = u.rows();
  ComplexVector v(d * d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v[i * d + j] = u(i, j) * scale;
  return v;
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

struct AscentOutcome {
  ComplexMatrix u;
  double value = -1.0;
  bool converged = false;
};

// Gradient of F with respect to conj(U): G(i,j) = (rho v)[i*d+j]/sqrt(d).
AscentOutcome ascend(const DensityMatrix& rho, int d, ComplexMatrix u, int max_iters) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  AscentOutcome out;
  out.u = std::move(u);
  out.value = fef_objective(rho, out.u);
  for (int iter = 0; iter < max_iters; ++iter) {
    const ComplexVector rv = rho.matrix * rotated_max_entangled(out.u);
    ComplexMatrix grad(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) grad(i, j) = rv[Eigen::Index(i) * d + j] * scale;

    double eta = 1.0;
    bool improved = false;
    ComplexMatrix candidate;
    double candidate_value = out.value;
    while (eta > 1e-14) {
      candidate = polar_unitary(out.u + eta * grad);
      candidate_value = fef_objective(rho, candidate);
      if (candidate_value > out.value) {
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) {
      out.converged = true;  // no ascent direction left at line-search resolution
      return out;
    }
    const double gain = candidate_value - out.value;
    out.u = std::move(candidate);
    out.value = candidate_value;
    if (gain < 1e-12 * std::max(1.0, std::abs(out.value))) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace

double fef_objective(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("fef_objective: unitary must be square");
  if (rho.matrix.rows() != u.rows() * u.rows())
    throw std::invalid_argument("fef_objective: dimension mismatch between state and unitary");
  const ComplexVector v = rotated_max_entangled(u);
  return v.dot(rho.matrix * v).real();
}

FefResult fef_pure(const PureState& phi, int d) {
  if (d < 2) throw std::invalid_argument("fef_pure: d must be >= 2");
  check_square_bipartite(phi.layout, d, "fef_pure");

  ComplexMatrix amp(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) amp(a, b) = phi.amplitudes[Eigen::Index(a) * d + b];
  Eigen::JacobiSVD<ComplexMatrix> svd(amp, Eigen::ComputeFullU | Eigen::ComputeFullV);

  FefResult result;
  result.method = FefMethod::ClosedFormPure;
  result.converged = true;
  const double sum = svd.singularValues().sum();
  result.value = sum * sum / static_cast<double>(d);
  // Tr(U^dagger M) = sum of singular values at U = V W^dagger.
  result.optimizer_unitary = svd.matrixU() * svd.matrixV().adjoint();
  return result;
}

FefResult fef_optimize(const DensityMatrix& rho, int d, const FefConfig& config) {
  if (d < 2 || d > 8) throw std::invalid_argument("fef_optimize: d must be in [2, 8]");
  check_square_bipartite(rho.layout, d, "fef_optimize");
  if (config.restarts < 1) throw std::invalid_argument("fef_optimize: restarts must be >= 1");
  if (config.max_iters < 1) throw std::invalid_argument("fef_optimize: max_iters must be >= 1");

  std::vector<AscentOutcome> outcomes(static_cast<size_t>(config.restarts));
  auto run = [&](int i) {
    const ComplexMatrix start =
        i == 0 ? ComplexMatrix::Identity(d, d)
               : random_unitary(d, Rng(config.seed).split(static_cast<std::uint64_t>(i)).next_u64());
    outcomes[static_cast<size_t>(i)] = ascend(rho, d, start, config.max_iters);
  };

  const int jobs = std::clamp(config.jobs, 1, config.restarts);
  if (jobs == 1) {
    for (int i = 0; i < config.restarts; ++i) run(i);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        for (int i = w; i < config.restarts; i += jobs) run(i);
      });
    for (auto& t : workers) t.join();
  }

  size_t best = 0;
  for (size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].value > outcomes[best].value + kTieBreak) best = i;

  FefResult result;
  result.method = FefMethod::ManifoldAscent;
  result.restarts_used = config.restarts;
  result.converged = outcomes[best].converged;
  result.value = outcomes[best].value;
  result.optimizer_unitary = std::move(outcomes[best].u);
  return result;
}

FefResult compute_fef(const DensityMatrix& rho, int d, const FefConfig& config) {
  if (!config.force_optimizer && purity(rho) >= 1.0 - tol::derived) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix);
    const Eigen::Index top = es.eigenvalues().size() - 1;
    ComplexVector psi = es.eigenvectors().col(top);
    psi /= psi.norm();
    return fef_pure(PureState(std::move(psi), rho.layout), d);
  }
  return fef_optimize(rho, d, config);
}

double fidelity_from_fef(double fef, int d) {
  if (d < 2) throw std::invalid_argument("fidelity_from_fef: d must be >= 2");
  if (fef < -tol::derived || fef > 1.0 + tol::derived)
    throw std::invalid_argument("fidelity_from_fef: fraction outside [0, 1]");
  return (d * fef + 1.0) / (d + 1.0);
}

TeleportationVerdict is_useful(const DensityMatrix& rho, int d, const FefConfig& config) {
  TeleportationVerdict verdict;
  verdict.fef = compute_fef(rho, d, config);
  verdict.fidelity = fidelity_from_fef(verdict.fef.value, d);
  verdict.useful = verdict.fef.value > 1.0 / d + config.usefulness_margin
                       ? Usefulness::Useful
                       : Usefulness::Inconclusive;
  return verdict;
}

}  // namespace telres
