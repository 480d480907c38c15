// nelder_mead.hpp — derivative-free simplex minimizer for small dimensions.
#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace telres {

struct NelderMeadOptions {
  int max_iters = 400;
  double diameter_tol = 1e-9;   // converged when all vertices are this close to the best
  double initial_step = 0.5;    // per-coordinate offset used to seed the simplex
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Standard Nelder-Mead with reflection 1, expansion 2, contraction 0.5 and
// shrink 0.5. Deterministic for a fixed starting point.
inline NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                    const Eigen::VectorXd& start,
                                    const NelderMeadOptions& opts = {}) {
  const int n = static_cast<int>(start.size());
  if (n < 1) throw std::invalid_argument("nelder_mead: empty start vector");

  struct Vertex {
    Eigen::VectorXd x;
    double value;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(static_cast<size_t>(n) + 1);
  simplex.push_back({start, f(start)});
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x = start;
    x[i] += opts.initial_step;
    simplex.push_back({x, f(x)});
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.value < b.value; };
  std::sort(simplex.begin(), simplex.end(), by_value);

  NelderMeadResult result;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    double diameter = 0.0;
    for (int i = 1; i <= n; ++i)
      diameter = std::max(diameter, (simplex[static_cast<size_t>(i)].x - simplex[0].x).norm());
    if (diameter < opts.diameter_tol) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[static_cast<size_t>(i)].x;
    centroid /= static_cast<double>(n);

    Vertex& worst = simplex[static_cast<size_t>(n)];
    const Eigen::VectorXd reflected = centroid + (centroid - worst.x);
    const double fr = f(reflected);

    if (fr < simplex[0].value) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst.x);
      const double fe = f(expanded);
      worst = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
    } else if (fr < simplex[static_cast<size_t>(n - 1)].value) {
      worst = {reflected, fr};
    } else {
      const bool outside = fr < worst.value;
      const Eigen::VectorXd base = outside ? reflected : worst.x;
      const Eigen::VectorXd contracted = centroid + 0.5 * (base - centroid);
      const double fc = f(contracted);
      if (fc < (outside ? fr : worst.value)) {
        worst = {contracted, fc};
      } else {
        for (int i = 1; i <= n; ++i) {
          Vertex& v = simplex[static_cast<size_t>(i)];
          v.x = simplex[0].x + 0.5 * (v.x - simplex[0].x);
          v.value = f(v.x);
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
  }

  result.x = simplex[0].x;
  result.value = simplex[0].value;
  result.iterations = iter;
  return result;
}

}  // namespace telres
