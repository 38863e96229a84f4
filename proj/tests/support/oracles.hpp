#pragma once

// Independent reference implementations used only by the tests. Both are
// deliberately written with different algorithms than the library so that
// agreement is meaningful: the nearest-point oracle runs projected gradient
// on the simplex weights, and the global-optimum oracle is a zooming grid
// search with no derivative information at all.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tesgo/dc_problem.hpp"
#include "tesgo/min_norm.hpp"
#include "tesgo/vec.hpp"

namespace tesgo_test {

// Euclidean projection onto the probability simplex (sort-based).
inline std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    double candidate = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0.0) {
      rho = i + 1;
      theta = candidate;
    }
  }
  (void)rho;
  for (auto& x : v) x = std::max(0.0, x - theta);
  return v;
}

// Squared norm of the nearest point to the origin in conv(vertices), by
// projected gradient over the simplex of convex weights.
inline double simplex_min_norm_oracle(const std::vector<tesgo::Vector>& vertices,
                                      int max_iters = 200000) {
  const std::size_t m = vertices.size();
  const std::size_t n = vertices.front().size();
  // Gram matrix G_ij = <v_i, v_j>; objective q(w) = w'Gw, gradient 2Gw.
  std::vector<double> gram(m * m);
  double trace = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      gram[i * m + j] = tesgo::dot(vertices[i], vertices[j]);
      if (i == j) trace += gram[i * m + j];
    }
  const double step = 1.0 / std::max(2.0 * trace, 1e-12);
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  std::vector<double> grad(m), next;
  for (int it = 0; it < max_iters; ++it) {
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += gram[i * m + j] * w[j];
      grad[i] = 2.0 * s;
    }
    next = w;
    for (std::size_t i = 0; i < m; ++i) next[i] -= step * grad[i];
    next = project_simplex(std::move(next));
    double moved = 0.0;
    for (std::size_t i = 0; i < m; ++i) moved += std::abs(next[i] - w[i]);
    w = std::move(next);
    if (moved < 1e-15) break;
  }
  tesgo::Vector point(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) point[j] += w[i] * vertices[i][j];
  return tesgo::squared_norm(point);
}

// Derivative-free global minimum estimate over the box for n in {1, 2}:
// a uniform grid, then repeated zooming around the incumbent.
inline double grid_polish_oracle(const tesgo::DcProblem& p, int points_per_axis = 101,
                                 int stages = 6, double shrink = 0.2) {
  const auto& box = p.box();
  const std::size_t n = box.dimension();
  tesgo::EvalCounters scratch;
  tesgo::Vector lo = box.lower, hi = box.upper;
  tesgo::Vector best_x = box.center();
  double best_f = p.eval(best_x, scratch);
  for (int stage = 0; stage < stages; ++stage) {
    if (n == 1) {
      for (int i = 0; i < points_per_axis; ++i) {
        double x = lo[0] + (hi[0] - lo[0]) * i / (points_per_axis - 1);
        double f = p.eval({x}, scratch);
        if (f < best_f) {
          best_f = f;
          best_x = {x};
        }
      }
    } else {
      for (int i = 0; i < points_per_axis; ++i)
        for (int j = 0; j < points_per_axis; ++j) {
          double x = lo[0] + (hi[0] - lo[0]) * i / (points_per_axis - 1);
          double y = lo[1] + (hi[1] - lo[1]) * j / (points_per_axis - 1);
          double f = p.eval({x, y}, scratch);
          if (f < best_f) {
            best_f = f;
            best_x = {x, y};
          }
        }
    }
    // zoom the window around the incumbent, clipped to the original box
    for (std::size_t d = 0; d < n; ++d) {
      double w = (hi[d] - lo[d]) * shrink * 0.5;
      lo[d] = std::max(box.lower[d], best_x[d] - w);
      hi[d] = std::min(box.upper[d], best_x[d] + w);
    }
  }
  return best_f;
}

}  // namespace tesgo_test
