#pragma once

// Escaping machinery for leaving non-global critical points.
//
// Around a critical point x the solver gathers subgradients of each DC
// component at the shifted points x + t*u over a direction set U, giving the
// sampled polytopes
//   D_t f_i(x) ~= conv{ subgrad(i, x + t*u) : u in U }.
// The deviation is the max over vertices xi2 of D_t f2 of the squared
// distance from xi2 to conv(D_t f1). A large deviation certifies a
// subgradient of f2 that f1 cannot match, from which the convex overestimate
//   fhat(y) = f1(y) - [ f2(x) + <xi2, y - x> - epsilon ]
// is built; minimizing fhat proposes a point where f drops below f(x).

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tesgo/dc_problem.hpp"
#include "tesgo/local_search.hpp"
#include "tesgo/min_norm.hpp"
#include "tesgo/vec.hpp"

namespace tesgo {

struct DirectionSet {
  std::vector<Vector> directions;  // unit vectors
  std::uint64_t seed = 0;
};

// Direction set of size min(m, 2n). With m >= 2n the coordinate spanning set
// {+e1, -e1, ..., +en, -en} is returned exactly; otherwise m seeded random
// unit vectors (normalized standard normals). Deterministic per (n, m, seed).
inline DirectionSet sample_directions(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_directions: dimension must be positive");
  if (m < 1) throw std::invalid_argument("sample_directions: need at least one direction");
  DirectionSet set;
  set.seed = seed;
  if (m >= 2 * n) {
    set.directions.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      Vector plus(n, 0.0), minus(n, 0.0);
      plus[i] = 1.0;
      minus[i] = -1.0;
      set.directions.push_back(std::move(plus));
      set.directions.push_back(std::move(minus));
    }
    return set;
  }
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  set.directions.reserve(m);
  while (set.directions.size() < m) {
    Vector u(n);
    for (double& x : u) x = gauss(engine);
    double len = norm(u);
    if (len < 1e-12) continue;  // essentially impossible, but stay total
    for (double& x : u) x /= len;
    set.directions.push_back(std::move(u));
  }
  return set;
}

// Sampled t-spherical subdifferential: one subgradient per direction, with
// near-duplicate vertices (Euclidean distance <= 1e-9) collapsed to the
// first occurrence. Order follows the direction set, so results are
// deterministic.
inline Polytope spherical_subdiff(const DcProblem& p, int component, const Vector& x, double t,
                                  const DirectionSet& dirs, EvalCounters& c) {
  if (!(t > 0.0)) throw std::invalid_argument("spherical_subdiff: t must be positive");
  if (dirs.directions.empty()) throw std::invalid_argument("spherical_subdiff: empty direction set");
  constexpr double kDupTol = 1e-9;
  Polytope out;
  out.vertices.reserve(dirs.directions.size());
  Vector probe(x.size());
  for (const Vector& u : dirs.directions) {
    for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] + t * u[i];
    Vector g = p.component_subgrad(component, probe, c);
    bool dup = false;
    for (const Vector& kept : out.vertices) {
      if (distance(kept, g) <= kDupTol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.vertices.push_back(std::move(g));
  }
  return out;
}

struct Deviation {
  double sq_dist = 0.0;
  Vector xi2;                    // argmax vertex of the f2 polytope
  Vector xi1;                    // nearest point to xi2 in conv(f1 polytope)
  std::size_t vertex_index = 0;  // index of xi2 in the f2 polytope
  bool inexact = false;          // any contributing projection missed its tolerance
};

// max over vertices of d2 of the squared distance to conv(d1), with the
// certifying pair. Ties keep the first vertex index.
inline Deviation deviation(const Polytope& d2, const Polytope& d1, double qp_tol = 1e-10) {
  d1.validate();
  d2.validate();
  if (d1.dimension() != d2.dimension()) throw std::invalid_argument("deviation: dimension mismatch");
  Deviation dev;
  bool first = true;
  for (std::size_t i = 0; i < d2.vertices.size(); ++i) {
    ProjectionResult pr = dist_to_polytope(d2.vertices[i], d1, qp_tol);
    dev.inexact = dev.inexact || pr.inexact;
    if (first || pr.sq_dist > dev.sq_dist) {
      first = false;
      dev.sq_dist = pr.sq_dist;
      dev.xi2 = d2.vertices[i];
      dev.xi1 = std::move(pr.nearest);
      dev.vertex_index = i;
    }
  }
  return dev;
}

// Convex overestimate anchored at x_bar:
//   fhat(y) = f1(y) - [ f2(x_bar) + <xi2, y - x_bar> - epsilon ].
// At the anchor, fhat(x_bar) = f(x_bar) + epsilon. Epsilon shifts values
// only; subgradients are subgrad(1, y) - xi2 regardless.
class FhatObjective {
 public:
  FhatObjective(const DcProblem& p, Vector x_bar, Vector xi2, double epsilon, EvalCounters& c)
      : p_(&p), x_bar_(std::move(x_bar)), xi2_(std::move(xi2)), epsilon_(epsilon) {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("FhatObjective: epsilon must be >= 0");
    check_same_size(x_bar_, xi2_, "FhatObjective");
    f2_at_anchor_ = p_->f2(x_bar_, c);
  }

  double value(const Vector& y, EvalCounters& c) const {
    double lin = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) lin += xi2_[i] * (y[i] - x_bar_[i]);
    return p_->f1(y, c) - (f2_at_anchor_ + lin - epsilon_);
  }

  Vector subgrad(const Vector& y, EvalCounters& c) const {
    Vector g = p_->subgrad1(y, c);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= xi2_[i];
    return g;
  }

  const Vector& anchor() const { return x_bar_; }
  const Vector& xi2() const { return xi2_; }
  double epsilon() const { return epsilon_; }
  double f2_at_anchor() const { return f2_at_anchor_; }

 private:
  const DcProblem* p_;
  Vector x_bar_, xi2_;
  double epsilon_;
  double f2_at_anchor_ = 0.0;
};

inline FhatObjective build_fhat(const DcProblem& p, const Vector& x_bar, const Vector& xi2,
                                double epsilon, EvalCounters& c) {
  return FhatObjective(p, x_bar, xi2, epsilon, c);
}

struct EscapeResult {
  Vector y;
  double f_value = 0.0;     // true objective f(y), not fhat(y)
  double fhat_value = 0.0;  // model value reached by the inner solver
  bool converged = false;
};

// Minimize fhat built from the deviation's certifying xi2, starting at x_bar.
inline EscapeResult escape_step(const DcProblem& p, const Vector& x_bar, const Deviation& dev,
                                double epsilon, const ConvexSolverConfig& cfg, EvalCounters& c) {
  FhatObjective fhat = build_fhat(p, x_bar, dev.xi2, epsilon, c);
  auto value = [&](const Vector& y) { return fhat.value(y, c); };
  auto grad = [&](const Vector& y) { return fhat.subgrad(y, c); };
  ConvexMin m = convex_minimize(value, grad, x_bar, cfg);
  EscapeResult out;
  out.fhat_value = m.value;
  out.f_value = p.eval(m.x, c);
  out.y = std::move(m.x);
  out.converged = m.step_converged;
  return out;
}

}  // namespace tesgo
