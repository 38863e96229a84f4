#pragma once

// Local phase of the solver.
//
// convex_minimize: subgradient descent with normalized steps, geometric step
// decay on non-improving moves, and best-iterate tracking. Robust on the
// piecewise-smooth convex objectives that arise here (quadratics plus |.| and
// max terms plus the box penalty) without bundle machinery.
//
// dc_local_search: classical DCA. At x_j pick xi2 in the subdifferential of
// f2, minimize the convex model y -> f1(y) - <xi2, y>, repeat. Each step can
// only lower f, so the iteration settles at a critical point where the chosen
// subgradients of f1 and f2 (nearly) agree.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>

#include "tesgo/dc_problem.hpp"
#include "tesgo/vec.hpp"

namespace tesgo {

struct ConvexSolverConfig {
  double step0 = 1.0;
  double decay = 0.5;
  int max_iters = 2000;
  double tol = 1e-8;  // terminate once the step length decays below this

  void validate() const {
    if (!(step0 > 0.0) || !(decay > 0.0 && decay < 1.0) || max_iters < 1 || !(tol > 0.0))
      throw std::invalid_argument("ConvexSolverConfig: invalid parameters");
  }
};

struct LocalSearchConfig {
  double tol_step = 1e-6;  // outer stop on ||x_{j+1} - x_j||
  double tol_crit = 1e-5;  // outer stop on the criticality residual estimate
  int max_outer = 200;
  ConvexSolverConfig inner;

  void validate() const {
    if (!(tol_step > 0.0) || !(tol_crit > 0.0) || max_outer < 1)
      throw std::invalid_argument("LocalSearchConfig: invalid parameters");
    inner.validate();
  }
};

struct ConvexMin {
  Vector x;
  double value = 0.0;
  double subgrad_norm = 0.0;  // ||subgrad|| measured at the returned point
  int iters = 0;
  bool step_converged = false;  // true when the step size decayed below tol
};

// Minimizes a convex objective given (value, subgradient) oracles. The
// returned value never exceeds objective(x0). Non-convex inputs void the
// guarantee silently; callers own convexity.
inline ConvexMin convex_minimize(const std::function<double(const Vector&)>& value,
                                 const std::function<Vector(const Vector&)>& subgrad, Vector x0,
                                 const ConvexSolverConfig& cfg) {
  cfg.validate();
  ConvexMin out;
  Vector x = std::move(x0);
  double fx = value(x);
  out.x = x;
  out.value = fx;
  bool at_best = true;        // does x currently sit on the best iterate?
  bool best_gnorm_known = false;
  double step = cfg.step0;

  for (int it = 0; it < cfg.max_iters; ++it) {
    ++out.iters;
    Vector g = subgrad(x);
    double gn = norm(g);
    if (at_best) {
      out.subgrad_norm = gn;
      best_gnorm_known = true;
    }
    if (gn <= 1e-14 * (1.0 + std::abs(fx))) {
      out.step_converged = true;  // subdifferential contains (numerically) zero
      break;
    }
    // move a fixed length along the normalized subgradient; non-improving
    // moves shrink the length, improving ones keep it
    axpy(-step / gn, g, x);
    fx = value(x);
    if (fx < out.value) {
      out.x = x;
      out.value = fx;
      at_best = true;
      best_gnorm_known = false;
    } else {
      step *= cfg.decay;
      at_best = false;
    }
    if (step < cfg.tol) {
      out.step_converged = true;
      break;
    }
  }
  if (!best_gnorm_known) out.subgrad_norm = norm(subgrad(out.x));
  return out;
}

struct CriticalPoint {
  Vector x;
  double f_value = 0.0;
  double criticality_residual = 0.0;  // ||xi1 - xi2|| for the certifying pair
  std::vector<double> f_trace;        // f at x0 and after each outer step
  int outer_iters = 0;
  bool converged = false;  // false only when max_outer ran out
};

// DCA outer loop. The problem must already be in unconstrained (penalized)
// form. Descent is monotone by construction: a convex-model step that fails
// to improve f terminates the loop with the current point.
inline CriticalPoint dc_local_search(const DcProblem& p, Vector x0, const LocalSearchConfig& cfg,
                                     EvalCounters& c) {
  cfg.validate();
  Vector x = std::move(x0);
  double fx = p.eval(x, c);
  double crit = 0.0;
  bool converged = false;
  int outer = 0;
  std::vector<double> f_trace{fx};

  while (outer < cfg.max_outer) {
    ++outer;
    Vector xi2 = p.subgrad2(x, c);
    auto model_value = [&](const Vector& y) { return p.f1(y, c) - dot(xi2, y); };
    auto model_subgrad = [&](const Vector& y) {
      Vector g = p.subgrad1(y, c);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= xi2[i];
      return g;
    };
    ConvexMin step = convex_minimize(model_value, model_subgrad, x, cfg.inner);
    double f_next = step.value + dot(xi2, step.x) - p.f2(step.x, c);
    if (f_next > fx) {
      converged = true;  // numerical floor reached; keep the current point
      crit = norm(sub(p.subgrad1(x, c), xi2));
      break;
    }
    double moved = distance(step.x, x);
    x = std::move(step.x);
    fx = f_next;
    f_trace.push_back(fx);
    // criticality is judged at the new point, with both subgradients fresh
    crit = norm(sub(p.subgrad1(x, c), p.subgrad2(x, c)));
    if (moved <= cfg.tol_step || crit <= cfg.tol_crit) {
      converged = true;
      break;
    }
  }

  CriticalPoint cp;
  cp.f_value = p.eval(x, c);  // authoritative value at the returned point
  cp.x = std::move(x);
  cp.criticality_residual = crit;
  cp.f_trace = std::move(f_trace);
  cp.outer_iters = outer;
  cp.converged = converged;
  return cp;
}

}  // namespace tesgo
