#pragma once

// Outer loop of the solver.
//
// Starting from a local search, the method certifies (approximate) global
// optimality of a critical point x_bar by sweeping a radius t from
// t_bar/K up to t_bar, where t_bar = max_i max(x_bar_i - a_i, b_i - x_bar_i)
// reaches every point of the box. At each t it samples the two component
// subdifferential polytopes around x_bar and computes their deviation; a
// deviation above delta certifies an escape direction, and the minimizer of
// the resulting overestimate restarts the local search. Escapes must improve
// the critical value by a relative margin to be accepted, which prevents
// cycling between equal-value critical points when the sampled sets are
// coarse; a rejected escape resumes the sweep at the next t.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tesgo/dc_problem.hpp"
#include "tesgo/escape.hpp"
#include "tesgo/local_search.hpp"
#include "tesgo/vec.hpp"

namespace tesgo {

struct TesgoConfig {
  double delta = 0.01;  // deviation threshold (squared distance units)
  int K = 80;           // sweep resolution: t runs over {t_bar * i / K}
  std::size_t m1 = 0;   // direction budget for the f1 polytope
  std::size_t m2 = 0;   // direction budget for the f2 polytope
  double gamma = 100.0;
  std::uint64_t seed = 0;
  double improvement_eta = 1e-6;  // relative acceptance margin for escapes
  int max_restarts = 100;
  double qp_tol = 1e-10;
  LocalSearchConfig local;
  std::string preset_name;

  void validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("TesgoConfig: delta must be positive");
    if (K < 1) throw std::invalid_argument("TesgoConfig: K must be at least 1");
    if (m1 < 1 || m2 < 1) throw std::invalid_argument("TesgoConfig: direction budgets must be at least 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("TesgoConfig: gamma must be positive");
    if (!(improvement_eta > 0.0)) throw std::invalid_argument("TesgoConfig: improvement_eta must be positive");
    if (max_restarts < 1) throw std::invalid_argument("TesgoConfig: max_restarts must be at least 1");
    local.validate();
  }
};

// Named parameter bundles. The coarse "simple" variant trades certificate
// quality for speed; the "full" family raises the sweep resolution and the
// f1 direction budget.
inline TesgoConfig preset(const std::string& name, std::size_t n) {
  if (n < 1) throw std::invalid_argument("preset: dimension must be positive");
  TesgoConfig cfg;
  cfg.preset_name = name;
  if (name == "simple") {
    cfg.K = 10;
    cfg.m1 = std::min<std::size_t>(50, 2 * n);
    cfg.m2 = std::min<std::size_t>(10, n);
  } else if (name == "full") {
    cfg.K = 80;
    cfg.m1 = std::min<std::size_t>(100, 2 * n);
    cfg.m2 = std::min<std::size_t>(30, 2 * n);
  } else if (name == "full_150") {
    cfg.K = 80;
    cfg.m1 = std::min<std::size_t>(150, 2 * n);
    cfg.m2 = std::min<std::size_t>(30, 2 * n);
  } else if (name == "full_200") {
    cfg.K = 80;
    cfg.m1 = std::min<std::size_t>(200, 2 * n);
    cfg.m2 = std::min<std::size_t>(30, 2 * n);
  } else {
    throw std::invalid_argument("preset: unknown name '" + name +
                                "' (valid: simple, full, full_150, full_200)");
  }
  return cfg;
}

// Sweep ceiling: the radius that reaches every box point from x_bar.
inline double compute_tbar(const Vector& x_bar, const BoxBounds& box) {
  if (x_bar.size() != box.dimension()) throw std::invalid_argument("compute_tbar: dimension mismatch");
  double t = 0.0;
  for (std::size_t i = 0; i < x_bar.size(); ++i)
    t = std::max(t, std::max(x_bar[i] - box.lower[i], box.upper[i] - x_bar[i]));
  return t;
}

enum class SolveStatus { approx_global, iteration_cap, local_only };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::approx_global: return "approx_global";
    case SolveStatus::iteration_cap: return "iteration_cap";
    case SolveStatus::local_only: return "local_only";
  }
  return "unknown";
}

struct TraceEntry {
  int k = 0;        // index of the critical point this entry closes
  double f = 0.0;   // its critical value
  double t = 0.0;   // radius of the accepted escape, or t_bar at the stop
};

struct RejectedEscape {
  int k = 0;
  double t = 0.0;
  double f_candidate = 0.0;
};

struct SolveReport {
  Vector x_best;
  double f_best = 0.0;
  SolveStatus status = SolveStatus::local_only;
  std::vector<TraceEntry> trace;          // one entry per critical point
  std::vector<RejectedEscape> rejected;   // escapes that failed the margin test
  EvalCounters counters;
  int n_local_searches = 0;
  long long n_deviation_checks = 0;
  int n_escapes_accepted = 0;
  double wall_seconds = 0.0;
  CriticalPoint final_critical;           // last accepted critical point
};

inline SolveReport tesgo_solve(const DcProblem& problem, const Vector& x0, const TesgoConfig& cfg) {
  cfg.validate();
  if (x0.size() != problem.dimension()) throw std::invalid_argument("tesgo_solve: x0 has wrong dimension");
  const auto t_begin = std::chrono::steady_clock::now();

  SolveReport rep;
  EvalCounters& c = rep.counters;
  const std::size_t n = problem.dimension();
  DcProblem pen = penalize(problem, cfg.gamma);
  DirectionSet dirs1 = sample_directions(n, cfg.m1, cfg.seed);
  DirectionSet dirs2 = sample_directions(n, cfg.m2, cfg.seed + 1);

  CriticalPoint current = dc_local_search(pen, x0, cfg.local, c);
  rep.n_local_searches = 1;
  rep.x_best = current.x;
  rep.f_best = current.f_value;

  int k = 0;
  int restarts = 0;
  bool done = false;

  auto note_candidate = [&rep](const Vector& x, double f) {
    if (f < rep.f_best) {
      rep.f_best = f;
      rep.x_best = x;
    }
  };

  while (!done) {
    const double tbar = compute_tbar(current.x, problem.box());
    if (!(tbar > 0.0)) {
      // degenerate box: the critical point is the only feasible point
      rep.status = SolveStatus::approx_global;
      rep.trace.push_back({k, current.f_value, tbar});
      break;
    }
    bool sweep_clean = true;
    bool restarted = false;
    for (int i = 1; i <= cfg.K && !done; ++i) {
      const double t = tbar * static_cast<double>(i) / static_cast<double>(cfg.K);
      Polytope d1 = spherical_subdiff(pen, 1, current.x, t, dirs1, c);
      Polytope d2 = spherical_subdiff(pen, 2, current.x, t, dirs2, c);
      Deviation dev = deviation(d2, d1, cfg.qp_tol);
      ++rep.n_deviation_checks;
      if (dev.sq_dist <= cfg.delta) continue;  // matched at this radius, widen

      sweep_clean = false;
      EscapeResult esc = escape_step(pen, current.x, dev, cfg.delta * t, cfg.local.inner, c);
      note_candidate(esc.y, esc.f_value);
      CriticalPoint cand = dc_local_search(pen, esc.y, cfg.local, c);
      ++rep.n_local_searches;
      note_candidate(cand.x, cand.f_value);

      const double margin = cfg.improvement_eta * (1.0 + std::abs(current.f_value));
      if (cand.f_value <= current.f_value - margin) {
        if (!(cand.f_value < current.f_value))
          throw std::logic_error("tesgo_solve: accepted escape without strict descent");
        rep.trace.push_back({k, current.f_value, t});  // close critical point k
        current = std::move(cand);
        ++k;
        ++restarts;
        ++rep.n_escapes_accepted;
        if (restarts >= cfg.max_restarts) {
          rep.status = SolveStatus::iteration_cap;
          rep.trace.push_back({k, current.f_value, compute_tbar(current.x, problem.box())});
          done = true;
        }
        restarted = true;
        break;  // fresh sweep around the new critical point
      }
      rep.rejected.push_back({k, t, cand.f_value});  // resume sweep at next t
    }
    if (!done && !restarted) {
      rep.status = sweep_clean ? SolveStatus::approx_global : SolveStatus::local_only;
      rep.trace.push_back({k, current.f_value, tbar});
      done = true;
    }
  }

  for (std::size_t i = 1; i < rep.trace.size(); ++i)
    if (!(rep.trace[i].f < rep.trace[i - 1].f))
      throw std::logic_error("tesgo_solve: trace values must strictly decrease");

  rep.final_critical = std::move(current);
  rep.wall_seconds =
      std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - t_begin)
          .count();
  return rep;
}

}  // namespace tesgo
