#pragma once

// Benchmark metrics. Relative error normalizes by |f_ref| + 1 so that
// reference values near zero stay well scaled. Profiles treat every
// (problem, n, start_id) triple as a separate instance; the best f_opt
// among solvers on an instance defines its reference value. Performance
// profiles are the standard ratio-to-best curves over time or oracle-call
// counts, restricted to runs that reached a tau-approximate optimum.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tesgo/dc_problem.hpp"

namespace tesgo {

struct RunRecord {
  std::string solver;
  std::string problem;
  std::size_t n = 0;
  long long start_id = 0;
  double f_opt = 0.0;
  EvalCounters counters;
  double wall_time = 0.0;
  std::string status;
};

inline double relative_error(double f_val, double f_ref) {
  return (f_val - f_ref) / (std::abs(f_ref) + 1.0);
}

inline bool is_tau_approx(double f_val, double f_ref, double tau) {
  if (tau < 0.0) throw std::invalid_argument("is_tau_approx: tau must be nonnegative");
  return relative_error(f_val, f_ref) <= tau;
}

struct ProfileTable {
  std::string measure;                      // "accuracy", "time", or "nfev"
  std::vector<double> taus;                 // threshold grid
  std::vector<std::string> solvers;         // first-appearance order
  std::vector<std::vector<double>> values;  // values[s][j] for solvers[s] at taus[j]
  std::vector<std::string> excluded;        // instances dropped (performance profiles)
};

namespace detail {

using InstanceKey = std::tuple<std::string, std::size_t, long long>;

inline std::string key_label(const InstanceKey& k) {
  return std::get<0>(k) + ",n=" + std::to_string(std::get<1>(k)) +
         ",start=" + std::to_string(std::get<2>(k));
}

// Arranges records into a dense solver-by-instance table, requiring exactly
// one record per (solver, instance) pair.
struct RecordGrid {
  std::vector<std::string> solvers;
  std::vector<InstanceKey> keys;
  std::vector<std::vector<const RunRecord*>> cells;  // cells[s][k]
};

inline RecordGrid arrange_records(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("profiles: no records given");
  RecordGrid grid;
  std::map<std::string, std::size_t> solver_index;
  std::map<InstanceKey, std::size_t> key_index;
  for (const auto& r : records) {
    if (!std::isfinite(r.f_opt))
      throw std::invalid_argument("profiles: non-finite f_opt for solver '" + r.solver + "'");
    if (solver_index.emplace(r.solver, grid.solvers.size()).second) grid.solvers.push_back(r.solver);
    InstanceKey k{r.problem, r.n, r.start_id};
    if (key_index.emplace(k, grid.keys.size()).second) grid.keys.push_back(k);
  }
  grid.cells.assign(grid.solvers.size(),
                    std::vector<const RunRecord*>(grid.keys.size(), nullptr));
  for (const auto& r : records) {
    std::size_t s = solver_index.at(r.solver);
    std::size_t k = key_index.at(InstanceKey{r.problem, r.n, r.start_id});
    if (grid.cells[s][k] != nullptr)
      throw std::invalid_argument("profiles: duplicate record for solver '" + r.solver +
                                  "' on instance " + key_label(grid.keys[k]));
    grid.cells[s][k] = &r;
  }
  std::string missing;
  for (std::size_t s = 0; s < grid.solvers.size(); ++s)
    for (std::size_t k = 0; k < grid.keys.size(); ++k)
      if (grid.cells[s][k] == nullptr)
        missing += "\n  " + grid.solvers[s] + " on " + key_label(grid.keys[k]);
  if (!missing.empty())
    throw std::invalid_argument("profiles: missing (solver, instance) pairs:" + missing);
  return grid;
}

inline void check_curves(const ProfileTable& table) {
  for (const auto& curve : table.values) {
    double prev = 0.0;
    for (double v : curve) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::logic_error("profile curve value outside [0,1]");
      if (v < prev) throw std::logic_error("profile curve must be non-decreasing");
      prev = v;
    }
  }
}

}  // namespace detail

// Fraction of instances on which each solver's value is within tau relative
// error of the best solver's value, as a function of tau. The default grid
// is 200 evenly spaced thresholds from 0 to the largest observed error.
inline ProfileTable accuracy_profile(const std::vector<RunRecord>& records,
                                     const std::vector<double>& tau_grid = {}) {
  detail::RecordGrid grid = detail::arrange_records(records);
  const std::size_t ns = grid.solvers.size();
  const std::size_t nk = grid.keys.size();

  std::vector<std::vector<double>> err(ns, std::vector<double>(nk, 0.0));
  double e_max = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ns; ++s) best = std::min(best, grid.cells[s][k]->f_opt);
    for (std::size_t s = 0; s < ns; ++s) {
      err[s][k] = relative_error(grid.cells[s][k]->f_opt, best);
      e_max = std::max(e_max, err[s][k]);
    }
  }

  ProfileTable table;
  table.measure = "accuracy";
  table.solvers = grid.solvers;
  if (!tau_grid.empty()) {
    table.taus = tau_grid;
  } else {
    const std::size_t count = 200;
    table.taus.resize(count);
    for (std::size_t j = 0; j < count; ++j)
      table.taus[j] = (j + 1 == count) ? e_max
                                       : e_max * static_cast<double>(j) /
                                             static_cast<double>(count - 1);
  }
  table.values.assign(ns, std::vector<double>(table.taus.size(), 0.0));
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t j = 0; j < table.taus.size(); ++j) {
      std::size_t hit = 0;
      for (std::size_t k = 0; k < nk; ++k)
        if (err[s][k] <= table.taus[j]) ++hit;
      table.values[s][j] = static_cast<double>(hit) / static_cast<double>(nk);
    }
  detail::check_curves(table);
  return table;
}

// Ratio-to-best performance profile over "time" (wall seconds) or "nfev"
// (mean of the two component evaluation counts). A run counts as solved
// when its value is a tau-approximate match of the instance best; unsolved
// runs get an infinite ratio, and instances no solver solved are excluded
// and reported in the table.
inline ProfileTable performance_profile(const std::vector<RunRecord>& records,
                                        const std::string& measure, double tau,
                                        const std::vector<double>& theta_grid = {}) {
  if (measure != "time" && measure != "nfev")
    throw std::invalid_argument("performance_profile: measure must be 'time' or 'nfev'");
  if (tau < 0.0) throw std::invalid_argument("performance_profile: tau must be nonnegative");
  detail::RecordGrid grid = detail::arrange_records(records);
  const std::size_t ns = grid.solvers.size();
  const std::size_t nk = grid.keys.size();
  const double inf = std::numeric_limits<double>::infinity();

  auto measure_of = [&measure](const RunRecord& r) {
    if (measure == "time") return r.wall_time;
    return (static_cast<double>(r.counters.n_f1) + static_cast<double>(r.counters.n_f2)) / 2.0;
  };

  ProfileTable table;
  table.measure = measure;
  table.solvers = grid.solvers;

  std::vector<std::vector<double>> ratio(ns);
  for (auto& row : ratio) row.reserve(nk);
  double max_finite_ratio = 1.0;
  std::size_t included = 0;
  for (std::size_t k = 0; k < nk; ++k) {
    double f_best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ns; ++s) f_best = std::min(f_best, grid.cells[s][k]->f_opt);
    double m_best = inf;
    for (std::size_t s = 0; s < ns; ++s)
      if (is_tau_approx(grid.cells[s][k]->f_opt, f_best, tau))
        m_best = std::min(m_best, measure_of(*grid.cells[s][k]));
    if (!(m_best < inf)) {
      table.excluded.push_back(detail::key_label(grid.keys[k]));
      continue;
    }
    ++included;
    for (std::size_t s = 0; s < ns; ++s) {
      const RunRecord& r = *grid.cells[s][k];
      double q = inf;
      if (is_tau_approx(r.f_opt, f_best, tau)) {
        q = std::max(measure_of(r) / std::max(m_best, 1e-12), 1.0);
        max_finite_ratio = std::max(max_finite_ratio, q);
      }
      ratio[s].push_back(q);
    }
  }
  if (included == 0)
    throw std::invalid_argument("performance_profile: no instance was solved by any solver");

  if (!theta_grid.empty()) {
    table.taus = theta_grid;
  } else {
    const std::size_t count = 200;  // log-spaced from 1 to the largest finite ratio
    table.taus.resize(count);
    const double log_max = std::log(std::max(max_finite_ratio, 1.0));
    for (std::size_t j = 0; j < count; ++j)
      table.taus[j] = (j + 1 == count)
                          ? std::max(max_finite_ratio, 1.0)
                          : std::exp(log_max * static_cast<double>(j) /
                                     static_cast<double>(count - 1));
  }
  table.values.assign(ns, std::vector<double>(table.taus.size(), 0.0));
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t j = 0; j < table.taus.size(); ++j) {
      std::size_t hit = 0;
      for (double q : ratio[s])
        if (q <= table.taus[j] * (1.0 + 1e-12)) ++hit;
      table.values[s][j] = static_cast<double>(hit) / static_cast<double>(included);
    }
  detail::check_curves(table);
  return table;
}

}  // namespace tesgo
