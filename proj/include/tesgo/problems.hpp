#pragma once

// Built-in test problems. Each is a DC pair (f1, f2) over a box, with a
// reference optimum where one is known and a standard starting point.
// Subgradient selections at kinks are deterministic: sign(0) = 0, and a
// tied max picks its first branch.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tesgo/dc_problem.hpp"
#include "tesgo/vec.hpp"

namespace tesgo {

struct ProblemSpec {
  std::string name;
  std::size_t n = 0;
  DcProblem problem;
  std::optional<double> f_star;  // reference optimum when known for this n
  Vector start;                  // standard starting point
};

namespace detail {

inline double sign0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

inline DcProblem make_p15() {
  auto f1 = [](const Vector& x) {
    return 0.25 * x[0] * x[0] * x[0] * x[0] + 0.1 * x[0] + 0.5 * x[1] * x[1];
  };
  auto g1 = [](const Vector& x) { return Vector{x[0] * x[0] * x[0] + 0.1, x[1]}; };
  auto f2 = [](const Vector& x) { return 0.5 * x[0] * x[0]; };
  auto g2 = [](const Vector& x) { return Vector{x[0], 0.0}; };
  return DcProblem("P15", BoxBounds::cube(2, -10.0, 10.0), f1, g1, f2, g2);
}

inline DcProblem make_p16(std::size_t n) {
  auto f1 = [n](const Vector& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s + 25.0 * static_cast<double>(n);
  };
  auto g1 = [](const Vector& x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
    return g;
  };
  auto f2 = [](const Vector& x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return 10.0 * s;
  };
  auto g2 = [](const Vector& x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 10.0 * sign0(x[i]);
    return g;
  };
  return DcProblem("P16", BoxBounds::cube(n, -10.0, 10.0), f1, g1, f2, g2);
}

inline DcProblem make_p17() {
  auto f1 = [](const Vector& x) {
    double a = x[0], b = x[1];
    return 1.0 / 6.0 + a * a * a * a * a * a + 4.0 * a * a + 4.0 * b * b * b * b + std::abs(a);
  };
  auto g1 = [](const Vector& x) {
    double a = x[0], b = x[1];
    return Vector{6.0 * a * a * a * a * a + 8.0 * a + sign0(a), 16.0 * b * b * b};
  };
  auto f2 = [](const Vector& x) {
    double a = x[0], b = x[1];
    return 2.1 * a * a * a * a + 4.0 * b * b;
  };
  auto g2 = [](const Vector& x) { return Vector{8.4 * x[0] * x[0] * x[0], 8.0 * x[1]}; };
  return DcProblem("P17", BoxBounds::cube(2, -5.0, 5.0), f1, g1, f2, g2);
}

inline DcProblem make_p18(std::size_t n) {
  auto f1 = [](const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
      s += (x[i] - 1.0) * (x[i] - 1.0) + x[i - 1] * x[i - 1] + x[i] * x[i];
    return s;
  };
  auto g1 = [](const Vector& x) {
    Vector g(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
      g[i] += 2.0 * (x[i] - 1.0) + 2.0 * x[i];
      g[i - 1] += 2.0 * x[i - 1];
    }
    return g;
  };
  auto f2 = [](const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += std::abs(x[i - 1] + x[i]);
    return s;
  };
  auto g2 = [](const Vector& x) {
    Vector g(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
      double s = sign0(x[i - 1] + x[i]);
      g[i - 1] += s;
      g[i] += s;
    }
    return g;
  };
  double bound = static_cast<double>(n);
  return DcProblem("P18", BoxBounds::cube(n, -bound, bound), f1, g1, f2, g2);
}

inline DcProblem make_p19() {
  auto f1 = [](const Vector& x) { return 2.0 * (x[0] * x[0] + x[1] * x[1]); };
  auto g1 = [](const Vector& x) { return Vector{4.0 * x[0], 4.0 * x[1]}; };
  auto f2 = [](const Vector& x) { return std::abs(x[0] + x[1]); };
  auto g2 = [](const Vector& x) {
    double s = sign0(x[0] + x[1]);
    return Vector{s, s};
  };
  return DcProblem("P19", BoxBounds::cube(2, -10.0, 10.0), f1, g1, f2, g2);
}

inline DcProblem make_p20(std::size_t n) {
  auto f1 = [](const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
      s += std::max(x[i + 1] - x[i] + 1.0, x[i] * x[i]);
    return 2.0 * s;
  };
  auto g1 = [](const Vector& x) {
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      double a = x[i + 1] - x[i] + 1.0;
      double b = x[i] * x[i];
      if (a >= b) {  // ties take the linear branch
        g[i] -= 2.0;
        g[i + 1] += 2.0;
      } else {
        g[i] += 4.0 * x[i];
      }
    }
    return g;
  };
  auto f2 = [](const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
      s += x[i] * x[i] + x[i + 1] - x[i] + 1.0;
    return s;
  };
  auto g2 = [](const Vector& x) {
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      g[i] += 2.0 * x[i] - 1.0;
      g[i + 1] += 1.0;
    }
    return g;
  };
  return DcProblem("P20", BoxBounds::cube(n, -10.0, 10.0), f1, g1, f2, g2);
}

inline DcProblem make_ex1() {
  auto f1 = [](const Vector& x) { return x[0] * x[0] - 5.0 * x[0] + 2.0; };
  auto g1 = [](const Vector& x) { return Vector{2.0 * x[0] - 5.0}; };
  // piecewise-linear max of three lines; ties pick the first branch
  auto f2 = [](const Vector& x) {
    double v = x[0];
    return std::max({-3.0 * v + 8.0, v + 1.0, 5.0 * v - 12.0});
  };
  auto g2 = [](const Vector& x) {
    double v = x[0];
    double vals[3] = {-3.0 * v + 8.0, v + 1.0, 5.0 * v - 12.0};
    double slopes[3] = {-3.0, 1.0, 5.0};
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (vals[i] > vals[best]) best = i;
    return Vector{slopes[best]};
  };
  return DcProblem("EX1", BoxBounds::cube(1, -100.0, 100.0), f1, g1, f2, g2);
}

inline std::optional<double> reference_optimum(const std::string& name, std::size_t n) {
  if (name == "P15") return -0.3524;
  if (name == "P16") return 0.0;
  if (name == "P17") return -0.8333;  // -5/6 to four decimals
  if (name == "P18") {
    switch (n) {
      case 2: return -0.3750;
      case 5: return -1.3750;
      case 10: return -3.0417;
      case 50: return -16.3750;
      case 100: return -33.0417;
      case 200: return -66.3750;
      default: return std::nullopt;
    }
  }
  if (name == "P19") return -0.25;
  if (name == "P20") return 0.0;
  if (name == "EX1") return -11.0;
  return std::nullopt;
}

}  // namespace detail

// Names with built-in definitions, in registry order.
inline const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {"P15", "P16", "P17", "P18", "P19", "P20", "EX1"};
  return names;
}

// Names reserved for the academic collection distributed separately.
inline const std::vector<std::string>& external_problem_names() {
  static const std::vector<std::string> names = []() {
    std::vector<std::string> v;
    for (int i = 1; i <= 14; ++i) v.push_back("P" + std::to_string(i));
    return v;
  }();
  return names;
}

inline bool is_external_problem(const std::string& name) {
  const auto& ext = external_problem_names();
  return std::find(ext.begin(), ext.end(), name) != ext.end();
}

inline Vector default_start(const std::string& name, std::size_t n) {
  if (name == "EX1") return Vector{1.0};  // standard local-minimizer start
  return Vector(n, 0.0);                  // box centers for the P problems
}

// Builds a registered problem. P15, P17, P19 are fixed at n = 2 and EX1 at
// n = 1; P16, P18, P20 accept any n >= 2 (default 2).
inline ProblemSpec make_problem(const std::string& name,
                                std::optional<std::size_t> n_opt = std::nullopt) {
  if (is_external_problem(name))
    throw std::invalid_argument("problem '" + name +
                                "' is defined externally and has no built-in formula");

  auto fixed_n = [&](std::size_t required) {
    if (n_opt && *n_opt != required)
      throw std::invalid_argument("problem '" + name + "' has fixed dimension " +
                                  std::to_string(required));
    return required;
  };
  auto parametric_n = [&]() {
    std::size_t n = n_opt.value_or(2);
    if (n < 2)
      throw std::invalid_argument("problem '" + name + "' requires dimension at least 2");
    return n;
  };

  ProblemSpec spec;
  spec.name = name;
  if (name == "P15") {
    spec.n = fixed_n(2);
    spec.problem = detail::make_p15();
  } else if (name == "P16") {
    spec.n = parametric_n();
    spec.problem = detail::make_p16(spec.n);
  } else if (name == "P17") {
    spec.n = fixed_n(2);
    spec.problem = detail::make_p17();
  } else if (name == "P18") {
    spec.n = parametric_n();
    spec.problem = detail::make_p18(spec.n);
  } else if (name == "P19") {
    spec.n = fixed_n(2);
    spec.problem = detail::make_p19();
  } else if (name == "P20") {
    spec.n = parametric_n();
    spec.problem = detail::make_p20(spec.n);
  } else if (name == "EX1") {
    spec.n = fixed_n(1);
    spec.problem = detail::make_ex1();
  } else {
    std::string valid;
    for (const auto& v : problem_names()) valid += (valid.empty() ? "" : ", ") + v;
    throw std::invalid_argument("unknown problem '" + name + "' (valid: " + valid + ")");
  }
  spec.f_star = detail::reference_optimum(name, spec.n);
  spec.start = default_start(name, spec.n);
  return spec;
}

}  // namespace tesgo
