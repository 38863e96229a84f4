#pragma once

// Difference-of-convex problems: f(x) = f1(x) - f2(x) with f1, f2 convex on
// a box [a, b]. A problem is a bundle of pure value/subgradient oracles; all
// evaluation counting goes through an EvalCounters owned by the caller, so a
// DcProblem can be shared read-only across concurrent solves.
//
// penalize() folds the box into f1 via the exact penalty
//   f1(x) + gamma * max{0, a_i - x_i, x_i - b_i over all i}
// which keeps f1 convex and leaves f2 untouched.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tesgo/vec.hpp"

namespace tesgo {

struct BoxBounds {
  Vector lower;
  Vector upper;

  BoxBounds() = default;
  BoxBounds(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size() || lower.empty())
      throw std::invalid_argument("BoxBounds: bounds must be nonempty and of equal length");
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (!(lower[i] <= upper[i]))
        throw std::invalid_argument("BoxBounds: lower[i] must not exceed upper[i]");
  }

  static BoxBounds cube(std::size_t n, double lo, double hi) {
    return BoxBounds(Vector(n, lo), Vector(n, hi));
  }

  std::size_t dimension() const { return lower.size(); }

  Vector center() const {
    Vector c(lower.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
    return c;
  }

  bool contains(const Vector& x, double slack = 0.0) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < lower[i] - slack || x[i] > upper[i] + slack) return false;
    return true;
  }
};

struct EvalCounters {
  long long n_f1 = 0;
  long long n_f2 = 0;
  long long n_g1 = 0;
  long long n_g2 = 0;
};

class DcProblem {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using SubgradFn = std::function<Vector(const Vector&)>;

  DcProblem() = default;
  DcProblem(std::string name, BoxBounds box, ValueFn f1, SubgradFn g1, ValueFn f2, SubgradFn g2)
      : name_(std::move(name)),
        box_(std::move(box)),
        f1_(std::move(f1)),
        g1_(std::move(g1)),
        f2_(std::move(f2)),
        g2_(std::move(g2)) {}

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return box_.dimension(); }
  const BoxBounds& box() const { return box_; }

  double f1(const Vector& x, EvalCounters& c) const {
    check_dim(x);
    ++c.n_f1;
    return f1_(x);
  }

  double f2(const Vector& x, EvalCounters& c) const {
    check_dim(x);
    ++c.n_f2;
    return f2_(x);
  }

  Vector subgrad1(const Vector& x, EvalCounters& c) const {
    check_dim(x);
    ++c.n_g1;
    return g1_(x);
  }

  Vector subgrad2(const Vector& x, EvalCounters& c) const {
    check_dim(x);
    ++c.n_g2;
    return g2_(x);
  }

  double component_value(int component, const Vector& x, EvalCounters& c) const {
    if (component == 1) return f1(x, c);
    if (component == 2) return f2(x, c);
    throw std::invalid_argument("component must be 1 or 2");
  }

  Vector component_subgrad(int component, const Vector& x, EvalCounters& c) const {
    if (component == 1) return subgrad1(x, c);
    if (component == 2) return subgrad2(x, c);
    throw std::invalid_argument("component must be 1 or 2");
  }

  // f(x) = f1(x) - f2(x), one call to each oracle
  double eval(const Vector& x, EvalCounters& c) const { return f1(x, c) - f2(x, c); }

 private:
  void check_dim(const Vector& x) const {
    if (x.size() != box_.dimension())
      throw std::invalid_argument("DcProblem '" + name_ + "': point has wrong dimension");
  }

  std::string name_;
  BoxBounds box_;
  ValueFn f1_;
  SubgradFn g1_;
  ValueFn f2_;
  SubgradFn g2_;
};

// The single most violated bound: value of max{0, a_i - x_i, x_i - b_i}
// plus which coordinate and side attained it (sign -1 for the lower side).
struct BoxViolation {
  double amount = 0.0;  // 0 when x is inside the box
  std::size_t index = 0;
  int side = 0;  // -1 below lower, +1 above upper, 0 none
};

inline BoxViolation worst_box_violation(const BoxBounds& box, const Vector& x) {
  BoxViolation w;
  for (std::size_t i = 0; i < x.size(); ++i) {
    // lower side checked first; strict inequality keeps the lowest index on ties
    double below = box.lower[i] - x[i];
    if (below > w.amount) w = {below, i, -1};
    double above = x[i] - box.upper[i];
    if (above > w.amount) w = {above, i, +1};
  }
  return w;
}

// Exact penalty: new f1 = f1 + gamma * max{0, a_i - x_i, x_i - b_i over i}.
// The penalty subgradient is gamma * (+-e_j) for the most violated coordinate
// (lowest index on ties) and zero when no bound is strictly violated, so the
// penalized f1 stays convex and coincides with f1 on the box.
inline DcProblem penalize(const DcProblem& p, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("penalize: gamma must be positive");
  BoxBounds box = p.box();
  DcProblem::ValueFn f1 = [p, box, gamma](const Vector& x) {
    EvalCounters scratch;  // inner call, counted by the wrapping oracle
    return p.f1(x, scratch) + gamma * worst_box_violation(box, x).amount;
  };
  DcProblem::SubgradFn g1 = [p, box, gamma](const Vector& x) {
    EvalCounters scratch;
    Vector g = p.subgrad1(x, scratch);
    BoxViolation w = worst_box_violation(box, x);
    if (w.side != 0) g[w.index] += gamma * static_cast<double>(w.side);
    return g;
  };
  DcProblem::ValueFn f2 = [p](const Vector& x) {
    EvalCounters scratch;
    return p.f2(x, scratch);
  };
  DcProblem::SubgradFn g2 = [p](const Vector& x) {
    EvalCounters scratch;
    return p.subgrad2(x, scratch);
  };
  return DcProblem(p.name(), box, std::move(f1), std::move(g1), std::move(f2), std::move(g2));
}

}  // namespace tesgo
