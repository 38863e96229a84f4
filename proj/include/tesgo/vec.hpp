#pragma once

// Small dense-vector helpers used throughout the solver. Dimensions stay in
// the hundreds at most, so plain std::vector<double> plus a handful of free
// functions beats pulling in a linear-algebra dependency.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tesgo {

using Vector = std::vector<double>;

inline void check_same_size(const Vector& a, const Vector& b, const char* where) {
  if (a.size() != b.size()) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

inline double dot(const Vector& a, const Vector& b) {
  check_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double norm(const Vector& a) { return std::sqrt(squared_norm(a)); }

inline Vector sub(const Vector& a, const Vector& b) {
  check_same_size(a, b, "sub");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector add(const Vector& a, const Vector& b) {
  check_same_size(a, b, "add");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector scaled(const Vector& a, double s) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

// r += s * a
inline void axpy(double s, const Vector& a, Vector& r) {
  check_same_size(a, r, "axpy");
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * a[i];
}

inline double distance(const Vector& a, const Vector& b) { return norm(sub(a, b)); }

}  // namespace tesgo
