#pragma once

// Minimum-norm point in the convex hull of a finite vertex set, computed with
// Wolfe's major/minor cycle method. Given vertices v_1..v_m the solver finds
//   w = argmin ||w||^2  over  conv{v_1..v_m}
// and certifies optimality by Wolfe's criterion
//   ||w||^2 - min_i <w, v_i> <= tol * (1 + ||w||^2).
// dist_to_polytope(q, p) translates the vertices by -q and reuses the solver,
// which is exactly the deviation QP min ||xi1 - q||^2 over conv(p).
//
// The corral (current affinely independent support set) is kept small by
// dropping zero-weight members every cycle; affinely dependent corrals that
// arise from duplicate vertices are handled by a regularized solve plus the
// same dropping rule. Inputs are tiny (tens of vertices, dimension in the
// hundreds), so the affine minimizer is solved densely.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tesgo/vec.hpp"

namespace tesgo {

struct Polytope {
  std::vector<Vector> vertices;

  std::size_t dimension() const {
    if (vertices.empty()) throw std::invalid_argument("Polytope: no vertices");
    return vertices[0].size();
  }

  void validate() const {
    if (vertices.empty()) throw std::invalid_argument("Polytope: no vertices");
    for (const Vector& v : vertices)
      if (v.size() != vertices[0].size())
        throw std::invalid_argument("Polytope: vertices of mixed dimension");
  }
};

struct MinNormResult {
  Vector point;                 // the minimizer w
  std::vector<double> weights;  // convex coefficients over the input vertices
  double sq_norm = 0.0;
  double residual = 0.0;  // ||w||^2 - min_i <w, v_i>, recomputed at return
  bool inexact = false;   // certificate not met within the iteration cap
};

namespace detail {

// Dense linear solve with partial pivoting; false on (near-)singular systems.
inline bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t k = a.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) <= 1e-14 * scale) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t cc = col; cc < k; ++cc) a[r][cc] -= factor * a[col][cc];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = k; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < k; ++j) s -= a[i][j] * b[j];
    b[i] = s / a[i][i];
  }
  return true;
}

// Affine minimizer over the corral: min ||sum mu_i b_i||^2 with sum mu_i = 1,
// mu unrestricted in sign. KKT system [2G, -1; 1^T, 0] [mu; nu] = [0; 1].
// A Tikhonov-regularized retry covers affinely dependent corrals.
inline bool affine_minimizer(const std::vector<Vector>& verts, const std::vector<std::size_t>& corral,
                             std::vector<double>& mu) {
  const std::size_t k = corral.size();
  std::vector<std::vector<double>> gram(k, std::vector<double>(k));
  double diag_max = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double g = dot(verts[corral[i]], verts[corral[j]]);
      gram[i][j] = gram[j][i] = g;
    }
    diag_max = std::max(diag_max, gram[i][i]);
  }
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1, 0.0));
    std::vector<double> rhs(k + 1, 0.0);
    double reg = attempt == 0 ? 0.0 : 1e-12 * (1.0 + diag_max);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] = 2.0 * gram[i][j];
      a[i][i] += reg;
      a[i][k] = -1.0;
      a[k][i] = 1.0;
    }
    rhs[k] = 1.0;
    if (solve_dense(a, rhs)) {
      mu.assign(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(k));
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline MinNormResult min_norm_point(const Polytope& p, double tol = 1e-10) {
  p.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("min_norm_point: tol must be positive");
  const std::vector<Vector>& v = p.vertices;
  const std::size_t m = v.size();

  // start from the lowest-norm vertex, first index on ties
  std::size_t j0 = 0;
  double best_sq = squared_norm(v[0]);
  for (std::size_t j = 1; j < m; ++j) {
    double s = squared_norm(v[j]);
    if (s < best_sq) {
      best_sq = s;
      j0 = j;
    }
  }

  std::vector<std::size_t> corral{j0};
  std::vector<double> lam{1.0};
  Vector w = v[j0];

  const long cap = 100L * static_cast<long>(m);
  long iters = 0;
  constexpr double kDropTol = 1e-12;

  auto rebuild_w = [&]() {
    w.assign(w.size(), 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i) axpy(lam[i], v[corral[i]], w);
  };

  auto renormalize = [&]() {
    double s = 0.0;
    for (double l : lam) s += l;
    if (s > 0.0)
      for (double& l : lam) l /= s;
  };

  // drop members with negligible weight; keeps the corral affinely independent
  auto prune = [&](bool force_one) {
    std::size_t keep = 0, smallest = 0;
    for (std::size_t i = 1; i < lam.size(); ++i)
      if (lam[i] < lam[smallest]) smallest = i;
    bool dropped = false;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      bool drop = lam[i] <= kDropTol && lam.size() - (i - keep) > 1;
      if (drop) {
        dropped = true;
        continue;
      }
      lam[keep] = lam[i];
      corral[keep] = corral[i];
      ++keep;
    }
    lam.resize(keep);
    corral.resize(keep);
    if (force_one && !dropped && lam.size() > 1) {
      lam.erase(lam.begin() + static_cast<std::ptrdiff_t>(smallest));
      corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(smallest));
    }
    renormalize();
  };

  while (true) {
    // Wolfe certificate over all vertices
    double wsq = squared_norm(w);
    std::size_t far = 0;
    double dip = dot(w, v[0]);
    for (std::size_t j = 1; j < m; ++j) {
      double d = dot(w, v[j]);
      if (d < dip) {
        dip = d;
        far = j;
      }
    }
    if (wsq - dip <= tol * (1.0 + wsq)) break;
    if (++iters > cap) break;
    bool in_corral = false;
    for (std::size_t idx : corral) in_corral |= idx == far;
    if (in_corral) break;  // no progress possible, accept current iterate

    corral.push_back(far);
    lam.push_back(0.0);

    while (true) {  // minor cycle
      std::vector<double> mu;
      if (!detail::affine_minimizer(v, corral, mu)) {
        mu = lam;  // degenerate even after regularization; keep position
      }
      double mu_min = mu[0];
      for (double x : mu) mu_min = std::min(mu_min, x);
      if (mu_min >= -1e-13) {
        for (double& x : mu) x = std::max(x, 0.0);
        lam = std::move(mu);
        renormalize();
        prune(false);
        break;
      }
      // move toward the affine minimizer until a weight hits zero
      double theta = 1.0;
      for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] < 0.0 && lam[i] - mu[i] > 0.0) theta = std::min(theta, lam[i] / (lam[i] - mu[i]));
      theta = std::min(std::max(theta, 0.0), 1.0);
      for (std::size_t i = 0; i < lam.size(); ++i)
        lam[i] = std::max((1.0 - theta) * lam[i] + theta * mu[i], 0.0);
      prune(true);
      if (++iters > cap) break;
    }
    rebuild_w();
    if (iters > cap) break;
  }

  MinNormResult res;
  res.point = w;
  res.weights.assign(m, 0.0);
  for (std::size_t i = 0; i < corral.size(); ++i) res.weights[corral[i]] += lam[i];
  res.sq_norm = squared_norm(w);
  double dip = dot(w, v[0]);
  for (std::size_t j = 1; j < m; ++j) dip = std::min(dip, dot(w, v[j]));
  res.residual = res.sq_norm - dip;
  res.inexact = !(res.residual <= tol * (1.0 + res.sq_norm));
  return res;
}

struct ProjectionResult {
  double sq_dist = 0.0;
  Vector nearest;
  double residual = 0.0;
  bool inexact = false;
  std::vector<double> weights;
};

// Nearest point to q in conv(p): shift vertices by -q, take the min-norm point.
inline ProjectionResult dist_to_polytope(const Vector& q, const Polytope& p, double tol = 1e-10) {
  p.validate();
  if (q.size() != p.dimension()) throw std::invalid_argument("dist_to_polytope: dimension mismatch");
  Polytope shifted;
  shifted.vertices.reserve(p.vertices.size());
  for (const Vector& v : p.vertices) shifted.vertices.push_back(sub(v, q));
  MinNormResult r = min_norm_point(shifted, tol);
  ProjectionResult out;
  out.sq_dist = r.sq_norm;
  out.nearest = add(r.point, q);
  out.residual = r.residual;
  out.inexact = r.inexact;
  out.weights = std::move(r.weights);
  return out;
}

}  // namespace tesgo
