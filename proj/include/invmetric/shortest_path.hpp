#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "invmetric/core.hpp"
#include "invmetric/domains.hpp"

namespace invmetric {

struct PathOptions {
  int radial = 64;
  int angular = 256;
  int coarse_points = 8;
  int fine_points = 128;
  int max_iterations = 50;
};

struct PathResult {
  double value;         // length of the relaxed path
  double error;         // |length(fine) - length(fine / 2)| on the relaxation ladder
  double graph_coarse;  // Dijkstra on the base grid
  double graph_fine;    // Dijkstra after one halving refinement
  std::vector<cplx> path;  // relaxed path in cover coordinates zeta = log z (angle unwrapped)
};

namespace detail {

/// Length of the straight cover segment [a, b] under the length density mu(zeta) |d zeta|.
template <class Mu>
double segment_length(const Mu& mu, cplx a, cplx b) {
  const cplx d = b - a;
  const double len = std::abs(d);
  if (len == 0.0) return 0.0;
  return len * boost::math::quadrature::gauss<double, 8>::integrate(
                   [&](double s) { return mu(a + s * d); }, 0.0, 1.0);
}

template <class Mu>
double polyline_length(const Mu& mu, const std::vector<cplx>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) s += segment_length(mu, p[i], p[i + 1]);
  return s;
}

/// Dijkstra over an 8-neighbour (sigma, theta) grid on the strip |sigma| < h, periodic in theta.
/// Returns the graph length and the node path in unwrapped cover coordinates.
template <class Mu>
double grid_dijkstra(const Mu& mu, double h, cplx za, cplx zb, int nr, int nt, std::vector<cplx>& out) {
  const double ds = 2.0 * h / nr, dt = 2.0 * pi / nt;
  const int nodes = nr * nt + 2;
  const int src = nr * nt;
  auto node_pos = [&](int i, int j, double wrap) { return cplx(-h + (i + 0.5) * ds, j * dt + wrap); };

  // Adjacency is implicit; each node carries the unwrapped angle offset of its best path.
  std::vector<double> dist(nodes, std::numeric_limits<double>::infinity());
  std::vector<int> prev(nodes, -1);
  std::vector<double> offset(nodes, 0.0);  // unwrapped theta minus grid theta
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;

  auto attach = [&](cplx zeta, auto&& visit) {
    const double fi = (zeta.real() + h) / ds - 0.5;
    const double fj = zeta.imag() / dt;
    const int i0 = std::clamp(static_cast<int>(std::floor(fi)), 0, nr - 1);
    const int i1 = std::clamp(i0 + 1, 0, nr - 1);
    const int j0 = static_cast<int>(std::floor(fj));
    for (int i : {i0, i1})
      for (int j : {j0, j0 + 1}) {
        const int jw = ((j % nt) + nt) % nt;
        const double wrap = (j - jw) * dt;
        visit(i, jw, wrap);
      }
  };

  dist[src] = 0.0;
  offset[src] = 0.0;
  attach(za, [&](int i, int j, double wrap) {
    const int id = i * nt + j;
    const double w = segment_length(mu, za, node_pos(i, j, wrap));
    if (w < dist[id]) {
      dist[id] = w;
      prev[id] = src;
      offset[id] = wrap;
    }
  });
  for (int id = 0; id < nr * nt; ++id)
    if (prev[id] == src) pq.push({dist[id], id});

  // Exit edges from the grid to zb: any of its four surrounding nodes, matched modulo 2 pi.
  std::vector<std::pair<int, double>> exits;
  attach(zb, [&](int i, int j, double wrap) { exits.push_back({i * nt + j, wrap}); });

  double best = std::numeric_limits<double>::infinity();
  double best_shift = 0.0;
  int best_exit = -1;
  while (!pq.empty()) {
    const auto [d, id] = pq.top();
    pq.pop();
    if (d > dist[id] || d >= best) continue;
    const int i = id / nt, j = id % nt;
    const cplx p = node_pos(i, j, offset[id]);
    for (const auto& [eid, wrap] : exits) {
      if (eid != id) continue;
      // zb lifted to the sheet of the current node.
      const double shift = offset[id] - wrap;
      const cplx target = zb + cplx(0.0, shift);
      const double total = d + segment_length(mu, p, target);
      if (total < best) {
        best = total;
        best_exit = id;
        best_shift = shift;
      }
    }
    for (int di = -1; di <= 1; ++di) {
      const int ni = i + di;
      if (ni < 0 || ni >= nr) continue;
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        int nj = j + dj;
        double noff = offset[id];
        if (nj < 0) {
          nj += nt;
          noff -= 2.0 * pi;
        } else if (nj >= nt) {
          nj -= nt;
          noff += 2.0 * pi;
        }
        const int nid = ni * nt + nj;
        const cplx q = node_pos(ni, nj, noff);
        const double w = mu(0.5 * (p + q)) * std::abs(q - p);
        if (d + w < dist[nid]) {
          dist[nid] = d + w;
          prev[nid] = id;
          offset[nid] = noff;
          pq.push({dist[nid], nid});
        }
      }
    }
  }
  if (best_exit < 0) fail(ErrorCode::NonConvergence, "grid search did not reach the target");

  out.clear();
  out.push_back(zb + cplx(0.0, best_shift));
  for (int id = best_exit; id != src; id = prev[id]) out.push_back(node_pos(id / nt, id % nt, offset[id]));
  out.push_back(za);
  std::reverse(out.begin(), out.end());
  return best;
}

/// Resample a polyline to m equal-length pieces (m + 1 points).
inline std::vector<cplx> resample(const std::vector<cplx>& p, int m) {
  std::vector<double> acc(p.size(), 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) acc[i] = acc[i - 1] + std::abs(p[i] - p[i - 1]);
  std::vector<cplx> out(m + 1);
  std::size_t k = 0;
  for (int j = 0; j <= m; ++j) {
    const double s = acc.back() * j / m;
    while (k + 2 < p.size() && acc[k + 1] < s) ++k;
    const double seg = acc[k + 1] - acc[k];
    const double u = seg > 0 ? std::clamp((s - acc[k]) / seg, 0.0, 1.0) : 0.0;
    out[j] = p[k] + u * (p[k + 1] - p[k]);
  }
  out.front() = p.front();
  out.back() = p.back();
  return out;
}

struct SegmentModel {
  double value;
  double grad[4];
  double hess[4][4];
};

/// Length of one segment with its gradient and Hessian in (Re a, Im a, Re b, Im b), by central
/// differences at step e.
template <class Mu>
SegmentModel segment_model(const Mu& mu, cplx a, cplx b, double e) {
  auto f = [&](const double* x) { return segment_length(mu, cplx(x[0], x[1]), cplx(x[2], x[3])); };
  double x[4] = {a.real(), a.imag(), b.real(), b.imag()};
  SegmentModel m{};
  m.value = f(x);
  double fp[4], fm[4];
  for (int i = 0; i < 4; ++i) {
    const double xi = x[i];
    x[i] = xi + e;
    fp[i] = f(x);
    x[i] = xi - e;
    fm[i] = f(x);
    x[i] = xi;
    m.grad[i] = (fp[i] - fm[i]) / (2 * e);
    m.hess[i][i] = (fp[i] - 2 * m.value + fm[i]) / (e * e);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double acc = 0.0;
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          const double xi = x[i], xj = x[j];
          x[i] = xi + si * e;
          x[j] = xj + sj * e;
          acc += si * sj * f(x);
          x[i] = xi;
          x[j] = xj;
        }
      m.hess[i][j] = m.hess[j][i] = acc / (4 * e * e);
    }
  return m;
}

struct Mat2 {
  double a, b, c, d;  // [[a, b], [c, d]]
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  cplx apply(cplx v) const { return {a * v.real() + b * v.imag(), c * v.real() + d * v.imag()}; }
  Mat2 inverse() const {
    const double det = a * d - b * c;
    return {d / det, -b / det, -c / det, a / det};
  }
};

/// Newton iterations on the interior vertices of a polyline with endpoints fixed. The Hessian of the
/// total length is block tridiagonal with 2x2 blocks; steps are damped until the length decreases.
template <class Mu>
void relax(const Mu& mu, double h, std::vector<cplx>& p, int max_iterations) {
  const std::size_t n = p.size();
  if (n < 3) return;
  auto inside = [&](const std::vector<cplx>& q) {
    for (const auto& x : q)
      if (!(std::abs(x.real()) < h)) return false;
    return true;
  };
  double current = polyline_length(mu, p);
  double lambda = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const std::size_t m = n - 2;  // unknowns p[1..n-2]
    std::vector<Mat2> diag(m, Mat2{0, 0, 0, 0}), upper(m, Mat2{0, 0, 0, 0});
    std::vector<cplx> grad(m, 0.0);
    double scale = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) scale += std::abs(p[k + 1] - p[k]);
    scale /= double(n - 1);
    const double e = 1e-4 * scale;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const SegmentModel s = segment_model(mu, p[k], p[k + 1], e);
      // vertex k -> unknown k-1, vertex k+1 -> unknown k
      if (k >= 1) {
        const std::size_t u = k - 1;
        grad[u] += cplx(s.grad[0], s.grad[1]);
        diag[u] = Mat2{diag[u].a + s.hess[0][0], diag[u].b + s.hess[0][1], diag[u].c + s.hess[1][0],
                       diag[u].d + s.hess[1][1]};
      }
      if (k + 1 <= n - 2) {
        const std::size_t u = k;
        grad[u] += cplx(s.grad[2], s.grad[3]);
        diag[u] = Mat2{diag[u].a + s.hess[2][2], diag[u].b + s.hess[2][3], diag[u].c + s.hess[3][2],
                       diag[u].d + s.hess[3][3]};
      }
      if (k >= 1 && k + 1 <= n - 2) upper[k - 1] = Mat2{s.hess[0][2], s.hess[0][3], s.hess[1][2], s.hess[1][3]};
    }
    double gnorm = 0.0;
    for (const auto& g : grad) gnorm = std::max(gnorm, std::abs(g));

    bool accepted = false;
    double moved = 0.0;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      // Block Thomas solve of (H + lambda I) step = -grad.
      std::vector<Mat2> cp(m);
      std::vector<cplx> dp(m);
      for (std::size_t i = 0; i < m; ++i) {
        Mat2 a = diag[i];
        a.a += lambda;
        a.d += lambda;
        cplx rhs = -grad[i];
        if (i > 0) {
          const Mat2 lower{upper[i - 1].a, upper[i - 1].c, upper[i - 1].b, upper[i - 1].d};  // transpose
          a = a - lower * cp[i - 1];
          rhs -= lower.apply(dp[i - 1]);
        }
        const Mat2 inv = a.inverse();
        cp[i] = inv * upper[i];
        dp[i] = inv.apply(rhs);
      }
      std::vector<cplx> step(m);
      for (std::size_t i = m; i-- > 0;) step[i] = dp[i] - (i + 1 < m ? cp[i].apply(step[i + 1]) : cplx(0.0));
      std::vector<cplx> trial = p;
      double big = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        trial[i + 1] += step[i];
        big = std::max(big, std::abs(step[i]));
      }
      if (!std::isfinite(big)) {
        lambda = std::max(1e-6, 10.0 * lambda) * (gnorm / scale + 1.0);
        continue;
      }
      const double value = inside(trial) ? polyline_length(mu, trial) : std::numeric_limits<double>::infinity();
      if (value <= current) {
        p = std::move(trial);
        current = value;
        moved = big / scale;
        accepted = true;
        lambda *= 0.1;
      } else {
        lambda = std::max(1e-6 * (gnorm / scale + 1.0), 10.0 * lambda);
      }
    }
    if (!accepted || moved < 1e-9) break;
  }
}

}  // namespace detail

/// Shortest path between z and w in A_r for the conformal metric rho(z) |dz|, computed on the
/// universal cover: a graph search on a polar grid picks the homotopy class and an initial path,
/// and a coarse-to-fine polyline relaxation converges to the geodesic length.
inline PathResult annulus_shortest_path(double r, cplx z, cplx w, const std::function<double(cplx)>& rho,
                                        const PathOptions& opt = {}) {
  const Annulus dom(r);
  const double h = std::log(dom.r);
  for (cplx p : {z, w})
    if (!(std::abs(p) > 1.0 / r && std::abs(p) < r)) fail(ErrorCode::DomainViolation, "point not in annulus");
  auto mu = [&](cplx zeta) {
    const cplx p = std::exp(zeta);
    return rho(p) * std::abs(p);
  };
  cplx za = std::log(z);
  cplx zb = std::log(w);
  if (za.imag() < 0) za += cplx(0.0, 2.0 * pi);
  if (zb.imag() < 0) zb += cplx(0.0, 2.0 * pi);

  PathResult res{};
  if (z == w) {
    res.path = {za};
    return res;
  }
  std::vector<cplx> path;
  res.graph_coarse = detail::grid_dijkstra(mu, h, za, zb, opt.radial, opt.angular, path);
  res.graph_fine = detail::grid_dijkstra(mu, h, za, zb, 2 * opt.radial, 2 * opt.angular, path);

  std::vector<cplx> poly = detail::resample(path, opt.coarse_points);
  double previous = std::numeric_limits<double>::quiet_NaN();
  double current = 0.0;
  for (int m = opt.coarse_points;; m *= 2) {
    detail::relax(mu, h, poly, opt.max_iterations);
    current = detail::polyline_length(mu, poly);
    if (m >= opt.fine_points) break;
    previous = current;
    std::vector<cplx> finer;
    finer.reserve(2 * poly.size());
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      finer.push_back(poly[i]);
      finer.push_back(0.5 * (poly[i] + poly[i + 1]));
    }
    finer.push_back(poly.back());
    poly = std::move(finer);
  }
  res.value = current;
  res.error = std::isnan(previous) ? 0.0 : std::abs(current - previous);
  res.path = std::move(poly);
  return res;
}

}  // namespace invmetric
