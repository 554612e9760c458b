#include "condgeo/oracles.hpp"

#include "condgeo/errors.hpp"
#include "condgeo/tolerances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace condgeo {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  long nodes = 0;
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole, double tol,
                       int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = st.f(lm), frm = st.f(rm);
  st.nodes += 2;
  if (st.nodes > tol::quadrature_max_nodes)
    throw ConvergenceError("adaptive quadrature: tolerance not met within 10^6 nodes");
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadratureResult adaptive_quadrature(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "quadrature tolerance must be positive");
  if (a == b) return {0.0, 0};
  SimpsonState st{f};
  // Start from a few panels so that symmetric integrands cannot fool the first estimate.
  constexpr int panels = 4;
  double total = 0.0;
  const double width = (b - a) / panels;
  double fa = f(a);
  st.nodes = 1;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i == panels - 1) ? b : lo + width;
    const double m = 0.5 * (lo + hi);
    const double fm = f(m), fb = f(hi);
    st.nodes += 2;
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_recurse(st, lo, hi, fa, fm, fb, whole, tol / panels, 60);
    fa = fb;
  }
  return {total, st.nodes};
}

FdResult fd_derivative(int order, const ScalarField& field, const TangentVector& v, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "finite-difference step must be positive");
  auto at = [&](double t) { return field(base_geodesic(v, t).base); };
  if (order == 1) {
    const double coarse = (at(h) - at(-h)) / (2.0 * h);
    const double fine = (at(0.5 * h) - at(-0.5 * h)) / h;
    return {coarse, std::abs(fine - coarse)};
  }
  if (order == 2) {
    const double f0 = at(0.0);
    const double coarse = (at(h) - 2.0 * f0 + at(-h)) / (h * h);
    const double fine = (at(0.5 * h) - 2.0 * f0 + at(-0.5 * h)) / (0.25 * h * h);
    return {(4.0 * fine - coarse) / 3.0, std::abs(fine - coarse) / 3.0};
  }
  throw Error(ErrorCode::invalid_argument, "finite-difference order must be 1 or 2");
}

double grid_condition_distance(const GridSpec& grid, const SubmanifoldSpec& N, const ChartPoint& a,
                               const ChartPoint& b) {
  const SpaceId& space = N.space();
  if (space.dim() != 2) throw Error(ErrorCode::invalid_argument, "grid oracle needs a two-dimensional chart");
  if (grid.resolution < tol::grid_min_resolution)
    throw Error(ErrorCode::invalid_argument, "grid resolution must be at least 16");
  if (grid.lo.size() != 2 || grid.hi.size() != 2 || !(grid.lo.array() < grid.hi.array()).all())
    throw Error(ErrorCode::invalid_argument, "grid box must satisfy lo < hi on both axes");
  for (const auto* p : {&a, &b}) {
    if (!(p->space == space)) throw Error(ErrorCode::invalid_argument, "endpoint belongs to another space");
    if ((p->coords.array() < grid.lo.array()).any() || (p->coords.array() > grid.hi.array()).any())
      throw Error(ErrorCode::invalid_argument, "endpoint outside the grid region");
  }
  if ((a.coords - b.coords).norm() == 0.0) return 0.0;

  const int res = grid.resolution;
  const Vec step = (grid.hi - grid.lo) / (res - 1);
  auto node_point = [&](int i, int j) {
    Vec c(2);
    c << grid.lo[0] + i * step[0], grid.lo[1] + j * step[1];
    return c;
  };
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j)
      if (!in_domain(ChartPoint(space, node_point(i, j))))
        throw Error(ErrorCode::invalid_argument, "grid region leaves the chart domain");

  auto weight = [&](const Vec& p, const Vec& q) {
    const ChartPoint mid(space, 0.5 * (p + q));
    double r;
    try {
      r = rho(N, mid);
    } catch (const DegeneratePointError&) {
      return std::numeric_limits<double>::infinity();
    }
    const Vec d = q - p;
    return std::sqrt(d.dot(metric_tensor(mid).matrix * d)) / r;
  };

  const int nodes = res * res;
  const int src = nodes, dst = nodes + 1;
  std::vector<Vec> pos(static_cast<std::size_t>(nodes + 2));
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) pos[static_cast<std::size_t>(i * res + j)] = node_point(i, j);
  pos[static_cast<std::size_t>(src)] = a.coords;
  pos[static_cast<std::size_t>(dst)] = b.coords;
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      const double r = rho(N, ChartPoint(space, pos[static_cast<std::size_t>(i * res + j)]));
      if (r < tol::ivp_rho_floor) throw DegeneratePointError("grid node lies on the submanifold");
    }

  // Block of 4 x 4 lattice nodes around an off-lattice endpoint.
  auto block = [&](const Vec& p) {
    std::vector<int> out;
    const int ci = static_cast<int>(std::floor((p[0] - grid.lo[0]) / step[0]));
    const int cj = static_cast<int>(std::floor((p[1] - grid.lo[1]) / step[1]));
    for (int i = ci - 1; i <= ci + 2; ++i)
      for (int j = cj - 1; j <= cj + 2; ++j)
        if (i >= 0 && i < res && j >= 0 && j < res) out.push_back(i * res + j);
    return out;
  };
  const auto src_block = block(a.coords);
  const auto dst_block = block(b.coords);

  // Every primitive lattice step with offsets up to the stencil radius. The
  // radius grows with the resolution so that the angular bias of the lattice
  // shrinks under refinement.
  const int radius = std::max(2, static_cast<int>(std::lround(std::log2(res))) - 4);
  std::vector<std::array<int, 2>> moves;
  for (int di = -radius; di <= radius; ++di)
    for (int dj = -radius; dj <= radius; ++dj)
      if ((di != 0 || dj != 0) && std::gcd(di, dj) == 1) moves.push_back({di, dj});

  std::vector<double> dist(static_cast<std::size_t>(nodes + 2), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<std::size_t>(src)] = 0.0;
  queue.emplace(0.0, src);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    if (u == dst) return d;
    auto relax = [&](int w) {
      const double nd = d + weight(pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(w)]);
      if (nd < dist[static_cast<std::size_t>(w)]) {
        dist[static_cast<std::size_t>(w)] = nd;
        queue.emplace(nd, w);
      }
    };
    if (u == src) {
      for (int w : src_block) relax(w);
      continue;
    }
    const int i = u / res, j = u % res;
    for (const auto& m : moves) {
      const int ni = i + m[0], nj = j + m[1];
      if (ni >= 0 && ni < res && nj >= 0 && nj < res) relax(ni * res + nj);
    }
    for (int w : dst_block)
      if (w == u) relax(dst);
  }
  throw ConvergenceError("grid oracle: target unreachable");
}

}  // namespace condgeo
