#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace condgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class SpaceKind { euclidean, sphere, hyperbolic_disk, paraboloid, half_plane };

std::string_view to_string(SpaceKind kind);
SpaceKind space_kind_from_string(std::string_view name);

/// A model space together with its chart. Sphere charts use the angles
/// theta_1..theta_n, the disk and the paraboloid use (r, phi) / (u, phi).
struct SpaceId {
  SpaceKind kind = SpaceKind::euclidean;
  int n = 2;

  static SpaceId euclidean(int n);
  static SpaceId sphere(int n);
  static SpaceId hyperbolic_disk(int n = 2);
  static SpaceId paraboloid();
  static SpaceId half_plane();

  int dim() const { return n; }
  int ambient_dim() const;
  /// Periodic chart coordinates are wrapped into [-pi, pi] instead of being bounded.
  bool is_periodic(int axis) const;
  std::string describe() const;

  bool operator==(const SpaceId&) const = default;
};

struct ChartPoint {
  SpaceId space;
  Vec coords;

  ChartPoint() = default;
  ChartPoint(SpaceId s, Vec c);
  ChartPoint(SpaceId s, std::initializer_list<double> c);
  int dim() const { return static_cast<int>(coords.size()); }
};

struct TangentVector {
  ChartPoint base;
  Vec comps;

  TangentVector() = default;
  TangentVector(ChartPoint b, Vec c);
  TangentVector(ChartPoint b, std::initializer_list<double> c);
};

struct MetricSample {
  Mat matrix;
};

/// Christoffel symbols Gamma^k_ij, stored once per unordered pair (i, j).
class ChristoffelSample {
 public:
  explicit ChristoffelSample(int n = 0);

  int dim() const { return n_; }
  double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
  void set(int k, int i, int j, double value) { data_[index(k, i, j)] = value; }
  void add(int k, int i, int j, double value) { data_[index(k, i, j)] += value; }
  /// Gamma^k(v, v) for every k.
  Vec contract(const Vec& v) const;

 private:
  std::size_t index(int k, int i, int j) const;
  int n_;
  std::vector<double> data_;
};

// Chart domain.
bool in_domain(const ChartPoint& p);
void check_domain(const ChartPoint& p);
/// Wraps periodic coordinates into [-pi, pi].
ChartPoint canonical(ChartPoint p);
/// Chart-coordinate difference b - a with periodic axes taken the short way round.
Vec chart_difference(const ChartPoint& a, const ChartPoint& b);

double g_inner(const MetricSample& g, const Vec& u, const Vec& v);
double g_norm(const ChartPoint& p, const Vec& v);

MetricSample metric_tensor(const ChartPoint& p);
/// Christoffel symbols of the original metric g.
ChristoffelSample base_christoffel(const ChartPoint& p);
/// Standard formula from central differences of `metric_tensor`.
ChristoffelSample christoffel_from_metric_fd(const ChartPoint& p);

/// Position and velocity at parameter t of the g-geodesic through (v.base, v).
TangentVector base_geodesic(const TangentVector& v, double t);

Vec embed(const ChartPoint& p);
/// d embed / d coords, shape ambient_dim x dim.
Mat embed_jacobian(const ChartPoint& p);
Vec push_forward(const TangentVector& v);
ChartPoint unembed(const SpaceId& space, const Vec& ambient);
/// Chart components of an ambient vector tangent at `base`.
TangentVector pull_back(const ChartPoint& base, const Vec& ambient_velocity);

/// Planar picture of a chart point used by plots: chart coordinates for the
/// plane, (x, y) for the disk and the paraboloid seen from above, and the
/// azimuthal equidistant map about the chart pole for spheres.
std::array<double, 2> plot_coordinates(const ChartPoint& p);

}  // namespace condgeo
