#pragma once

#include "condgeo/space.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace condgeo {

/// Finite set of ambient points.
struct PointSet {
  std::vector<Vec> points;
};

/// Straight line base + t * direction in a euclidean space.
struct AffineLine {
  Vec base;
  Vec direction;
};

enum class CurveKind {
  hyperbola,     // x^2/a^2 - y^2/b^2 = 1, both branches, in the plane
  circle,        // centre + radius, in the plane
  great_circle,  // cos(s) e1 + sin(s) e2 on a sphere
};

std::string_view to_string(CurveKind kind);
CurveKind curve_kind_from_string(std::string_view name);

/// A regular parametrised curve made of one or more branches.
struct ParametricCurve {
  CurveKind kind = CurveKind::hyperbola;
  double a = 1.0;                 // hyperbola semi-axis / circle radius
  double b = 1.0;                 // hyperbola semi-axis
  Vec centre = Vec::Zero(2);      // circle
  Vec e1, e2;                     // great circle frame
  double s_max = 6.0;             // hyperbola parameter range [-s_max, s_max]

  int branches() const { return kind == CurveKind::hyperbola ? 2 : 1; }
  bool periodic() const { return kind != CurveKind::hyperbola; }
  double s_lo() const;
  double s_hi() const;
  Vec position(int branch, double s) const;
  Vec velocity(int branch, double s) const;
  Vec acceleration(int branch, double s) const;
};

struct SpherePoint {
  Vec unit;
};

struct DiskOrigin {};
struct ParaboloidVertex {};

using SubmanifoldKind = std::variant<PointSet, AffineLine, ParametricCurve, SpherePoint, DiskOrigin, ParaboloidVertex>;

/// The set N of which the condition metric measures distance, bound to the
/// model space whose metric defines that distance. Immutable once built.
class SubmanifoldSpec {
 public:
  SubmanifoldSpec(SpaceId space, SubmanifoldKind kind);

  static SubmanifoldSpec point_set(SpaceId space, std::vector<Vec> points);
  static SubmanifoldSpec affine_line(SpaceId space, Vec base, Vec direction);
  static SubmanifoldSpec hyperbola(double a = 1.0, double b = 1.0);
  static SubmanifoldSpec circle(Vec centre, double radius);
  static SubmanifoldSpec great_circle(int n, Vec e1, Vec e2);
  static SubmanifoldSpec sphere_point(int n, Vec unit);
  static SubmanifoldSpec disk_origin();
  static SubmanifoldSpec paraboloid_vertex();

  const SpaceId& space() const { return space_; }
  const SubmanifoldKind& kind() const { return kind_; }
  std::string kind_name() const;
  /// True when the closest-point map is locally constant (K' = 0).
  bool has_constant_closest_point() const;

 private:
  SpaceId space_;
  SubmanifoldKind kind_;
};

enum class Multiplicity { unique, ambiguous };

struct ClosestPointResult {
  Vec k;                            // ambient coordinates
  double rho = 0.0;
  Multiplicity multiplicity = Multiplicity::unique;
  std::optional<double> parameter;  // curve parameter or line coordinate
  int component = 0;                // point index or curve branch
};

/// Geodesic distance in g between two ambient points of `space`.
double ambient_distance(const SpaceId& space, const Vec& x, const Vec& y);

ClosestPointResult closest_point(const SubmanifoldSpec& N, const ChartPoint& x);
double rho(const SubmanifoldSpec& N, const ChartPoint& x);
double drho(const SubmanifoldSpec& N, const TangentVector& v);
/// Covariant second derivative along the g-geodesic through (v.base, v).
double d2rho(const SubmanifoldSpec& N, const TangentVector& v);
double dk_quadform(const SubmanifoldSpec& N, const TangentVector& v);
double drho_opnorm(const SubmanifoldSpec& N, const ChartPoint& x);
bool in_smooth_locus(const SubmanifoldSpec& N, const ChartPoint& x);
/// Throws SmoothnessError unless `r`, the closest-point result at x, lies in the smooth locus.
void require_smooth(const SubmanifoldSpec& N, const ChartPoint& x, const ClosestPointResult& r);
/// True when the minimiser continued from `prev` is no longer the global one
/// (`now`) at x, i.e. a path went across the nonsmooth set of rho.
bool minimiser_switched(const SubmanifoldSpec& N, const ClosestPointResult& prev, const ChartPoint& x,
                        const ClosestPointResult& now);

/// Chart partial derivatives d rho / d x^j.
Vec rho_gradient(const SubmanifoldSpec& N, const ChartPoint& x);

/// rho and its chart gradient from a single closest-point evaluation. With
/// `require_smooth` false, points on the nonsmooth set use one of their
/// minimisers instead of raising.
struct RhoJet {
  ClosestPointResult closest;
  Vec gradient;
};
RhoJet rho_jet(const SubmanifoldSpec& N, const ChartPoint& x, bool require_smooth = true);

/// Label of the connected component of the smooth locus containing x.
int smooth_component(const SubmanifoldSpec& N, const ChartPoint& x);

}  // namespace condgeo
