#include "condgeo/scenario.hpp"

#include "condgeo/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace condgeo {

using json = nlohmann::ordered_json;

namespace {

constexpr double pi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SegmentSpec ivp(std::string label, Vec x0, Vec v0, double s_max, bool through = false) {
  SegmentSpec s;
  s.kind = SegmentKind::ivp;
  s.label = std::move(label);
  s.x0 = std::move(x0);
  s.v0 = std::move(v0);
  s.s_max = s_max;
  s.through_nonsmooth = through;
  return s;
}

SegmentSpec two_point(SegmentKind kind, std::string label, Vec a, Vec b) {
  SegmentSpec s;
  s.kind = kind;
  s.label = std::move(label);
  s.a = std::move(a);
  s.b = std::move(b);
  return s;
}

SegmentSpec random_ivps(std::string label, int count, double s_max) {
  SegmentSpec s;
  s.kind = SegmentKind::random_ivp;
  s.label = std::move(label);
  s.count = count;
  s.s_max = s_max;
  return s;
}

// ---- JSON -----------------------------------------------------------------

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

Vec vec_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) bad(what + " must be a nonempty array of numbers");
  Vec out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad(what + " must contain only numbers");
    out[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return out;
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

const json& field(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains(key)) bad(ctx + ": missing field '" + key + "'");
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& ctx) {
  const auto& v = field(obj, key, ctx);
  if (!v.is_number()) bad(ctx + ": field '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& ctx) {
  if (!obj.is_object()) bad(ctx + " must be an object");
  for (const auto& [k, _] : obj.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* allowed) { return k == allowed; }))
      bad(ctx + ": unknown field '" + k + "'");
}

SpaceId space_from_json(const json& j) {
  only_keys(j, {"kind", "n"}, "space");
  const auto& kind = field(j, "kind", "space");
  if (!kind.is_string()) bad("space: 'kind' must be a string");
  SpaceKind k;
  try {
    k = space_kind_from_string(kind.get<std::string>());
  } catch (const Error& e) {
    bad(std::string("space: ") + e.what());
  }
  const int n = j.contains("n") ? static_cast<int>(number(j, "n", "space")) : 2;
  try {
    switch (k) {
      case SpaceKind::euclidean: return SpaceId::euclidean(n);
      case SpaceKind::sphere: return SpaceId::sphere(n);
      case SpaceKind::hyperbolic_disk: return SpaceId::hyperbolic_disk(n);
      case SpaceKind::paraboloid: return SpaceId::paraboloid();
      case SpaceKind::half_plane: return SpaceId::half_plane();
    }
  } catch (const Error& e) {
    bad(std::string("space: ") + e.what());
  }
  bad("space: unsupported kind");
}

json space_to_json(const SpaceId& s) { return json{{"kind", std::string(to_string(s.kind))}, {"n", s.n}}; }

SubmanifoldSpec submanifold_from_json(const SpaceId& space, const json& j) {
  const std::string ctx = "submanifold";
  const auto& kind_field = field(j, "kind", ctx);
  if (!kind_field.is_string()) bad(ctx + ": 'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();
  try {
    if (kind == "point_set") {
      only_keys(j, {"kind", "points"}, ctx);
      const auto& pts = field(j, "points", ctx);
      if (!pts.is_array()) bad(ctx + ": 'points' must be an array");
      std::vector<Vec> points;
      for (const auto& p : pts) points.push_back(vec_from_json(p, ctx + " point"));
      return SubmanifoldSpec::point_set(space, std::move(points));
    }
    if (kind == "affine_line") {
      only_keys(j, {"kind", "base", "direction"}, ctx);
      return SubmanifoldSpec::affine_line(space, vec_from_json(field(j, "base", ctx), "base"),
                                         vec_from_json(field(j, "direction", ctx), "direction"));
    }
    if (kind == "hyperbola") {
      only_keys(j, {"kind", "a", "b", "s_max"}, ctx);
      ParametricCurve c;
      c.kind = CurveKind::hyperbola;
      c.a = j.contains("a") ? number(j, "a", ctx) : 1.0;
      c.b = j.contains("b") ? number(j, "b", ctx) : 1.0;
      if (j.contains("s_max")) c.s_max = number(j, "s_max", ctx);
      if (!(space == SpaceId::euclidean(2))) bad(ctx + ": hyperbola needs the euclidean plane");
      return SubmanifoldSpec(space, c);
    }
    if (kind == "circle") {
      only_keys(j, {"kind", "centre", "radius"}, ctx);
      if (!(space == SpaceId::euclidean(2))) bad(ctx + ": circle needs the euclidean plane");
      return SubmanifoldSpec::circle(vec_from_json(field(j, "centre", ctx), "centre"), number(j, "radius", ctx));
    }
    if (kind == "great_circle") {
      only_keys(j, {"kind", "e1", "e2"}, ctx);
      if (space.kind != SpaceKind::sphere) bad(ctx + ": great_circle needs a sphere");
      return SubmanifoldSpec::great_circle(space.n, vec_from_json(field(j, "e1", ctx), "e1"),
                                           vec_from_json(field(j, "e2", ctx), "e2"));
    }
    if (kind == "sphere_point") {
      only_keys(j, {"kind", "point"}, ctx);
      if (space.kind != SpaceKind::sphere) bad(ctx + ": sphere_point needs a sphere");
      return SubmanifoldSpec::sphere_point(space.n, vec_from_json(field(j, "point", ctx), "point"));
    }
    if (kind == "disk_origin") {
      only_keys(j, {"kind"}, ctx);
      return SubmanifoldSpec(space, DiskOrigin{});
    }
    if (kind == "paraboloid_vertex") {
      only_keys(j, {"kind"}, ctx);
      return SubmanifoldSpec(space, ParaboloidVertex{});
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    bad(ctx + ": " + e.what());
  }
  bad(ctx + ": unknown kind '" + kind + "'");
}

json submanifold_to_json(const SubmanifoldSpec& N) {
  return std::visit(overloaded{
                        [](const PointSet& ps) {
                          json pts = json::array();
                          for (const auto& p : ps.points) pts.push_back(vec_to_json(p));
                          return json{{"kind", "point_set"}, {"points", pts}};
                        },
                        [](const AffineLine& l) {
                          return json{{"kind", "affine_line"},
                                      {"base", vec_to_json(l.base)},
                                      {"direction", vec_to_json(l.direction)}};
                        },
                        [](const ParametricCurve& c) {
                          switch (c.kind) {
                            case CurveKind::hyperbola:
                              return json{{"kind", "hyperbola"}, {"a", c.a}, {"b", c.b}, {"s_max", c.s_max}};
                            case CurveKind::circle:
                              return json{{"kind", "circle"}, {"centre", vec_to_json(c.centre)}, {"radius", c.a}};
                            case CurveKind::great_circle:
                              return json{{"kind", "great_circle"}, {"e1", vec_to_json(c.e1)}, {"e2", vec_to_json(c.e2)}};
                          }
                          return json{};
                        },
                        [](const SpherePoint& p) { return json{{"kind", "sphere_point"}, {"point", vec_to_json(p.unit)}}; },
                        [](const DiskOrigin&) { return json{{"kind", "disk_origin"}}; },
                        [](const ParaboloidVertex&) { return json{{"kind", "paraboloid_vertex"}}; },
                    },
                    N.kind());
}

void check_chart_point(const SpaceId& space, const Vec& c, const std::string& what) {
  try {
    check_domain(ChartPoint(space, c));
  } catch (const Error& e) {
    bad(what + ": " + e.what());
  }
}

SegmentSpec segment_from_json(const SpaceId& space, const json& j, std::size_t index) {
  const std::string ctx = "segment " + std::to_string(index);
  if (!j.is_object()) bad(ctx + " must be an object");
  SegmentSpec s;
  int kinds = 0;
  for (const char* k : {"ivp", "bvp", "line", "random_ivp"}) kinds += j.contains(k) ? 1 : 0;
  if (kinds != 1) bad(ctx + ": exactly one of 'ivp', 'bvp', 'line', 'random_ivp' is required");
  only_keys(j, {"label", "ivp", "bvp", "line", "random_ivp"}, ctx);
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad(ctx + ": 'label' must be a string");
    s.label = j["label"].get<std::string>();
  }
  if (j.contains("ivp")) {
    const auto& b = j["ivp"];
    only_keys(b, {"x0", "v0", "s_max", "through_nonsmooth"}, ctx);
    s.kind = SegmentKind::ivp;
    s.x0 = vec_from_json(field(b, "x0", ctx), ctx + " x0");
    s.v0 = vec_from_json(field(b, "v0", ctx), ctx + " v0");
    s.s_max = number(b, "s_max", ctx);
    if (b.contains("through_nonsmooth")) {
      if (!b["through_nonsmooth"].is_boolean()) bad(ctx + ": 'through_nonsmooth' must be a boolean");
      s.through_nonsmooth = b["through_nonsmooth"].get<bool>();
    }
    if (s.x0.size() != space.n || s.v0.size() != space.n) bad(ctx + ": x0 and v0 need " + std::to_string(space.n) + " components");
    if (!(s.s_max > 0.0)) bad(ctx + ": s_max must be positive");
    check_chart_point(space, s.x0, ctx + " x0");
  } else if (j.contains("random_ivp")) {
    const auto& b = j["random_ivp"];
    only_keys(b, {"count", "s_max"}, ctx);
    s.kind = SegmentKind::random_ivp;
    s.count = static_cast<int>(number(b, "count", ctx));
    s.s_max = number(b, "s_max", ctx);
    if (s.count < 1) bad(ctx + ": count must be at least 1");
    if (!(s.s_max > 0.0)) bad(ctx + ": s_max must be positive");
  } else {
    const bool is_bvp = j.contains("bvp");
    const auto& b = is_bvp ? j["bvp"] : j["line"];
    only_keys(b, {"a", "b"}, ctx);
    s.kind = is_bvp ? SegmentKind::bvp : SegmentKind::line;
    s.a = vec_from_json(field(b, "a", ctx), ctx + " a");
    s.b = vec_from_json(field(b, "b", ctx), ctx + " b");
    if (s.a.size() != space.n || s.b.size() != space.n) bad(ctx + ": a and b need " + std::to_string(space.n) + " components");
    check_chart_point(space, s.a, ctx + " a");
    check_chart_point(space, s.b, ctx + " b");
  }
  if (s.label.empty()) s.label = std::string(to_string(s.kind)) + "_" + std::to_string(index);
  return s;
}

json segment_to_json(const SegmentSpec& s) {
  json j{{"label", s.label}};
  switch (s.kind) {
    case SegmentKind::ivp:
      j["ivp"] = json{{"x0", vec_to_json(s.x0)}, {"v0", vec_to_json(s.v0)}, {"s_max", s.s_max},
                      {"through_nonsmooth", s.through_nonsmooth}};
      break;
    case SegmentKind::bvp: j["bvp"] = json{{"a", vec_to_json(s.a)}, {"b", vec_to_json(s.b)}}; break;
    case SegmentKind::line: j["line"] = json{{"a", vec_to_json(s.a)}, {"b", vec_to_json(s.b)}}; break;
    case SegmentKind::random_ivp: j["random_ivp"] = json{{"count", s.count}, {"s_max", s.s_max}}; break;
  }
  return j;
}

// ---- running ----------------------------------------------------------------

std::vector<SegmentSpec> expand_segments(const ScenarioConfig& cfg) {
  std::vector<SegmentSpec> out;
  Rng rng(cfg.seed);
  for (const auto& s : cfg.segments) {
    if (s.kind != SegmentKind::random_ivp) {
      out.push_back(s);
      continue;
    }
    for (int k = 0; k < s.count; ++k) {
      for (int tries = 0;; ++tries) {
        if (tries > 10000) throw ConfigError("could not draw a smooth-locus start for " + s.label);
        const ChartPoint x = sample_chart_point(cfg.space(), rng);
        const TangentVector v = sample_unit_direction(x, rng);
        if (!in_smooth_locus(cfg.submanifold, x)) continue;
        out.push_back(ivp(s.label + "_" + std::to_string(k), x.coords, v.comps, s.s_max));
        break;
      }
    }
  }
  return out;
}

SegmentResult solve_segment(const ScenarioConfig& cfg, const SegmentSpec& s) {
  SegmentResult r;
  r.label = s.label;
  r.kind = s.kind;
  const SpaceId& space = cfg.space();
  try {
    switch (s.kind) {
      case SegmentKind::ivp: {
        IvpOptions opts;
        opts.tol = cfg.tol;
        opts.samples = cfg.samples;
        opts.stop_on_nonsmooth = !s.through_nonsmooth;
        r.path = integrate_ivp(cfg.submanifold, TangentVector(ChartPoint(space, s.x0), s.v0), s.s_max, opts);
        break;
      }
      case SegmentKind::bvp: {
        auto sol = solve_bvp(cfg.submanifold, ChartPoint(space, s.a), ChartPoint(space, s.b), tol::bvp_default,
                             cfg.samples);
        r.path = std::move(sol.path);
        break;
      }
      case SegmentKind::line:
        r.path = line_path(cfg.submanifold, ChartPoint(space, s.a), ChartPoint(space, s.b), cfg.samples);
        break;
      case SegmentKind::random_ivp: throw ConfigError("random segments must be expanded first");
    }
    r.length_kappa = condition_length(*r.path);
    if (r.path->size() >= 5) r.report = convexity_report(profile(*r.path));
    r.ok = true;
  } catch (const Error& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt4(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

// ---- SVG --------------------------------------------------------------------

struct Box {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  void add(double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  bool empty() const { return x0 > x1; }
};

using Polyline = std::vector<std::array<double, 2>>;

std::array<double, 2> ambient_plot(const SpaceId& space, const Vec& p) {
  switch (space.kind) {
    case SpaceKind::sphere: {
      const double t1 = std::acos(std::clamp(p[0], -1.0, 1.0));
      if (space.n == 1) return {std::cos(t1), std::sin(t1)};
      const double a = std::atan2(p[2], p[1]);
      return {t1 * std::cos(a), t1 * std::sin(a)};
    }
    case SpaceKind::paraboloid: return {p[0], p[1]};
    default: return {p[0], space.ambient_dim() > 1 ? p[1] : 0.0};
  }
}

std::vector<Polyline> submanifold_marks(const SubmanifoldSpec& N, const Box& box) {
  const SpaceId& space = N.space();
  const double size = 0.02 * std::max(box.x1 - box.x0, box.y1 - box.y0);
  auto cross = [&](std::array<double, 2> c) {
    std::vector<Polyline> out;
    out.push_back({{c[0] - size, c[1] - size}, {c[0] + size, c[1] + size}});
    out.push_back({{c[0] - size, c[1] + size}, {c[0] + size, c[1] - size}});
    Polyline ring;
    for (int k = 0; k <= 24; ++k)
      ring.push_back({c[0] + size * std::cos(2 * pi * k / 24), c[1] + size * std::sin(2 * pi * k / 24)});
    out.push_back(ring);
    return out;
  };
  std::vector<Polyline> marks;
  std::visit(overloaded{
                 [&](const PointSet& ps) {
                   for (const auto& p : ps.points) {
                     auto m = cross(ambient_plot(space, p));
                     marks.insert(marks.end(), m.begin(), m.end());
                   }
                 },
                 [&](const AffineLine& l) {
                   if (l.base.size() < 2) return;
                   const double reach = 2.0 * (std::abs(box.x1 - box.x0) + std::abs(box.y1 - box.y0)) +
                                        std::abs(l.base[0]) + std::abs(l.base[1]);
                   marks.push_back({{l.base[0] - reach * l.direction[0], l.base[1] - reach * l.direction[1]},
                                    {l.base[0] + reach * l.direction[0], l.base[1] + reach * l.direction[1]}});
                 },
                 [&](const ParametricCurve& c) {
                   for (int br = 0; br < c.branches(); ++br) {
                     Polyline line;
                     const int m = 400;
                     for (int k = 0; k <= m; ++k) {
                       const double s = c.s_lo() + (c.s_hi() - c.s_lo()) * k / m;
                       line.push_back(ambient_plot(space, c.position(br, s)));
                     }
                     marks.push_back(line);
                   }
                 },
                 [&](const SpherePoint& p) {
                   auto m = cross(ambient_plot(space, p.unit));
                   marks.insert(marks.end(), m.begin(), m.end());
                 },
                 [&](const DiskOrigin&) {
                   auto m = cross({0.0, 0.0});
                   marks.insert(marks.end(), m.begin(), m.end());
                 },
                 [&](const ParaboloidVertex&) {
                   auto m = cross({0.0, 0.0});
                   marks.insert(marks.end(), m.begin(), m.end());
                 },
             },
             N.kind());
  return marks;
}

std::string points_attr(const Polyline& line, const Box& box, double ox, double oy, double w, double h,
                        bool equal_aspect) {
  double sx = w / std::max(box.x1 - box.x0, 1e-300);
  double sy = h / std::max(box.y1 - box.y0, 1e-300);
  double cx = ox, cy = oy;
  if (equal_aspect) {
    const double s = std::min(sx, sy);
    cx += 0.5 * (w - s * (box.x1 - box.x0));
    cy += 0.5 * (h - s * (box.y1 - box.y0));
    sx = sy = s;
  }
  std::string out;
  for (const auto& p : line) {
    const double px = cx + (p[0] - box.x0) * sx;
    const double py = cy + (box.y1 - p[1]) * sy;
    if (!out.empty()) out += ' ';
    out += fmt4(px) + "," + fmt4(py);
  }
  return out;
}

Box padded(Box b) {
  if (b.empty()) b = {-1, 1, -1, 1};
  const double px = std::max(0.05 * (b.x1 - b.x0), 1e-6), py = std::max(0.05 * (b.y1 - b.y0), 1e-6);
  return {b.x0 - px, b.x1 + px, b.y0 - py, b.y1 + py};
}

}  // namespace

std::string_view to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::ivp: return "ivp";
    case SegmentKind::bvp: return "bvp";
    case SegmentKind::line: return "line";
    case SegmentKind::random_ivp: return "random_ivp";
  }
  return "unknown";
}

std::vector<ScenarioConfig> builtin_scenarios() {
  std::vector<ScenarioConfig> out;
  const SpaceId E2 = SpaceId::euclidean(2);

  // Upper half-plane as the plane with N the x-axis: rho^-2 g is the
  // Poincare metric, its geodesics are vertical lines and semicircles.
  {
    ScenarioConfig c("half_plane_line", SubmanifoldSpec::affine_line(E2, vec({0, 0}), vec({1, 0})));
    c.description = "plane minus the x-axis (Poincare half-plane): semicircle and vertical geodesics";
    c.segments = {two_point(SegmentKind::bvp, "semicircle_bvp", vec({-1, 1}), vec({1, 1})),
                  ivp("semicircle_top", vec({0, 0.5}), vec({1, 0}), 3.0),
                  ivp("oblique", vec({-1.5, 1}), vec({1, 1}), 3.0),
                  two_point(SegmentKind::line, "vertical", vec({1, 0.3}), vec({1, 2.5}))};
    out.push_back(std::move(c));
  }
  // Punctured plane: condition geodesics are the images of cylinder lines
  // (rays, circles and logarithmic spirals).
  {
    ScenarioConfig c("plane_one_point", SubmanifoldSpec::point_set(E2, {vec({0, 0})}));
    c.description = "plane minus the origin: rays, circles and logarithmic spirals";
    c.seed = 1;
    c.segments = {ivp("ray_out", vec({1, 0}), vec({1, 0}), 2.0),
                  ivp("circle", vec({1, 0}), vec({0, 1}), 5.0),
                  ivp("spiral_out", vec({1, 0}), vec({0.5, 1}), 4.0),
                  ivp("spiral_in", vec({-1.5, 0.5}), vec({1, -0.3}), 3.0),
                  two_point(SegmentKind::bvp, "bvp_1_0_to_0_2", vec({1, 0}), vec({0, 2})),
                  random_ivps("random", 3, 3.0)};
    out.push_back(std::move(c));
  }
  // Two points: rho is not smooth on the bisector x = 0. The crossing
  // geodesics are continued through it; the last segment runs along it.
  {
    ScenarioConfig c("plane_two_points", SubmanifoldSpec::point_set(E2, {vec({-1, 0}), vec({1, 0})}));
    c.description = "plane minus (-1,0) and (1,0): geodesics crossing the bisector once, and the bisector itself";
    c.segments = {ivp("cross_low", vec({0.8, 0.5}), vec({-1, 0.3}), 2.5, true),
                  ivp("cross_high", vec({0.6, 1.2}), vec({-1, 0.5}), 2.5, true),
                  ivp("cross_steep", vec({0.5, -0.5}), vec({-1, -1}), 2.0, true),
                  ivp("right_cell", vec({1.5, 0.3}), vec({1, 0.5}), 2.0),
                  two_point(SegmentKind::line, "symmetry_line", vec({0, -1.5}), vec({0, 1.5}))};
    out.push_back(std::move(c));
  }
  // Hyperbola x^2 - y^2 = 1; the y-axis between the branches is nonsmooth.
  {
    ScenarioConfig c("plane_hyperbola", SubmanifoldSpec::hyperbola(1.0, 1.0));
    c.description = "plane minus the hyperbola x^2 - y^2 = 1: smooth-locus geodesics and the segment through the neck";
    c.segments = {ivp("between_branches", vec({0.3, 0.5}), vec({1, 0.2}), 2.0),
                  ivp("inside_right", vec({2.5, 1}), vec({0, 1}), 2.0),
                  ivp("left_side", vec({-0.5, -1}), vec({-0.3, 1}), 2.0),
                  two_point(SegmentKind::line, "neck", vec({0, -2}), vec({0, 2}))};
    out.push_back(std::move(c));
  }
  // Sphere minus the chart pole (1, 0, 0); theta_1 is the distance to it.
  {
    ScenarioConfig c("sphere_north_pole", SubmanifoldSpec::sphere_point(2, vec({1, 0, 0})));
    c.description = "2-sphere minus a pole; plotted in the azimuthal equidistant picture around the pole";
    c.segments = {ivp("equator", vec({pi / 2, 0}), vec({0, 1}), 3.0),
                  ivp("to_south_pole", vec({pi / 2, 0}), vec({1, 0}), 2.0),
                  ivp("oblique", vec({1.0, 0.5}), vec({0.5, 1}), 3.0),
                  ivp("southern", vec({2.0, -1.0}), vec({-0.3, 0.8}), 3.0),
                  two_point(SegmentKind::bvp, "bvp", vec({1.2, -0.5}), vec({1.0, 1.0}))};
    out.push_back(std::move(c));
  }
  // Paraboloid z = x^2 + y^2 minus its vertex, chart (u, phi).
  {
    ScenarioConfig c("paraboloid_vertex", SubmanifoldSpec::paraboloid_vertex());
    c.description = "paraboloid z = x^2 + y^2 minus the vertex; non-radial geodesics spiral into the vertex";
    c.segments = {ivp("spiral", vec({1, 0}), vec({-0.2, 1}), 20.0),
                  ivp("radial", vec({0.5, 1}), vec({1, 0}), 2.0),
                  ivp("spiral_wide", vec({1.5, -2}), vec({0.3, 1}), 15.0)};
    out.push_back(std::move(c));
  }
  // Disk model with metric diag(1/(1-r)^2, r^2/(1-r)^2) minus the origin.
  {
    ScenarioConfig c("disk_origin", SubmanifoldSpec::disk_origin());
    c.description = "hyperbolic disk minus its centre: non-radial profiles are concave";
    c.segments = {ivp("tangential", vec({0.5, 0}), vec({0, 1}), 3.0),
                  ivp("oblique", vec({0.3, 1}), vec({1, 1}), 2.0),
                  ivp("inward", vec({0.7, -2}), vec({-1, 0.5}), 3.0),
                  ivp("radial", vec({0.5, 0.5}), vec({1, 0}), 1.0)};
    out.push_back(std::move(c));
  }
  return out;
}

ScenarioConfig scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  only_keys(j, {"name", "description", "space", "submanifold", "segments", "tol", "samples", "seed", "outputs"},
            "scenario");
  const auto& name = field(j, "name", "scenario");
  if (!name.is_string() || name.get<std::string>().empty()) bad("scenario: 'name' must be a nonempty string");
  const SpaceId space = space_from_json(field(j, "space", "scenario"));
  ScenarioConfig cfg(name.get<std::string>(), submanifold_from_json(space, field(j, "submanifold", "scenario")));
  if (j.contains("description")) {
    if (!j["description"].is_string()) bad("scenario: 'description' must be a string");
    cfg.description = j["description"].get<std::string>();
  }
  const auto& segs = field(j, "segments", "scenario");
  if (!segs.is_array() || segs.empty()) bad("scenario: 'segments' must be a nonempty array");
  for (std::size_t i = 0; i < segs.size(); ++i) cfg.segments.push_back(segment_from_json(space, segs[i], i));
  std::set<std::string> labels;
  for (const auto& s : cfg.segments)
    if (!labels.insert(s.label).second) bad("scenario: duplicate segment label '" + s.label + "'");
  if (j.contains("tol")) cfg.tol = number(j, "tol", "scenario");
  if (!(cfg.tol > 0.0)) bad("scenario: 'tol' must be positive");
  if (j.contains("samples")) cfg.samples = static_cast<int>(number(j, "samples", "scenario"));
  if (cfg.samples < 5) bad("scenario: 'samples' must be at least 5");
  const bool random = std::any_of(cfg.segments.begin(), cfg.segments.end(),
                                  [](const SegmentSpec& s) { return s.kind == SegmentKind::random_ivp; });
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      bad("scenario: 'seed' must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  } else if (random) {
    bad("scenario: 'seed' is required when segments are drawn at random");
  }
  if (j.contains("outputs")) {
    const auto& o = j["outputs"];
    if (!o.is_array()) bad("scenario: 'outputs' must be an array");
    cfg.write_csv = cfg.write_svg = false;
    for (const auto& item : o) {
      if (item == "csv") cfg.write_csv = true;
      else if (item == "svg") cfg.write_svg = true;
      else bad("scenario: unknown output '" + item.dump() + "'");
    }
  }
  return cfg;
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  json segs = json::array();
  for (const auto& s : cfg.segments) segs.push_back(segment_to_json(s));
  json outputs = json::array();
  if (cfg.write_csv) outputs.push_back("csv");
  if (cfg.write_svg) outputs.push_back("svg");
  json j{{"name", cfg.name},
         {"description", cfg.description},
         {"space", space_to_json(cfg.space())},
         {"submanifold", submanifold_to_json(cfg.submanifold)},
         {"segments", segs},
         {"tol", cfg.tol},
         {"samples", cfg.samples},
         {"seed", cfg.seed},
         {"outputs", outputs}};
  return j.dump(2) + "\n";
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read scenario file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return scenario_from_json(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<ScenarioConfig> scenario_catalogue(const std::vector<std::string>& config_paths) {
  auto all = builtin_scenarios();
  for (const auto& p : config_paths) all.push_back(load_scenario_file(p));
  std::map<std::string, int> counts;
  for (const auto& c : all) ++counts[c.name];
  std::string collisions;
  for (const auto& [name, count] : counts)
    if (count > 1) collisions += (collisions.empty() ? "" : ", ") + name;
  if (!collisions.empty()) throw ConfigError("duplicate scenario names: " + collisions);
  return all;
}

std::string segment_csv(const GeodesicPath& path, const ConvexityReport* report) {
  const int n = path.space.dim();
  std::string out = "s";
  for (int i = 0; i < n; ++i) out += ",coord_" + std::to_string(i);
  for (int i = 0; i < n; ++i) out += ",vel_" + std::to_string(i);
  out += ",rho,log_inv_rho,kappa_speed,second_diff\n";
  for (std::size_t k = 0; k < path.size(); ++k) {
    out += fmt17(path.times[k]);
    for (int i = 0; i < n; ++i) out += "," + fmt17(path.points[k].coords[i]);
    for (int i = 0; i < n; ++i) out += "," + fmt17(path.velocities[k].comps[i]);
    const double r = path.rho_vals[k];
    out += "," + fmt17(r) + "," + fmt17(-std::log(r)) + "," + fmt17(path.kappa_speed[k]);
    const double d = report && k < report->second_diff.size() ? report->second_diff[k]
                                                               : std::numeric_limits<double>::quiet_NaN();
    out += "," + (std::isnan(d) ? std::string("nan") : fmt17(d)) + "\n";
  }
  return out;
}

std::string scenario_svg(const ScenarioConfig& cfg, const std::vector<SegmentResult>& segments) {
  static constexpr const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                            "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
  const SpaceId& space = cfg.space();
  std::vector<Polyline> curves, profiles;
  Box dom, prof;
  for (const auto& s : segments) {
    Polyline c, p;
    if (s.path) {
      for (std::size_t k = 0; k < s.path->size(); ++k) {
        const auto xy = plot_coordinates(s.path->points[k]);
        c.push_back(xy);
        dom.add(xy[0], xy[1]);
        const double v = -std::log(s.path->rho_vals[k]);
        p.push_back({s.path->times[k], v});
        prof.add(s.path->times[k], v);
      }
    }
    curves.push_back(std::move(c));
    profiles.push_back(std::move(p));
  }
  std::vector<Polyline> frame_marks;
  if (space.kind == SpaceKind::hyperbolic_disk) {
    Polyline ring;
    for (int k = 0; k <= 200; ++k) ring.push_back({std::cos(2 * pi * k / 200), std::sin(2 * pi * k / 200)});
    for (const auto& q : ring) dom.add(q[0], q[1]);
    frame_marks.push_back(ring);
  }
  dom = padded(dom);
  prof = padded(prof);
  const auto marks = submanifold_marks(cfg.submanifold, dom);

  const double W = 960, H = 480, m = 30, pw = W / 2 - 2 * m, ph = H - 2 * m;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"480\" viewBox=\"0 0 960 480\">\n";
  svg += "<title>" + cfg.name + "</title>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"480\" fill=\"white\"/>\n";
  auto frame = [&](double ox) {
    svg += "<polyline fill=\"none\" stroke=\"#888\" stroke-width=\"1\" points=\"" + fmt4(ox) + "," + fmt4(m) + " " +
           fmt4(ox + pw) + "," + fmt4(m) + " " + fmt4(ox + pw) + "," + fmt4(m + ph) + " " + fmt4(ox) + "," +
           fmt4(m + ph) + " " + fmt4(ox) + "," + fmt4(m) + "\"/>\n";
  };
  const double left = m, right = W / 2 + m;
  frame(left);
  frame(right);
  svg += "<g clip-path=\"none\">\n";
  for (const auto& f : frame_marks)
    svg += "<polyline fill=\"none\" stroke=\"#aaa\" stroke-width=\"1\" points=\"" +
           points_attr(f, dom, left, m, pw, ph, true) + "\"/>\n";
  for (const auto& mk : marks) {
    Polyline clipped;
    for (const auto& q : mk)
      clipped.push_back({std::clamp(q[0], dom.x0, dom.x1), std::clamp(q[1], dom.y0, dom.y1)});
    svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.5\" points=\"" +
           points_attr(clipped, dom, left, m, pw, ph, true) + "\"/>\n";
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].empty()) continue;
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(palette[i % 8]) + "\" stroke-width=\"1.5\" points=\"" +
           points_attr(curves[i], dom, left, m, pw, ph, true) + "\"/>\n";
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(palette[i % 8]) + "\" stroke-width=\"1.5\" points=\"" +
           points_attr(profiles[i], prof, right, m, pw, ph, false) + "\"/>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string scenario_summary_json(const ScenarioConfig& cfg, const RunArtifacts& run) {
  json segs = json::array();
  for (const auto& s : run.segments) {
    json j{{"label", s.label}, {"kind", std::string(to_string(s.kind))}, {"ok", s.ok}};
    if (!s.ok) j["error"] = s.error;
    if (s.path) {
      j["termination"] = std::string(to_string(s.path->termination));
      j["samples"] = s.path->size();
      j["s_end"] = s.path->times.empty() ? 0.0 : s.path->times.back();
      j["length_kappa"] = s.length_kappa;
      j["crossings"] = s.path->crossings;
    }
    if (s.report) {
      j["classification"] = std::string(to_string(s.report->classification));
      j["min_second_diff"] = s.report->min_second_diff;
      j["max_second_diff"] = s.report->max_second_diff;
      j["tolerance"] = s.report->tolerance_used;
      j["violations"] = s.report->violation_locations.size();
    }
    if (!s.csv_path.empty()) j["csv"] = std::filesystem::path(s.csv_path).filename().string();
    segs.push_back(j);
  }
  json j{{"scenario", cfg.name},
         {"description", cfg.description},
         {"space", space_to_json(cfg.space())},
         {"submanifold", submanifold_to_json(cfg.submanifold)},
         {"tol", cfg.tol},
         {"samples", cfg.samples},
         {"seed", cfg.seed},
         {"segments", segs}};
  if (!run.svg_path.empty()) j["svg"] = std::filesystem::path(run.svg_path).filename().string();
  return j.dump(2) + "\n";
}

RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  RunArtifacts run;
  run.scenario = cfg.name;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

  for (const auto& s : expand_segments(cfg)) run.segments.push_back(solve_segment(cfg, s));

  for (std::size_t i = 0; i < run.segments.size(); ++i) {
    auto& s = run.segments[i];
    if (!cfg.write_csv || !s.path) continue;
    char idx[16];
    std::snprintf(idx, sizeof idx, "%02zu", i);
    const fs::path p = fs::path(out_dir) / (cfg.name + "_" + idx + "_" + s.label + ".csv");
    write_file(p, segment_csv(*s.path, s.report ? &*s.report : nullptr));
    s.csv_path = p.string();
    run.csv_paths.push_back(s.csv_path);
  }
  if (cfg.write_svg) {
    const fs::path p = fs::path(out_dir) / (cfg.name + ".svg");
    write_file(p, scenario_svg(cfg, run.segments));
    run.svg_path = p.string();
  }
  const fs::path summary = fs::path(out_dir) / (cfg.name + "_summary.json");
  run.summary_path = summary.string();
  write_file(summary, scenario_summary_json(cfg, run));
  return run;
}

}  // namespace condgeo
