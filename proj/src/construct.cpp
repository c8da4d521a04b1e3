#include "reebdom/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reebdom {

namespace {

Point2 unit(Point2 d) { return (1.0 / norm(d)) * d; }

Point2 canonical(Point2 d) {
  d = unit(d);
  if (d.x < 0 || (d.x == 0 && d.y < 0)) d = -1.0 * d;
  return d;
}

double line_distance(const Line& l, Point2 p) { return std::abs(cross(p - l.point, l.direction)); }

double segment_distance(Point2 a, Point2 b, Point2 p) {
  const Point2 d = b - a;
  const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
  return distance(a + t * d, p);
}

bool all_circles(const Scene& s) {
  return std::all_of(s.curves.begin(), s.curves.end(), [](const CurveObject& c) { return c.is_circle(); });
}

PointedDisk disk_at(const std::string& id, Point2 center, double radius, Point2 basepoint) {
  return {{id, Circle{center, radius}}, center, basepoint, {}};
}

std::string fresh_id(const Scene& s, const std::string& base) {
  std::string id = base;
  for (int k = 1; s.index_of(id) >= 0; ++k) id = base + std::to_string(k);
  return id;
}

}  // namespace

bool ForbiddenLines::contains(Point2 p, double slack) const {
  return std::any_of(lines.begin(), lines.end(), [&](const Line& l) { return line_distance(l, p) <= slack; });
}

ForbiddenLines forbidden_lines(const RefinedDomain& dom, const PoleSet& poles, Point2 x) {
  const double slack = dom.scene().tol.slack();
  ForbiddenLines out;
  auto add = [&](Point2 p, Point2 d) {
    const Line l{p, canonical(d)};
    for (const auto& m : out.lines)
      if (std::abs(cross(m.direction, l.direction)) <= 1e-12 && line_distance(m, p) <= slack) return;
    out.lines.push_back(l);
  };
  const auto all = poles.all();
  for (const auto& p : all)
    if (distance(p, x) > slack) add(x, p - x);
  for (const auto& p : all) {
    add(p, {1, 0});
    add(p, {0, 1});
  }
  return out;
}

PointedDisk choose_ls_ellipse(const RefinedDomain& dom, const PoleSet& poles, Point2 x, Point2 x1) {
  const double slack = dom.scene().tol.slack();
  if (region_membership(dom, x) != Membership::Boundary)
    throw Error(ErrorKind::InvalidPointedDisk, "basepoint is not on the region boundary", x);
  if (distance(x, x1) <= slack) throw Error(ErrorKind::ForbiddenDirection, "direction point equals the basepoint", x1);
  const auto all = poles.all();
  const bool x1_pole = std::any_of(all.begin(), all.end(), [&](Point2 p) { return distance(p, x1) <= slack; });
  if (!x1_pole && forbidden_lines(dom, poles, x).contains(x1, slack))
    throw Error(ErrorKind::ForbiddenDirection, "direction point lies on a forbidden line", x1);

  constexpr double kMu = 1e-2;
  const Point2 mid = 0.5 * (x + x1);
  const Point2 dir = unit(x1 - x);
  const double half = 0.5 * distance(x, x1) * (1 + kMu);
  const Point2 a = mid - half * dir, b = mid + half * dir;
  for (const auto& p : all)
    if (distance(p, x) > slack && distance(p, x1) > slack && segment_distance(a, b, p) <= slack)
      throw Error(ErrorKind::ForbiddenDirection, "segment passes through another pole", p);

  Ellipse e;
  e.center = mid;
  e.rotation = std::atan2(dir.y, dir.x);
  e.a1 = 1 / (half * half);
  const std::string id = fresh_id(dom.scene(), "ls");
  double minor = half;
  for (int k = 0; k < 60; ++k) {
    minor *= 0.5;
    e.a2 = 1 / (minor * minor);
    PointedDisk pd{{id, e}, mid, x, {}};
    try {
      if (classify(dom, poles, pd).ls) return pd;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::NoLSFound, "no locally small ellipse after 60 halvings", x);
}

Theorem2Report theorem2_check(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& pd) {
  if (!all_circles(dom.scene()) || !pd.curve.is_circle())
    throw Error(ErrorKind::HypothesisViolated, "every curve must be a circle");
  const ClassReport r = classify(dom, poles, pd);
  if (!r.ls || r.connected)
    throw Error(ErrorKind::HypothesisViolated, "the addition is not locally small with a disconnected intersection");
  const auto& tol = dom.scene().tol;
  Theorem2Report out;
  out.no_circle_contained = true;
  for (const auto& c : dom.scene().curves) {
    const auto& ci = std::get<Circle>(c.shape);
    bool inside = true;
    for (int k = 0; k < 256 && inside; ++k) {
      const double th = 2 * std::numbers::pi * k / 256;
      const Point2 p = ci.center + ci.radius * Point2{std::cos(th), std::sin(th)};
      inside = in_disk_closure(pd, p, tol) && region_membership(dom, p) == Membership::Boundary;
    }
    if (inside) out.no_circle_contained = false;
  }
  for (const auto& p : dom.double_points)
    if (in_disk_closure(pd, p, tol)) ++out.double_point_count;
  return out;
}

SceneWithDisk three_circle_witness(double gap) {
  if (!(gap > 0 && gap < 1)) throw Error(ErrorKind::InvalidInput, "gap must lie in (0, 1)");
  const double h = std::sqrt(0.75);
  const double rho = h + gap * (4 - h - 1) / 4;
  SceneWithDisk out;
  out.scene.curves = {{"s0", Circle{{0, 0}, 4}}, {"s1", Circle{{-0.5, 0}, 1}}, {"s2", Circle{{0.5, 0}, 1}}};
  out.scene.seed = {0, 2.5};
  out.disk = disk_at("d", {0, 0}, rho, {0, h});
  const RefinedDomain dom = select_region(out.scene);
  const PoleSet poles = assemble_poles(dom, {});
  for (const auto& p : poles.all()) {
    const bool lens = std::abs(p.x) <= 1e-9 && std::abs(std::abs(p.y) - h) <= 1e-9;
    if (!lens && in_disk_closure(out.disk, p, out.scene.tol))
      throw Error(ErrorKind::GapTooLarge, "the disk contains a pole other than the lens points", p);
  }
  const ClassReport r = classify(dom, poles, out.disk);
  if (!r.ls || r.connected) throw Error(ErrorKind::GapTooLarge, "the witness disk is not locally small");
  return out;
}

SceneWithDisk build_annulus_example(double r_in, double r_out, AnnulusVariant variant) {
  if (!(r_in > 0 && r_out > r_in)) throw Error(ErrorKind::InvalidInput, "radii must satisfy 0 < r_in < r_out");
  SceneWithDisk out;
  out.scene.curves = {{"inner", Circle{{0, 0}, r_in}}, {"outer", Circle{{0, 0}, r_out}}};
  out.scene.seed = {0, 0.5 * (r_in + r_out)};
  const double w = r_out - r_in;
  if (variant == AnnulusVariant::Example1Disk) {
    out.disk = disk_at("d", {r_out, 0}, 0.25 * w, {r_out, 0});
  } else {
    const double minor = std::min(0.5 * w, 0.5 * r_in);
    out.disk = {{"e", Ellipse::standard({0, 0}, r_in * 1.01, minor)}, {0, 0}, {-r_in, 0}, {}};
  }
  return out;
}

double disk_radius(const PointedDisk& pd) {
  if (const auto* c = std::get_if<Circle>(&pd.curve.shape)) return c->radius;
  if (const auto* e = std::get_if<Ellipse>(&pd.curve.shape)) return std::max(e->semi_axis_u(), e->semi_axis_v());
  return 0.5 * bounding_box(pd.curve).diameter();
}

ShrinkFamily shrink_family_concentric(const RefinedDomain& dom, const PoleSet& poles, Point2 x, double r0,
                                      int steps) {
  if (steps < 1 || !(r0 > 0)) throw Error(ErrorKind::InvalidInput, "need r0 > 0 and at least one step");
  const std::string id = fresh_id(dom.scene(), "d");
  ShrinkFamily f;
  f.kind = ShrinkKind::Concentric;
  f.basepoint = x;
  for (int k = 0; k < steps; ++k) {
    const double r = r0 * std::ldexp(1.0, -k);
    PointedDisk pd = disk_at(id, x, r, x);
    if (k == 0) {
      try {
        if (!classify(dom, poles, pd).small) throw Error(ErrorKind::InitialDiskInvalid, "initial disk is not small");
        apply_addition(dom, poles, pd);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::InitialDiskInvalid) throw;
        throw Error(ErrorKind::InitialDiskInvalid, std::string("initial disk rejected: ") + e.what(), x);
      }
    } else if (!classify(dom, poles, pd).small) {
      throw Error(ErrorKind::SimilarityBroken, "family member is not small", x);
    }
    f.disks.push_back(pd);
    f.params.push_back(std::ldexp(1.0, -k));
  }
  return f;
}

ShrinkFamily shrink_family_chord(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& pd0, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidInput, "need at least one step");
  const Scene& s = dom.scene();
  if (!all_circles(s) || !pd0.curve.is_circle())
    throw Error(ErrorKind::HypothesisViolated, "every curve must be a circle");
  const double slack = s.tol.slack();
  const Point2 x = pd0.basepoint;
  int host = -1, hosts = 0;
  for (int i = 0; i < static_cast<int>(s.curves.size()); ++i)
    if (distance_to_curve(s.curves[i], x) <= slack) host = i, ++hosts;
  if (hosts != 1) throw Error(ErrorKind::HypothesisViolated, "basepoint must lie on exactly one circle", x);
  const ClassReport r0 = classify(dom, poles, pd0);
  if (!r0.small || !r0.connected)
    throw Error(ErrorKind::HypothesisViolated, "initial disk is not small with a connected intersection", x);

  const auto& C = std::get<Circle>(s.curves[host].shape);
  const auto& D = std::get<Circle>(pd0.curve.shape);
  const auto ends = intersect_curves(s.curves[host], pd0.curve, s.tol);
  if (ends.size() != 2) throw Error(ErrorKind::HypothesisViolated, "initial disk must cut one chord", x);
  const Point2 e1 = ends[0].point, e2 = ends[1].point;
  if (std::abs(distance(x, e1) - distance(x, e2)) > 1e-6 * C.radius)
    throw Error(ErrorKind::HypothesisViolated, "basepoint must bisect the cut arc", x);

  const double R = C.radius;
  const Point2 n = unit(x - C.center);
  const Point2 m0 = 0.5 * (e1 + e2);
  const double d0 = dot(x - m0, n);
  const double ratio = 0.5 * distance(e1, e2) / D.radius;
  const double sign = dot(D.center - m0, n) >= 0 ? 1.0 : -1.0;

  ShrinkFamily f;
  f.kind = ShrinkKind::Chord;
  f.basepoint = x;
  f.disks.push_back(pd0);
  f.params.push_back(1.0);
  for (int k = 1; k < steps; ++k) {
    const double t = std::pow(0.6, k);
    const double d = d0 * t;
    const double h = std::sqrt(std::max(0.0, R * R - (R - d) * (R - d)));
    const double rho = h / ratio;
    const double off = sign * std::sqrt(std::max(0.0, rho * rho - h * h));
    const Point2 center = (x - d * n) + off * n;
    PointedDisk pd = disk_at(pd0.curve.id, center, rho, x);
    const ClassReport r = classify(dom, poles, pd);
    if (!r.small || !r.connected) throw Error(ErrorKind::SimilarityBroken, "family member lost the class", center);
    f.disks.push_back(pd);
    f.params.push_back(t);
  }
  return f;
}

bool family_reeb_invariant(const RefinedDomain& dom, const PoleSet& poles, const ShrinkFamily& family) {
  std::optional<PRDigraph> px, py;
  for (const auto& pd : family.disks) {
    const auto [nd, np] = apply_addition(dom, poles, pd);
    PRDigraph gx = poincare_reeb(nd, np, Axis::X), gy = poincare_reeb(nd, np, Axis::Y);
    const double eps = nd.scene().tol.eps_value;
    if (px && !vdigraph_isomorphic(*px, gx, ValueMode::OrderCompatible, eps)) return false;
    if (py && !vdigraph_isomorphic(*py, gy, ValueMode::OrderCompatible, eps)) return false;
    px = std::move(gx);
    py = std::move(gy);
  }
  return true;
}

}  // namespace reebdom
