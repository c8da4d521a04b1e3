#include "reebdom/poles.hpp"

#include <cmath>
#include <numbers>

namespace reebdom {

void append_unique(std::vector<Point2>& dst, const std::vector<Point2>& src, double radius) {
  for (const auto& p : src) {
    bool seen = false;
    for (const auto& q : dst) seen = seen || distance(p, q) <= radius;
    if (!seen) dst.push_back(p);
  }
}

std::vector<Point2> PoleSet::all() const {
  std::vector<Point2> out;
  append_unique(out, f1, merge_radius);
  append_unique(out, f2, merge_radius);
  append_unique(out, extra, merge_radius);
  return out;
}

std::vector<Point2> PoleSet::for_axis(Axis axis) const {
  std::vector<Point2> out;
  append_unique(out, axis == Axis::X ? f1 : f2, merge_radius);
  append_unique(out, extra, merge_radius);
  return out;
}

std::vector<Point2> double_points(const RefinedDomain& dom) { return dom.double_points; }

std::vector<Point2> fold_points(const RefinedDomain& dom, Axis axis) {
  const double eps = dom.scene().tol.eps_coincide;
  std::vector<Point2> out;
  for (const auto& c : dom.scene().curves) {
    for (const auto& cp : projection_critical_points(c, axis)) {
      bool at_double = false;
      for (const auto& d : dom.double_points) at_double = at_double || distance(d, cp.point) <= eps;
      if (at_double || region_membership(dom, cp.point) != Membership::Boundary) continue;
      append_unique(out, {cp.point}, eps);
    }
  }
  return out;
}

PoleSet assemble_poles(const RefinedDomain& dom, const std::vector<Point2>& extra) {
  PoleSet ps;
  ps.merge_radius = dom.scene().tol.slack();
  for (const auto& p : extra)
    if (region_membership(dom, p) != Membership::Boundary)
      throw Error(ErrorKind::ExtraPoleOffBoundary, "extra pole is not on the region boundary", p);
  ps.f1 = dom.double_points;
  append_unique(ps.f1, fold_points(dom, Axis::X), ps.merge_radius);
  ps.f2 = dom.double_points;
  append_unique(ps.f2, fold_points(dom, Axis::Y), ps.merge_radius);
  append_unique(ps.extra, extra, ps.merge_radius);
  return ps;
}

std::vector<Point2> octant_poles(const Circle& c) {
  std::vector<Point2> out;
  for (int a = 0; a < 8; ++a) {
    const double th = std::numbers::pi * a / 4;
    out.push_back({c.center.x + c.radius * std::cos(th), c.center.y + c.radius * std::sin(th)});
  }
  return out;
}

std::vector<Point2> octant_poles(const CurveObject& c) {
  if (const auto* ci = std::get_if<Circle>(&c.shape)) return octant_poles(*ci);
  throw Error(ErrorKind::InvalidInput, "octant poles are defined for circles only");
}

}  // namespace reebdom
