#pragma once

#include <cmath>

#include "reebdom/curves.hpp"
#include "reebdom/error.hpp"

namespace reebdom::detail {

// Conic boundary as center + cos t * u + sin t * v.
struct ConicFrame {
  Point2 center, u, v;

  Point2 at(double t) const { return center + std::cos(t) * u + std::sin(t) * v; }
  Point2 tangent(double t) const { return -std::sin(t) * u + std::cos(t) * v; }
  ConicFrame rotated(double phi) const {
    return {center, std::cos(phi) * u + std::sin(phi) * v, -std::sin(phi) * u + std::cos(phi) * v};
  }
};

inline ConicFrame frame_of(const CurveObject& c) {
  if (const auto* ci = std::get_if<Circle>(&c.shape))
    return {ci->center, {ci->radius, 0}, {0, ci->radius}};
  if (const auto* e = std::get_if<Ellipse>(&c.shape))
    return {e->center, e->semi_axis_u() * e->axis_u(), e->semi_axis_v() * e->axis_v()};
  throw Error(ErrorKind::InvalidInput, "curve '" + c.id + "' is not a conic");
}

inline Conic conic_of(const CurveObject& c) {
  if (const auto* ci = std::get_if<Circle>(&c.shape)) return reebdom::conic_of(*ci);
  if (const auto* e = std::get_if<Ellipse>(&c.shape)) return reebdom::conic_of(*e);
  throw Error(ErrorKind::InvalidInput, "curve '" + c.id + "' is not a conic");
}

// Parameter in [t0, t1] where the monotone coordinate of `arc` equals value.
inline double solve_monotone(const MonotoneArc& arc, Axis axis, double t0, double t1, double value) {
  double lo = t0, hi = t1;
  const bool increasing = coord(arc.eval(t1), axis) >= coord(arc.eval(t0), axis);
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool below = coord(arc.eval(mid), axis) < value;
    if (below == increasing) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace reebdom::detail
