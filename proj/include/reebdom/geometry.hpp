#pragma once

#include <vector>

#include "reebdom/curves.hpp"
#include "reebdom/error.hpp"
#include "reebdom/tolerance.hpp"

namespace reebdom {

struct Intersection {
  Point2 point;
  bool transversal = true;
};

// All common points of two distinct curves. Points where the tangents are
// (numerically) parallel are reported with transversal = false.
std::vector<Intersection> intersect_curves(const CurveObject& c1, const CurveObject& c2,
                                           const TolerancePolicy& tol);

// Extremal points of the coordinate `axis` restricted to the curve.
std::vector<CriticalPoint> projection_critical_points(const CurveObject& c, Axis axis);

struct SliceHit {
  double coord;
  int multiplicity;  // 2 for a tangential contact
};

struct SliceResult {
  std::vector<SliceHit> hits;  // sorted by coord
  bool near_critical = false;  // the line is within eps_value of a critical value

  std::vector<double> coords() const;
};

// Intersections of the curve with the line {axis-coordinate = value}.
SliceResult slice_curve(const CurveObject& c, Axis axis, double value, const TolerancePolicy& tol);

enum class Containment { Inside, On, Outside };

// Parity test on the vertical ray above p; retries with rotated rays when the
// ray grazes a critical point.
Containment point_in_interior(const CurveObject& c, Point2 p, const TolerancePolicy& tol);

// Approximate Euclidean distance from p to the curve.
double distance_to_curve(const CurveObject& c, Point2 p);

// Unit tangent direction of the curve at (or nearest to) a point on it.
Point2 tangent_at(const CurveObject& c, Point2 p);

// ---------------------------------------------------------------------------
// Sweep view: every curve split into x-monotone branches y = f(x).

struct Branch {
  int curve = -1;
  int index = -1;  // conics: 0 lower, 1 upper; chains: run index
  double x0 = 0;
  double x1 = 0;
};

class SweepCurve {
 public:
  explicit SweepCurve(const CurveObject& c, int curve_index);

  const std::vector<Branch>& branches() const { return branches_; }
  // y of the branch at x (x clamped to the branch range).
  double eval(const Branch& b, double x) const;
  const CurveObject& curve() const { return *curve_; }

 private:
  const CurveObject* curve_;
  Conic conic_;
  std::vector<Branch> branches_;
};

}  // namespace reebdom
