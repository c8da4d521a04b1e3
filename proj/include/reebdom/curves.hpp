#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "reebdom/point.hpp"

namespace reebdom {

// General plane quadric A x^2 + B xy + C y^2 + D x + E y + F.
struct Conic {
  double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;

  double operator()(Point2 p) const {
    return A * p.x * p.x + B * p.x * p.y + C * p.y * p.y + D * p.x + E * p.y + F;
  }
  Point2 gradient(Point2 p) const {
    return {2 * A * p.x + B * p.y + D, B * p.x + 2 * C * p.y + E};
  }
  // |F(p)| / |grad F(p)|: first-order distance from p to the zero set.
  double geometric_residual(Point2 p) const;
};

struct Circle {
  Point2 center;
  double radius = 1.0;
};

// Boundary of { a1 u^2 + a2 v^2 <= r } where (u, v) are coordinates in the
// frame centred at `center` and rotated by `rotation` (radians, [0, pi)).
struct Ellipse {
  Point2 center;
  double a1 = 1.0;
  double a2 = 1.0;
  double r = 1.0;
  double rotation = 0.0;

  double semi_axis_u() const;  // half-length along the rotated first axis
  double semi_axis_v() const;
  Point2 axis_u() const;  // unit vector of the rotated first axis
  Point2 axis_v() const;
  bool standard_form() const { return rotation == 0.0; }

  static Ellipse standard(Point2 center, double half_width, double half_height);
};

// One cubic Bezier segment. The chain builders only emit segments whose
// coordinate along `monotone_axis` is strictly monotone in t.
struct MonotoneArc {
  std::array<Point2, 4> ctrl;
  Axis monotone_axis = Axis::X;

  Point2 eval(double t) const;
  Point2 derivative(double t) const;
  Point2 start() const { return ctrl[0]; }
  Point2 end() const { return ctrl[3]; }

  // Hermite form: endpoints plus end tangents (already scaled).
  static MonotoneArc hermite(Point2 p0, Point2 d0, Point2 p1, Point2 d1, Axis axis = Axis::X);
  static MonotoneArc segment(Point2 p0, Point2 p1, Axis axis = Axis::X);
};

enum class ExtremumKind { Min, Max };

struct CriticalPoint {
  Point2 point;
  Axis axis = Axis::X;
  ExtremumKind kind = ExtremumKind::Min;
};

// A maximal run of the chain along which one coordinate is monotone. `pieces`
// lists (arc index, t0, t1) in chain order; `increasing` tells whether the
// coordinate grows along that order.
struct ChainRun {
  struct Piece {
    int arc;
    double t0;
    double t1;
  };
  std::vector<Piece> pieces;
  double lo = 0;
  double hi = 0;
};

// Closed chain of monotone cubic arcs. Construction validates closure,
// per-arc monotonicity and that `declared` agrees with the critical points
// found from the derivatives.
class ArcChain {
 public:
  ArcChain() = default;
  ArcChain(std::vector<MonotoneArc> arcs, std::vector<CriticalPoint> declared, double tol);

  const std::vector<MonotoneArc>& arcs() const { return arcs_; }
  const std::vector<CriticalPoint>& declared() const { return declared_; }
  std::vector<CriticalPoint> critical_points(Axis axis) const;
  const std::vector<ChainRun>& runs(Axis axis) const {
    return axis == Axis::X ? runs_x_ : runs_y_;
  }

  // Dense polyline (samples per arc) for rendering and raster tests.
  std::vector<Point2> polyline(int samples_per_arc = 16) const;

  // Pairs of arcs that cross each other away from shared endpoints.
  std::vector<Point2> self_intersections(double tol) const;

 private:
  void build_runs(double tol);

  std::vector<MonotoneArc> arcs_;
  std::vector<CriticalPoint> declared_;
  std::vector<CriticalPoint> computed_x_;
  std::vector<CriticalPoint> computed_y_;
  std::vector<ChainRun> runs_x_;
  std::vector<ChainRun> runs_y_;
};

using CurveShape = std::variant<Circle, Ellipse, ArcChain>;

struct CurveObject {
  std::string id;
  CurveShape shape;

  bool is_circle() const { return std::holds_alternative<Circle>(shape); }
  bool is_ellipse() const { return std::holds_alternative<Ellipse>(shape); }
  bool is_chain() const { return std::holds_alternative<ArcChain>(shape); }
};

Conic conic_of(const Circle& c);
Conic conic_of(const Ellipse& e);

struct Box {
  double xmin, ymin, xmax, ymax;
  double diameter() const;
  bool contains(Point2 p, double pad = 0) const {
    return p.x >= xmin - pad && p.x <= xmax + pad && p.y >= ymin - pad && p.y <= ymax + pad;
  }
};

Box bounding_box(const CurveObject& c);
Box merge(const Box& a, const Box& b);

// Rigid motions used for axis swapping and ray retries.
CurveObject swap_axes(const CurveObject& c);
CurveObject rotate(const CurveObject& c, double angle, Point2 about);
Point2 rotate(Point2 p, double angle, Point2 about);

// Point on the curve for parameter s in [0, 1) (angle fraction for conics,
// arc fraction for chains); used for sampling and rendering.
Point2 sample_curve(const CurveObject& c, double s);

}  // namespace reebdom
