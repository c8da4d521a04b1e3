#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "reebdom/geometry.hpp"

namespace reebdom {

struct Scene {
  std::vector<CurveObject> curves;
  Point2 seed;
  TolerancePolicy tol;
  std::vector<Point2> extra_poles;

  int index_of(const std::string& id) const;
  Box bounds() const;
};

// Checks id uniqueness and that the seed lies off every curve.
void validate_scene(const Scene& scene);

struct Interval {
  double lo;
  double hi;
};

struct CrossingPoint {
  Point2 point;
  int curve_a;
  int curve_b;
  bool transversal;
};

// Critical abscissas closer than the slack are merged; x is their mean and
// [x_lo, x_hi] their spread.
struct Event {
  double x;
  std::vector<Point2> points;
  double x_lo = 0;
  double x_hi = 0;
};

// Region of one slab between two consecutive branches; -1 marks the
// unbounded bottom or top.
struct Trapezoid {
  int slab = -1;
  int lower = -1;
  int upper = -1;
};

struct Slab {
  double x0;
  double x1;
  std::vector<int> trapezoids;  // bottom to top
};

class VerticalDecomposition {
 public:
  explicit VerticalDecomposition(const Scene& scene);

  const Scene& scene() const { return *scene_; }
  const std::vector<Event>& events() const { return events_; }
  const std::vector<Slab>& slabs() const { return slabs_; }
  const std::vector<Trapezoid>& trapezoids() const { return traps_; }
  const std::vector<CrossingPoint>& crossings() const { return crossings_; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  const std::vector<Branch>& branches() const { return branches_; }

  int face_of(int trapezoid) const { return face_[trapezoid]; }
  int face_count() const { return static_cast<int>(face_bounded_.size()); }
  bool face_bounded(int face) const { return face_bounded_[face]; }

  double branch_y(int branch, double x) const;
  // Vertical extent of a trapezoid at x (infinite ends for -1 branches).
  Interval interval(int trapezoid, double x) const;
  // Extent of trapezoid t at the edge of its slab facing event e: the slab
  // left of e is read at e.x_lo, the one right of it at e.x_hi.
  Interval event_interval(int trapezoid, int event) const;
  // Slab whose closed x-range contains x (leftmost on ties), or -1.
  int slab_at(double x) const;
  // Trapezoid containing p, or -1 when p is on a curve or outside all slabs.
  int locate(Point2 p) const;

 private:
  std::shared_ptr<const Scene> scene_;
  std::vector<SweepCurve> sweeps_;
  std::vector<Branch> branches_;
  std::vector<CrossingPoint> crossings_;
  std::vector<Event> events_;
  std::vector<Slab> slabs_;
  std::vector<Trapezoid> traps_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> face_;
  std::vector<bool> face_bounded_;
};

struct BranchPiece {
  int branch;
  double x0;
  double x1;
};

// Connected piece of the face boundary on one curve.
struct BoundaryArc {
  std::vector<BranchPiece> pieces;
};

struct RefinedDomain {
  std::shared_ptr<const VerticalDecomposition> dec;
  int face = -1;
  std::vector<int> trapezoids;
  std::map<std::string, std::vector<BoundaryArc>> boundary_incidence;
  std::vector<Point2> double_points;

  const Scene& scene() const { return dec->scene(); }
};

std::shared_ptr<const VerticalDecomposition> decompose(const Scene& scene);
RefinedDomain select_region(const Scene& scene);

enum class Membership { Interior, Boundary, Outside };
Membership region_membership(const RefinedDomain& dom, Point2 p);

// Face intervals of the vertical line at x. At an event the limits from the
// left (side = -1) and right (side = +1) differ; side = 0 returns the closure
// slice (union of both limits, merged).
std::vector<Interval> face_slice(const RefinedDomain& dom, double x, int side = 0);

// True when p lies in the closure of the face (within slack).
bool in_closure(const RefinedDomain& dom, Point2 p);

// Mirror image in the diagonal; axis-2 questions are answered on it.
Scene swap_scene(const Scene& scene);
RefinedDomain swap_domain(const RefinedDomain& dom);

}  // namespace reebdom
