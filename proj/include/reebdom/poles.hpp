#pragma once

#include <vector>

#include "reebdom/arrangement.hpp"

namespace reebdom {

// f1 and f2 hold F_{D,1} and F_{D,2}: the boundary double points together
// with the folds of the respective projection.
struct PoleSet {
  std::vector<Point2> f1;
  std::vector<Point2> f2;
  std::vector<Point2> extra;
  double merge_radius = 1e-9;

  std::vector<Point2> all() const;
  // Poles that create vertices for the given projection: F_{D,i} plus extras.
  std::vector<Point2> for_axis(Axis axis) const;
};

std::vector<Point2> double_points(const RefinedDomain& dom);
std::vector<Point2> fold_points(const RefinedDomain& dom, Axis axis);
PoleSet assemble_poles(const RefinedDomain& dom, const std::vector<Point2>& extra);

std::vector<Point2> octant_poles(const Circle& c);
std::vector<Point2> octant_poles(const CurveObject& c);

// Appends points not already present within radius.
void append_unique(std::vector<Point2>& dst, const std::vector<Point2>& src, double radius);

}  // namespace reebdom
