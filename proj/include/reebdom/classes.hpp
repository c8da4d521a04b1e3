#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "reebdom/poles.hpp"

namespace reebdom {

struct PointedDisk {
  CurveObject curve;
  Point2 side_seed;  // selects the complement component D'
  Point2 basepoint;
  std::vector<Point2> incoming_poles;  // empty: folds of the curve
};

// Throws InvalidPointedDisk unless the basepoint lies inside D' and on the
// boundary of the region, and the incoming poles lie on the curve.
void validate_pointed_disk(const RefinedDomain& dom, const PointedDisk& pd);

std::pair<RefinedDomain, PoleSet> apply_addition(const RefinedDomain& dom, const PoleSet& poles,
                                                 const PointedDisk& pd,
                                                 std::optional<Point2> new_seed = std::nullopt);

struct ClassEvidence {
  std::vector<Point2> small;          // poles whose projections meet the projected intersection
  std::vector<Point2> locally_small;  // poles in the intersection sharing no coordinate
};

struct ClassReport {
  bool connected = false;
  bool small = false;
  bool ps = false;
  bool ls = false;
  bool pls = false;
  ClassEvidence evidence;
  int components = 0;
};

// Connectivity of closure(D') with closure(D_S); the second value is the
// number of components.
std::pair<bool, int> connected_class(const RefinedDomain& dom, const PointedDisk& pd);

ClassReport classify(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& pd);

// Checks the implications LS and connected => PLS, S and connected => PS,
// and S => LS for a disk based on the curve union.
bool corollary1_check(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& pd);

// True when p lies in the closure of D'.
bool in_disk_closure(const PointedDisk& pd, Point2 p, const TolerancePolicy& tol);

}  // namespace reebdom
