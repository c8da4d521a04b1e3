#pragma once

#include <vector>

#include "reebdom/classes.hpp"
#include "reebdom/reeb.hpp"

namespace reebdom {

struct Line {
  Point2 point;
  Point2 direction;  // unit
};

struct ForbiddenLines {
  std::vector<Line> lines;

  bool contains(Point2 p, double slack) const;
};

// Lines through x and every other pole, plus the horizontal and vertical
// lines through every pole, deduplicated.
ForbiddenLines forbidden_lines(const RefinedDomain& dom, const PoleSet& poles, Point2 x);

// Thin ellipse around the segment x..x1 whose minor axis is halved until
// the addition is locally small.
PointedDisk choose_ls_ellipse(const RefinedDomain& dom, const PoleSet& poles, Point2 x, Point2 x1);

struct Theorem2Report {
  bool no_circle_contained = false;
  int double_point_count = 0;
};

Theorem2Report theorem2_check(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& pd);

struct SceneWithDisk {
  Scene scene;
  PointedDisk disk;
};

SceneWithDisk three_circle_witness(double gap);

enum class AnnulusVariant { Example1Disk, Example2Ellipse };
SceneWithDisk build_annulus_example(double r_in, double r_out, AnnulusVariant variant);

enum class ShrinkKind { Chord, Concentric };

struct ShrinkFamily {
  std::vector<PointedDisk> disks;
  std::vector<double> params;
  ShrinkKind kind = ShrinkKind::Concentric;
  Point2 basepoint;
};

ShrinkFamily shrink_family_chord(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& pd0,
                                 int steps = 10);
ShrinkFamily shrink_family_concentric(const RefinedDomain& dom, const PoleSet& poles, Point2 x, double r0,
                                      int steps = 10);

// Digraphs of consecutive members agree for both axes (order-compatible).
bool family_reeb_invariant(const RefinedDomain& dom, const PoleSet& poles, const ShrinkFamily& family);

double disk_radius(const PointedDisk& pd);

}  // namespace reebdom
