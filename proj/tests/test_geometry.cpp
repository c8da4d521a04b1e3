#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reebdom/geometry.hpp"

using namespace reebdom;

namespace {

CurveObject circle(double x, double y, double r, std::string id = "c") {
  return {std::move(id), Circle{{x, y}, r}};
}

// Four-arc approximation of the unit circle.
ArcChain round_chain() {
  const double k = 4.0 / 3.0 * (std::sqrt(2.0) - 1.0) * 3.0;
  std::vector<MonotoneArc> arcs{
      MonotoneArc::hermite({-1, 0}, {0, k}, {0, 1}, {k, 0}),
      MonotoneArc::hermite({0, 1}, {k, 0}, {1, 0}, {0, -k}),
      MonotoneArc::hermite({1, 0}, {0, -k}, {0, -1}, {-k, 0}),
      MonotoneArc::hermite({0, -1}, {-k, 0}, {-1, 0}, {0, k}),
  };
  return ArcChain(arcs, {}, 1e-9);
}

const TolerancePolicy kTol{};

}  // namespace

TEST(Intersect, UnitCirclesCrossAtTwoPoints) {
  auto r = intersect_curves(circle(0, 0, 1), circle(1, 0, 1), kTol);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].point.x, 0.5, 1e-12);
  EXPECT_NEAR(r[0].point.y, -0.8660254037844386, 1e-12);
  EXPECT_NEAR(r[1].point.y, 0.8660254037844386, 1e-12);
  for (const auto& x : r) {
    EXPECT_TRUE(x.transversal);
    EXPECT_LT(std::abs(x.point.x * x.point.x + x.point.y * x.point.y - 1), 1e-10);
    EXPECT_LT(std::abs((x.point.x - 1) * (x.point.x - 1) + x.point.y * x.point.y - 1), 1e-10);
  }
}

TEST(Intersect, DisjointAndTangentCircles) {
  EXPECT_TRUE(intersect_curves(circle(0, 0, 1), circle(3, 0, 1), kTol).empty());
  auto r = intersect_curves(circle(0, 0, 1), circle(2, 0, 1), kTol);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].point.x, 1, 1e-9);
  EXPECT_FALSE(r[0].transversal);
}

TEST(Intersect, EllipseCircleMatchesClosedForm) {
  // x^2/4 + y^2 = 1 and unit circle centred at (2, 0): x = 2/3 * (4 - sqrt(...)) oracle.
  CurveObject e{"e", Ellipse::standard({0, 0}, 2, 1)};
  auto r = intersect_curves(e, circle(2, 0, 1), kTol);
  ASSERT_EQ(r.size(), 2u);
  // Substituting y^2 = 1 - x^2/4 into (x-2)^2 + y^2 = 1 gives 3x^2 - 16x + 16 = 0, x = 4/3.
  EXPECT_NEAR(r[0].point.x, 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(std::abs(r[0].point.y), std::sqrt(1 - 4.0 / 9.0), 1e-10);
}

TEST(Intersect, ChainAgainstCircle) {
  CurveObject ch{"ch", round_chain()};
  auto r = intersect_curves(ch, circle(1, 0, 1), kTol);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].point.x, 0.5, 2e-3);
  EXPECT_LT(std::abs(std::hypot(r[0].point.x - 1, r[0].point.y) - 1), 1e-9);
}

TEST(Critical, CircleAndEllipse) {
  auto c = projection_critical_points(circle(2, 3, 1), Axis::X);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].kind, ExtremumKind::Min);
  EXPECT_NEAR(c[0].point.x, 1, 1e-15);
  EXPECT_NEAR(c[1].point.x, 3, 1e-15);
  EXPECT_NEAR(c[1].point.y, 3, 1e-15);

  CurveObject e{"e", Ellipse{{0, 0}, 4, 1, 4, 0}};
  c = projection_critical_points(e, Axis::X);
  EXPECT_NEAR(c[0].point.x, -1, 1e-12);
  EXPECT_NEAR(c[1].point.x, 1, 1e-12);

  // Frozen from a symbolic solve of dF/dy = 0, F = 0.
  CurveObject rot{"r", Ellipse{{0, 0}, 4, 1, 4, std::numbers::pi / 4}};
  c = projection_critical_points(rot, Axis::X);
  EXPECT_NEAR(c[0].point.x, -1.58113883008419, 1e-10);
  EXPECT_NEAR(c[0].point.y, 0.948683298050514, 1e-10);
  EXPECT_NEAR(c[1].point.x, 1.58113883008419, 1e-10);
  EXPECT_NEAR(c[1].point.y, -0.948683298050514, 1e-10);
  for (const auto& cp : c) EXPECT_LT(std::abs(tangent_at(rot, cp.point).x), 1e-8);
}

TEST(Critical, ChainMatchesDeclared) {
  const auto ch = round_chain();
  auto cx = ch.critical_points(Axis::X);
  ASSERT_EQ(cx.size(), 2u);
  EXPECT_EQ(ch.runs(Axis::X).size(), 2u);
  EXPECT_EQ(ch.declared().size(), 4u);
  std::vector<MonotoneArc> bad = ch.arcs();
  EXPECT_THROW(ArcChain(bad, {{{5, 5}, Axis::X, ExtremumKind::Min}}, 1e-9), Error);
}

TEST(Slice, Circle) {
  auto s = slice_curve(circle(0, 0, 1), Axis::X, 0, kTol).coords();
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], -1, 1e-15);
  s = slice_curve(circle(0, 0, 1), Axis::X, 0.5, kTol).coords();
  EXPECT_NEAR(s[0], -0.8660254037844386, 1e-12);
  EXPECT_NEAR(s[1], 0.8660254037844386, 1e-12);
  EXPECT_TRUE(slice_curve(circle(0, 0, 1), Axis::X, 2, kTol).hits.empty());
  EXPECT_TRUE(slice_curve(circle(0, 0, 1), Axis::X, 1, kTol).near_critical);
}

TEST(Slice, Chain) {
  CurveObject ch{"ch", round_chain()};
  auto s = slice_curve(ch, Axis::X, 0.5, kTol).coords();
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[1], 0.866, 2e-3);
  EXPECT_NEAR(s[0], -s[1], 1e-12);
}

TEST(Containment, CircleAndChain) {
  EXPECT_EQ(point_in_interior(circle(0, 0, 1), {0, 0}, kTol), Containment::Inside);
  EXPECT_EQ(point_in_interior(circle(0, 0, 1), {1, 0}, kTol), Containment::On);
  EXPECT_EQ(point_in_interior(circle(0, 0, 1), {5, 5}, kTol), Containment::Outside);
  CurveObject ch{"ch", round_chain()};
  EXPECT_EQ(point_in_interior(ch, {0.1, 0.2}, kTol), Containment::Inside);
  EXPECT_EQ(point_in_interior(ch, {1, 0}, kTol), Containment::On);
  EXPECT_EQ(point_in_interior(ch, {1.5, 0}, kTol), Containment::Outside);
  // ray through the top fold of the chain forces a rotated retry
  EXPECT_EQ(point_in_interior(ch, {0, 0.5}, kTol), Containment::Inside);
}

TEST(Sweep, ConicBranches) {
  const auto c = circle(0, 0, 2);
  SweepCurve s(c, 0);
  ASSERT_EQ(s.branches().size(), 2u);
  EXPECT_NEAR(s.eval(s.branches()[0], 0), -2, 1e-12);
  EXPECT_NEAR(s.eval(s.branches()[1], 1), std::sqrt(3.0), 1e-12);
}

TEST(Transforms, SwapAxesMapsCriticalPoints) {
  CurveObject rot{"r", Ellipse{{1, 2}, 4, 1, 4, 0.3}};
  auto sw = swap_axes(rot);
  auto a = projection_critical_points(rot, Axis::Y);
  auto b = projection_critical_points(sw, Axis::X);
  EXPECT_NEAR(a[0].point.y, b[0].point.x, 1e-12);
  EXPECT_NEAR(a[0].point.x, b[0].point.y, 1e-12);
}

TEST(Intersect, RandomConicPairsHaveSmallResiduals) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-2, 2), rad(0.3, 2), ang(0, std::numbers::pi);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    CurveObject a{"a", Ellipse{{pos(rng), pos(rng)}, 1 / (rad(rng) * rad(rng)),
                               1 / (rad(rng) * rad(rng)), 1, ang(rng)}};
    CurveObject b = trial % 2 ? circle(pos(rng), pos(rng), rad(rng))
                              : CurveObject{"b", Ellipse{{pos(rng), pos(rng)}, 2, 0.5, 1, ang(rng)}};
    const double d = merge(bounding_box(a), bounding_box(b)).diameter();
    for (const auto& x : intersect_curves(a, b, kTol)) {
      EXPECT_LT(conic_of(std::get<Ellipse>(a.shape)).geometric_residual(x.point), 1e-8 * d);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}
