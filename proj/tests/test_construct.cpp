#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "reebdom/construct.hpp"

using namespace reebdom;

namespace {

CurveObject circle(std::string id, double x, double y, double r) {
  return {std::move(id), Circle{{x, y}, r}};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::CheckFailed;
}

Scene annulus(double r_in, double r_out) {
  return {{circle("inner", 0, 0, r_in), circle("outer", 0, 0, r_out)}, {0, 0.5 * (r_in + r_out)}, {}, {}};
}

}  // namespace

TEST(Construct, ForbiddenLinesAnnulus) {
  auto dom = select_region(annulus(1, 2));
  auto poles = assemble_poles(dom, {});
  auto fl = forbidden_lines(dom, poles, {1, 0});
  // 7 lines through x collapse to 5 (three poles on the horizontal axis);
  // axis lines through poles add 5 vertical and 4 more horizontal ones.
  EXPECT_EQ(fl.lines.size(), 14u);
  EXPECT_TRUE(fl.contains({5, 0}, 1e-9));
  EXPECT_TRUE(fl.contains({2, 1}, 1e-9));
  EXPECT_FALSE(fl.contains({0.3, 0.55}, 1e-9));
}

TEST(Construct, LSEllipseExample2) {
  auto dom = select_region(annulus(1, 2));
  auto poles = assemble_poles(dom, {});
  auto pd = choose_ls_ellipse(dom, poles, {-1, 0}, {1, 0});
  auto r = classify(dom, poles, pd);
  EXPECT_TRUE(r.ls);
  EXPECT_FALSE(r.connected);
  EXPECT_FALSE(r.pls);
  const auto& e = std::get<Ellipse>(pd.curve.shape);
  EXPECT_NEAR(e.center.x, 0, 1e-15);
  EXPECT_NEAR(e.semi_axis_u(), 1.01, 1e-12);
  EXPECT_EQ(kind_of([&] { choose_ls_ellipse(dom, poles, {-1, 0}, {0.5, 0}); }), ErrorKind::ForbiddenDirection);
  EXPECT_EQ(kind_of([&] { choose_ls_ellipse(dom, poles, {-1, 0}, {-1, 0}); }), ErrorKind::ForbiddenDirection);
}

TEST(Construct, LSEllipseParallelChordIsSmall) {
  // Both ends on the inner circle, horizontal segment touching the closure
  // only at its ends.
  auto dom = select_region(annulus(1, 2));
  auto poles = assemble_poles(dom, {});
  const double y = 0.5, x = std::sqrt(1 - y * y);
  auto pd = choose_ls_ellipse(dom, poles, {-x, y}, {x, y});
  auto r = classify(dom, poles, pd);
  EXPECT_TRUE(r.ls);
  EXPECT_TRUE(r.small);
}

TEST(Construct, LSEllipseRandomDirections) {
  auto dom = select_region(annulus(1, 2));
  auto poles = assemble_poles(dom, {});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), len(0.2, 3);
  int done = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const double a = ang(rng);
    const Point2 x{2 * std::cos(a), 2 * std::sin(a)};
    const double b = ang(rng);
    const Point2 x1 = x + len(rng) * Point2{std::cos(b), std::sin(b)};
    PointedDisk pd;
    try {
      pd = choose_ls_ellipse(dom, poles, x, x1);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ForbiddenDirection) << e.what();
      continue;
    }
    EXPECT_TRUE(classify(dom, poles, pd).ls);
    ++done;
  }
  EXPECT_GE(done, 30);
}

TEST(Construct, ThreeCircleWitness) {
  auto w = three_circle_witness(0.1);
  auto dom = select_region(w.scene);
  auto poles = assemble_poles(dom, {});
  const double h = std::sqrt(0.75);
  ASSERT_EQ(dom.double_points.size(), 2u);
  for (const auto& p : dom.double_points) {
    EXPECT_NEAR(p.x, 0, 1e-12);
    EXPECT_NEAR(std::abs(p.y), h, 1e-12);
  }
  auto r = classify(dom, poles, w.disk);
  EXPECT_TRUE(r.ls);
  EXPECT_FALSE(r.connected);
  auto t2 = theorem2_check(dom, poles, w.disk);
  EXPECT_TRUE(t2.no_circle_contained);
  EXPECT_EQ(t2.double_point_count, 2);
  EXPECT_EQ(kind_of([] { three_circle_witness(0.9); }), ErrorKind::GapTooLarge);
  EXPECT_EQ(kind_of([] { three_circle_witness(1.5); }), ErrorKind::InvalidInput);
}

TEST(Construct, Theorem2Hypothesis) {
  auto ex = build_annulus_example(1, 1.2, AnnulusVariant::Example1Disk);
  auto dom = select_region(ex.scene);
  auto poles = assemble_poles(dom, {});
  EXPECT_EQ(kind_of([&] { theorem2_check(dom, poles, ex.disk); }), ErrorKind::HypothesisViolated);
}

TEST(Construct, Theorem2RandomCircles) {
  // Mirror-symmetric pairs of circles put their double points on one
  // vertical line, so disks around such a pair can be locally small.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1), pm(-1, 1);
  int found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const double r = 0.6 + 0.8 * u(rng), a = r * (0.2 + 0.6 * u(rng)), b = 0.5 * pm(rng);
    const double big = 2.5 + r + a + u(rng);
    Scene s{{circle("big", 0.1 * pm(rng), 0.1 * pm(rng), big), circle("l", -a, b, r), circle("r", a, b, r)},
            {0, b + r + 0.5},
            {},
            {}};
    if (trial % 2) s.curves.push_back(circle("t", 0.3 * pm(rng), b - r - 0.8, 0.5));
    RefinedDomain dom;
    try {
      dom = select_region(s);
    } catch (const Error&) {
      continue;
    }
    auto poles = assemble_poles(dom, {});
    const double h = std::sqrt(r * r - a * a);
    const Point2 top{0, b + h};
    const double rho = h * (1.02 + 0.2 * u(rng));
    const Point2 ctr{0, b + 0.01 * h * pm(rng)};
    PointedDisk pd{circle("d", ctr.x, ctr.y, rho), ctr, top, {}};
    ClassReport cr;
    try {
      cr = classify(dom, poles, pd);
    } catch (const Error&) {
      continue;
    }
    if (!cr.ls || cr.connected) continue;
    auto t2 = theorem2_check(dom, poles, pd);
    EXPECT_GE(t2.double_point_count, 2) << "trial " << trial;
    EXPECT_TRUE(t2.no_circle_contained) << "trial " << trial;
    ++found;
  }
  EXPECT_GE(found, 20);
}

TEST(Construct, AnnulusExamples) {
  auto e1 = build_annulus_example(1, 1.2, AnnulusVariant::Example1Disk);
  auto d1 = select_region(e1.scene);
  auto r1 = classify(d1, assemble_poles(d1, {}), e1.disk);
  EXPECT_TRUE(r1.ps);
  auto e2 = build_annulus_example(1, 2, AnnulusVariant::Example2Ellipse);
  auto d2 = select_region(e2.scene);
  auto r2 = classify(d2, assemble_poles(d2, {}), e2.disk);
  EXPECT_TRUE(r2.ls);
  EXPECT_FALSE(r2.pls);
  EXPECT_EQ(kind_of([] { build_annulus_example(1, 1, AnnulusVariant::Example1Disk); }), ErrorKind::InvalidInput);
}

TEST(Construct, ConcentricFamily) {
  auto dom = select_region(annulus(1, 2));
  auto poles = assemble_poles(dom, {});
  auto f = shrink_family_concentric(dom, poles, {2, 0}, 0.2, 8);
  ASSERT_EQ(f.disks.size(), 8u);
  for (std::size_t k = 1; k < f.disks.size(); ++k) EXPECT_LT(disk_radius(f.disks[k]), disk_radius(f.disks[k - 1]));
  EXPECT_TRUE(family_reeb_invariant(dom, poles, f));
  EXPECT_EQ(shrink_family_concentric(dom, poles, {2, 0}, 0.2, 1).disks.size(), 1u);
  EXPECT_EQ(kind_of([&] { shrink_family_concentric(dom, poles, {2, 0}, 50, 3); }), ErrorKind::InitialDiskInvalid);
}

TEST(Construct, ChordFamily) {
  auto dom = select_region(annulus(1, 2));
  auto poles = assemble_poles(dom, {});
  PointedDisk pd0{circle("d", 2.1, 0, 0.3), {2.1, 0}, {2, 0}, {}};
  auto f = shrink_family_chord(dom, poles, pd0, 10);
  ASSERT_EQ(f.disks.size(), 10u);
  const auto& outer = dom.scene().curves[1];
  double ratio0 = 0;
  for (std::size_t k = 0; k < f.disks.size(); ++k) {
    if (k > 0) EXPECT_LT(disk_radius(f.disks[k]), disk_radius(f.disks[k - 1]));
    auto ends = intersect_curves(outer, f.disks[k].curve, dom.scene().tol);
    ASSERT_EQ(ends.size(), 2u);
    const double ratio = distance(ends[0].point, ends[1].point) / disk_radius(f.disks[k]);
    if (k == 0) ratio0 = ratio;
    EXPECT_NEAR(ratio / ratio0, 1, 1e-6);
  }
  EXPECT_TRUE(family_reeb_invariant(dom, poles, f));
  EXPECT_EQ(shrink_family_chord(dom, poles, pd0, 1).disks.size(), 1u);
}

TEST(Construct, ChordFamilyRejectsDoublePointBase) {
  Scene s{{circle("a", 0, 0, 1), circle("b", 1, 0, 1)}, {0.5, 0}, {}, {}};
  auto dom = select_region(s);
  auto poles = assemble_poles(dom, {});
  const Point2 x{0.5, std::sqrt(0.75)};
  PointedDisk pd0{circle("d", x.x, x.y, 0.1), x, x, {}};
  EXPECT_EQ(kind_of([&] { shrink_family_chord(dom, poles, pd0, 3); }), ErrorKind::HypothesisViolated);
}
