#include <gtest/gtest.h>

#include <chrono>
#include <functional>
#include <random>

#include "reebdom/realize.hpp"

using namespace reebdom;

namespace {

EmbeddedGraph make(std::vector<GraphVertex> vs, std::vector<GraphEdge> es) { return {std::move(vs), std::move(es)}; }

EmbeddedGraph segment() { return make({{"a", {0, 0}}, {"b", {1, 0}}}, {{0, 1, {}}}); }

EmbeddedGraph y_graph() {
  return make({{"c", {0, 0}}, {"l1", {-1, 0.5}}, {"l2", {-1, -0.5}}, {"r", {1, 0}}},
              {{0, 1, {}}, {0, 2, {}}, {0, 3, {}}});
}

EmbeddedGraph theta() {
  return make({{"L", {-1, 0}}, {"u", {0, 0}}, {"w", {2, 0.1}}, {"R", {3, 0.1}}},
              {{0, 1, {}}, {1, 2, {{1, 0.8}}}, {1, 2, {}}, {1, 2, {{1, -0.7}}}, {2, 3, {}}});
}

EmbeddedGraph h_graph() {
  return make({{"u", {1, 0}}, {"w", {2, 0.05}}, {"a", {0, 1}}, {"b", {0.1, -1}}, {"c", {3, 1}}, {"d", {2.9, -1}}},
              {{0, 1, {}}, {2, 0, {}}, {3, 0, {}}, {1, 4, {}}, {1, 5, {}}});
}

EmbeddedGraph skewed_star() {
  return make({{"c", {0, 0}}, {"p", {-1.3, 0.4}}, {"q", {0.6, 1.1}}, {"r", {1.7, -0.6}}},
              {{0, 1, {}}, {0, 2, {}}, {0, 3, {}}});
}

EmbeddedGraph twin_min() {
  return make({{"a", {0, 0.4}}, {"b", {0, -0.4}}, {"c", {1, 0}}, {"d", {2, 0.1}}},
              {{0, 2, {}}, {1, 2, {}}, {2, 3, {}}});
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::CheckFailed;
}

bool has(const std::vector<std::string>& diag, const std::string& needle) {
  for (const auto& d : diag)
    if (d.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Validate, Corpus) {
  for (const auto& g : {segment(), y_graph(), theta(), h_graph(), skewed_star(), twin_min()})
    EXPECT_TRUE(validate_embedded_graph(g).empty());
}

TEST(Validate, Violations) {
  auto path = make({{"a", {0, 0}}, {"b", {1, 0.2}}, {"c", {2, 0}}}, {{0, 1, {}}, {1, 2, {}}});
  EXPECT_TRUE(has(validate_embedded_graph(path), "degree 2"));
  auto vertical = make({{"a", {0, 0}}, {"b", {0, 1}}}, {{0, 1, {}}});
  EXPECT_TRUE(has(validate_embedded_graph(vertical), "not x-injective"));
  auto fork = make({{"c", {0, 0}}, {"a", {1, 1}}, {"b", {1, -1}}, {"d", {2, 0}}}, {{0, 1, {}}, {0, 2, {}}, {0, 3, {}}});
  EXPECT_TRUE(has(validate_embedded_graph(fork), "local extremum"));
  auto crossing = make({{"a", {0, 0}}, {"b", {2, 2}}, {"c", {0, 2}}, {"d", {2, 0}}}, {{0, 1, {}}, {2, 3, {}}});
  EXPECT_TRUE(has(validate_embedded_graph(crossing), "cross"));
}

TEST(Scheme, InvariantsHold) {
  for (const auto& g : {segment(), y_graph(), theta(), h_graph(), skewed_star(), twin_min()}) {
    const auto s = derive_scheme(g);
    EXPECT_TRUE(scheme_violations(s).empty());
    EXPECT_NEAR(s.eps, 4 * s.eps0, 1e-15);
    EXPECT_NEAR(s.eps_prime, 2 * s.eps0, 1e-15);
  }
  const auto y = derive_scheme(y_graph());
  EXPECT_EQ(y.layout[0].left.size(), 2u);
  EXPECT_EQ(y.layout[0].right.size(), 1u);
  const auto seg = derive_scheme(segment());
  for (const auto& e : seg.entries) EXPECT_EQ(e.kind, EntryKind::Cap);
  EXPECT_EQ(kind_of([&] { derive_scheme(make({{"a", {0, 0}}, {"b", {1, 0}}}, {})); }), ErrorKind::DegenerateGeometry);
}

TEST(Tube, RegistryMatchesFolds) {
  const auto g = y_graph();
  const auto s = derive_scheme(g);
  const auto t = build_tube(g, s);
  ASSERT_EQ(t.boundary.size(), 1u);
  // 3 caps and one fold at the centre.
  EXPECT_EQ(s.entries.size(), 4u);
  EXPECT_EQ(std::get<ArcChain>(t.boundary[0].shape).critical_points(Axis::X).size(), s.entries.size());
  EXPECT_LT(t.hausdorff, s.eps0);
}

TEST(Tube, SegmentIsOneEdge) {
  const auto g = segment();
  const auto s = derive_scheme(g);
  const auto t = build_tube(g, s);
  EXPECT_EQ(std::get<ArcChain>(t.boundary[0].shape).critical_points(Axis::X).size(), 2u);
  Scene sc{t.boundary, t.seed, {}, {}};
  const auto dom = select_region(sc);
  const auto d = poincare_reeb(dom, assemble_poles(dom, {}), Axis::X);
  EXPECT_EQ(d.vertices.size(), 2u);
  EXPECT_EQ(d.edges.size(), 1u);
}

TEST(Tube, ThetaHasThreeBoundaryCurves) {
  const auto g = theta();
  const auto t = build_tube(g, derive_scheme(g));
  EXPECT_EQ(t.boundary.size(), 3u);
}

TEST(Tube, OversizedSchemeSelfIntersects) {
  auto sharp = make({{"c", {0, 0}}, {"a", {-1, 0.02}}, {"b", {-1, -0.02}}, {"r", {1, 0}}},
                    {{0, 1, {}}, {0, 2, {}}, {0, 3, {}}});
  EXPECT_EQ(kind_of([&] { build_tube(sharp, derive_scheme(sharp, 40.0)); }), ErrorKind::TubeSelfIntersection);
  EXPECT_NO_THROW(build_tube(sharp, derive_scheme(sharp)));
}

TEST(Ellipses, PairwiseDisjoint) {
  const auto g = y_graph();
  const auto s = derive_scheme(g);
  const auto t = build_tube(g, s);
  const auto es = place_vertex_ellipses(t, s, {});
  EXPECT_EQ(es.size(), s.entries.size());
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t k = i + 1; k < es.size(); ++k)
      EXPECT_TRUE(intersect_curves(es[i].disk.curve, es[k].disk.curve, {}).empty());
}

TEST(Realize, Corpus) {
  for (const auto& g : {segment(), y_graph(), theta(), h_graph(), skewed_star()}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Realization r = realize(g);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(secs, 30.0);
    EXPECT_EQ(r.digraph.vertices.size(), g.vertices.size());
    EXPECT_EQ(r.digraph.edges.size(), g.edges.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      EXPECT_NEAR(r.digraph.vertices[r.mapping[v]].value, g.vertices[v].pos.x, 1e-6);
  }
}

TEST(Realize, ThetaHasParallelEdges) {
  const Realization r = realize(theta());
  const auto mult = r.digraph.edge_multiplicity();
  int triple = 0;
  for (const auto& [e, m] : mult) triple += m == 3;
  EXPECT_EQ(triple, 1);
}

TEST(Realize, RejectsInvalidGraph) {
  auto path = make({{"a", {0, 0}}, {"b", {1, 0.2}}, {"c", {2, 0}}}, {{0, 1, {}}, {1, 2, {}}});
  EXPECT_EQ(kind_of([&] { realize(path); }), ErrorKind::InvalidInput);
}

TEST(Proposition1, ThetaSteps) {
  const Realization r = realize(theta());
  EXPECT_EQ(r.steps.size(), 2u);
  for (const auto& s : r.steps) EXPECT_TRUE(s.conforms);
}

TEST(Proposition1, FirstEllipseViolatesHypothesis) {
  const auto g = y_graph();
  const auto s = derive_scheme(g);
  const auto t = build_tube(g, s);
  const Scene sc{t.boundary, t.seed, {}, {}};
  const auto es = place_vertex_ellipses(t, s, sc.tol);
  const auto dom = select_region(sc);
  EXPECT_EQ(kind_of([&] { proposition1_check(dom, assemble_poles(dom, {}), es[0].disk, 0); }),
            ErrorKind::HypothesisViolated);
}

TEST(Proposition1, RandomStars) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  int graphs = 0, steps = 0;
  for (int trial = 0; trial < 12; ++trial) {
    EmbeddedGraph g;
    g.vertices.push_back({"c", {0, 0}});
    const int nl = 1 + trial % 3, nr = 2 + (trial / 3) % 2;
    for (int side : {-1, 1}) {
      const int cnt = side < 0 ? nl : nr;
      for (int k = 0; k < cnt; ++k) {
        const double y = -1 + 2 * (k + 0.2 + 0.6 * U(rng)) / cnt;
        const double x = side * (0.6 + U(rng));
        g.vertices.push_back({"v" + std::to_string(g.vertices.size()), {x, y}});
        g.edges.push_back({0, static_cast<int>(g.vertices.size()) - 1, {}});
      }
    }
    if (!validate_embedded_graph(g).empty()) continue;
    const Realization r = realize(g);
    ++graphs;
    for (const auto& s : r.steps) {
      ++steps;
      EXPECT_TRUE(s.conforms) << "trial " << trial;
    }
  }
  EXPECT_GE(graphs, 10);
  EXPECT_GT(steps, 0);
}

TEST(Merge, TwinMinimum) {
  const auto g = twin_min();
  const MergeReport m = merge_extremal_pair(g, 0, 0);
  EXPECT_TRUE(m.two_points_at_extremum);
  EXPECT_TRUE(m.two_components);
  EXPECT_TRUE(m.injective_arcs);
  EXPECT_TRUE(m.not_ls);
  EXPECT_TRUE(m.same_as_unmerged);
  EXPECT_EQ(kind_of([&] { merge_extremal_pair(g, 2, 0); }), ErrorKind::NotExtremalVertex);
  EXPECT_EQ(kind_of([&] { merge_extremal_pair(y_graph(), 3, 0); }), ErrorKind::NotExtremalVertex);
}
