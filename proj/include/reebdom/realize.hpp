#pragma once

#include <string>
#include <vector>

#include "reebdom/classes.hpp"
#include "reebdom/reeb.hpp"

namespace reebdom {

struct GraphVertex {
  std::string id;
  Point2 pos;
};

// Straight segment unless `via` lists interior bend points (ordered from u to v).
struct GraphEdge {
  int u = -1;
  int v = -1;
  std::vector<Point2> via;
};

struct EmbeddedGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;

  int index_of(const std::string& id) const;
  int degree(int v) const;
  // Drawing of edge e from its lower-x end to its higher-x end.
  std::vector<Point2> polyline(int e) const;
  // Endpoint of edge e with the smaller (first) and larger (second) x.
  std::pair<int, int> oriented(int e) const;
};

// Empty when the drawing is admissible.
std::vector<std::string> validate_embedded_graph(const EmbeddedGraph& g);

// Vertices valued by x, edges oriented towards larger x.
PRDigraph graph_digraph(const EmbeddedGraph& g);

enum class EntryKind { Fold, Cap };

// side: -1 when the entry sits among edges leaving to the left, +1 to the right.
struct SchemeEntry {
  int vertex = -1;
  int side = 0;
  int index = 0;
  EntryKind kind = EntryKind::Fold;
  double offset = 0;
  double level = 0;
  Point2 point;  // the prescribed critical point of the tube
};

// Junction layout of one vertex: edges leaving on each side, bottom to top,
// and the levels at which their strips attach.
struct VertexLayout {
  std::vector<int> left, right;
  std::vector<double> left_levels, right_levels;
  double zone = 0;
  double top = 0;
  double bottom = 0;
};

struct EpsilonScheme {
  double eps0 = 0;
  double eps = 0;
  double eps_prime = 0;
  double width = 0;  // vertical half-width of the edge strips
  std::vector<double> a;
  std::vector<VertexLayout> layout;
  std::vector<SchemeEntry> entries;
};

// scale < 1 shrinks every constant (retry after a self-intersecting tube).
EpsilonScheme derive_scheme(const EmbeddedGraph& g, double scale = 1.0);
std::vector<std::string> scheme_violations(const EpsilonScheme& s);

struct TubeModel {
  std::vector<CurveObject> boundary;  // one closed chain per face of the drawing
  std::vector<int> registry_curve;    // per scheme entry, the chain carrying its point
  Point2 seed;
  double hausdorff = 0;
};

TubeModel build_tube(const EmbeddedGraph& g, const EpsilonScheme& s);

struct VertexEllipse {
  int entry = -1;
  PointedDisk disk;
  int doublings = 0;
};

// Fold ellipses first, then caps.
std::vector<VertexEllipse> place_vertex_ellipses(const TubeModel& t, const EpsilonScheme& s,
                                                 const TolerancePolicy& tol);

struct StepCheck {
  int entry = -1;
  int vertex = -1;
  ClassReport report;
  bool conforms = false;
};

struct Realization {
  EpsilonScheme scheme;
  TubeModel tube;
  std::vector<VertexEllipse> ellipses;
  Scene scene;
  RefinedDomain domain;
  PoleSet poles;
  PRDigraph raw;
  PRDigraph digraph;         // regular vertices contracted
  std::vector<int> mapping;  // graph vertex -> digraph vertex
  std::vector<StepCheck> steps;
  int retries = 0;
};

Realization realize(const EmbeddedGraph& g);

// Needs at least one ellipse already applied at the same vertex.
bool proposition1_check(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& next,
                        int prior_at_vertex, ClassReport* report = nullptr);

struct MergeReport {
  Realization result;
  PointedDisk merged;
  int doublings = 0;
  bool two_points_at_extremum = false;
  bool two_components = false;
  bool injective_arcs = false;
  bool not_ls = false;
  bool same_as_unmerged = false;
};

// Replaces the caps j and j+1 (ordered by level) of the degree-1 vertices
// sitting at the global extremum x of v0 by one ellipse.
MergeReport merge_extremal_pair(const EmbeddedGraph& g, int v0, int j);

}  // namespace reebdom
