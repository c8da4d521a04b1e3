#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "reebdom/poles.hpp"

namespace reebdom {

struct PRVertex {
  double value = 0;
  Point2 witness;
  std::vector<Point2> witnesses;
};

struct PRDigraph {
  std::vector<PRVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // tail, head
  Axis axis = Axis::X;

  int in_degree(int v) const;
  int out_degree(int v) const;
  std::map<std::pair<int, int>, int> edge_multiplicity() const;
};

PRDigraph poincare_reeb(const RefinedDomain& dom, const PoleSet& poles, Axis axis);

// Raster cross-check built only from implicit inside tests and a flood fill.
PRDigraph reference_reeb_grid(const RefinedDomain& dom, const PoleSet& poles, Axis axis,
                              int resolution);

enum class ValueMode { Plain, OrderCompatible, ValueExact };

// Vertex bijection g1 -> g2 preserving directed edges with multiplicity.
std::optional<std::vector<int>> digraph_isomorphic(const PRDigraph& g1, const PRDigraph& g2);
std::optional<std::vector<int>> vdigraph_isomorphic(const PRDigraph& g1, const PRDigraph& g2,
                                                    ValueMode mode, double eps_value = 1e-9);

// Drops vertices with in = out = 1 that are not listed in keep, joining their edges.
PRDigraph contract_regular(const PRDigraph& g, const std::vector<int>& keep = {});

}  // namespace reebdom
