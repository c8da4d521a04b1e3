#include "reebdom/realize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <tuple>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace reebdom {

namespace {

constexpr double kHugeSlope = 1e300;

bool closed_segments_meet(Point2 a, Point2 b, Point2 c, Point2 d) {
  auto orient = [](Point2 p, Point2 q, Point2 r) {
    const double v = cross(q - p, r - p);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  auto on = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) ||
         (o4 == 0 && on(c, d, b));
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
  return distance(a + t * d, p);
}

// Direction of edge e as it leaves vertex v.
Point2 leaving_direction(const EmbeddedGraph& g, int e, int v) {
  const auto pl = g.polyline(e);
  return g.oriented(e).first == v ? pl[1] - pl[0] : pl[pl.size() - 2] - pl.back();
}

double minimum_feature(const EmbeddedGraph& g) {
  double f = kHugeSlope;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const auto pl = g.polyline(e);
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
      f = std::min(f, distance(pl[i], pl[i + 1]));
      f = std::min(f, std::abs(pl[i + 1].x - pl[i].x));
    }
  }
  for (std::size_t a = 0; a < g.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < g.vertices.size(); ++b) {
      const double dx = std::abs(g.vertices[a].pos.x - g.vertices[b].pos.x);
      if (dx > 0) f = std::min(f, dx);
    }
  return f == kHugeSlope ? 0 : f;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

std::string describe(const PRDigraph& d) {
  std::ostringstream os;
  os << "[";
  for (std::size_t v = 0; v < d.vertices.size(); ++v) os << (v ? " " : "") << d.vertices[v].value;
  os << " |";
  for (auto [a, b] : d.edges) os << " " << a << ">" << b;
  os << "]";
  return os.str();
}

// Closed polygons assembled from shared node ids.
struct Polygons {
  std::vector<Point2> pts;
  std::vector<std::vector<int>> adj;

  int node(Point2 p) {
    pts.push_back(p);
    adj.emplace_back();
    return static_cast<int>(pts.size()) - 1;
  }
  void link(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<int>> cycles() const {
    std::vector<char> seen(pts.size(), 0);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < static_cast<int>(pts.size()); ++s) {
      if (seen[s]) continue;
      if (adj[s].size() != 2) throw Error(ErrorKind::NumericalFailure, "tube outline is not a union of cycles", pts[s]);
      std::vector<int> cyc{s};
      seen[s] = 1;
      int prev = s, cur = adj[s][0];
      while (cur != s) {
        if (adj[cur].size() != 2) throw Error(ErrorKind::NumericalFailure, "tube outline is not a union of cycles", pts[cur]);
        seen[cur] = 1;
        cyc.push_back(cur);
        const int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
      }
      out.push_back(cyc);
    }
    return out;
  }
};

struct Prepared {
  EpsilonScheme scheme;
  TubeModel tube;
  Scene scene;
  std::vector<VertexEllipse> ellipses;
  int retries = 0;
};

Prepared prepare(const EmbeddedGraph& g) {
  const auto diag = validate_embedded_graph(g);
  if (!diag.empty()) throw Error(ErrorKind::InvalidInput, "graph rejected: " + join(diag));
  Prepared p;
  for (int attempt = 0;; ++attempt) {
    try {
      p.scheme = derive_scheme(g, std::ldexp(1.0, -attempt));
      p.tube = build_tube(g, p.scheme);
      p.retries = attempt;
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TubeSelfIntersection || attempt == 3) throw;
    }
  }
  p.scene.curves = p.tube.boundary;
  p.scene.seed = p.tube.seed;
  p.scene.tol = TolerancePolicy::for_diameter(p.scene.bounds().diameter());
  p.ellipses = place_vertex_ellipses(p.tube, p.scheme, p.scene.tol);
  return p;
}

std::vector<int> match_graph(const EmbeddedGraph& g, const PRDigraph& d, double eps) {
  const auto m = vdigraph_isomorphic(graph_digraph(g), d, ValueMode::ValueExact, eps);
  if (!m)
    throw Error(ErrorKind::RealizationMismatch,
                "realized digraph " + describe(d) + " differs from the graph " + describe(graph_digraph(g)));
  return *m;
}

void finish(const EmbeddedGraph& g, Realization& r) {
  r.scene = r.domain.scene();
  r.raw = poincare_reeb(r.domain, r.poles, Axis::X);
  r.digraph = contract_regular(r.raw);
  r.mapping = match_graph(g, r.digraph, r.scene.tol.slack());
}

}  // namespace

// --- graph ------------------------------------------------------------------

int EmbeddedGraph::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  return -1;
}

int EmbeddedGraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges) d += (e.u == v) + (e.v == v);
  return d;
}

std::pair<int, int> EmbeddedGraph::oriented(int e) const {
  const auto& ed = edges[e];
  return vertices[ed.u].pos.x <= vertices[ed.v].pos.x ? std::pair{ed.u, ed.v} : std::pair{ed.v, ed.u};
}

std::vector<Point2> EmbeddedGraph::polyline(int e) const {
  const auto& ed = edges[e];
  std::vector<Point2> pl{vertices[ed.u].pos};
  pl.insert(pl.end(), ed.via.begin(), ed.via.end());
  pl.push_back(vertices[ed.v].pos);
  if (oriented(e).first != ed.u) std::reverse(pl.begin(), pl.end());
  return pl;
}

std::vector<std::string> validate_embedded_graph(const EmbeddedGraph& g) {
  std::vector<std::string> out;
  const int n = static_cast<int>(g.vertices.size());
  if (n == 0) return {"graph has no vertices"};
  std::set<std::string> ids;
  for (const auto& v : g.vertices)
    if (!ids.insert(v.id).second) out.push_back("duplicate vertex id " + v.id);
  bool edges_ok = true;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (ed.u < 0 || ed.v < 0 || ed.u >= n || ed.v >= n) {
      out.push_back("edge " + std::to_string(e) + " has an unknown endpoint");
      edges_ok = false;
      continue;
    }
    if (ed.u == ed.v) {
      out.push_back("loop at " + g.vertices[ed.u].id);
      edges_ok = false;
      continue;
    }
    std::vector<Point2> pl{g.vertices[ed.u].pos};
    pl.insert(pl.end(), ed.via.begin(), ed.via.end());
    pl.push_back(g.vertices[ed.v].pos);
    const double dir = pl.back().x - pl.front().x;
    bool mono = dir != 0;
    for (std::size_t i = 0; mono && i + 1 < pl.size(); ++i) mono = (pl[i + 1].x - pl[i].x) * dir > 0;
    if (!mono) {
      out.push_back("edge " + g.vertices[ed.u].id + "-" + g.vertices[ed.v].id + " not x-injective");
      edges_ok = false;
    }
  }
  if (!edges_ok) return out;
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    const auto& id = g.vertices[v].id;
    if (d == 0) out.push_back("isolated vertex " + id);
    if (d == 2) out.push_back("degree 2 at " + id);
    if (d >= 3) {
      int left = 0, right = 0;
      for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (g.edges[e].u != v && g.edges[e].v != v) continue;
        (leaving_direction(g, e, v).x > 0 ? right : left)++;
      }
      if (left == 0 || right == 0) out.push_back("local extremum at degree-" + std::to_string(d) + " vertex " + id);
    }
  }
  // Crossings between different edges away from shared vertices.
  const int m = static_cast<int>(g.edges.size());
  for (int e = 0; e < m; ++e) {
    const auto pe = g.polyline(e);
    for (int f = e + 1; f < m; ++f) {
      const auto pf = g.polyline(f);
      bool bad = false;
      for (std::size_t i = 0; !bad && i + 1 < pe.size(); ++i)
        for (std::size_t k = 0; !bad && k + 1 < pf.size(); ++k) {
          const Point2 a = pe[i], b = pe[i + 1], c = pf[k], d = pf[k + 1];
          if (!closed_segments_meet(a, b, c, d)) continue;
          Point2 shared;
          bool share = false;
          for (Point2 p : {a, b})
            for (Point2 q : {c, d})
              if (p == q) share = true, shared = p;
          const bool is_vertex = std::any_of(g.vertices.begin(), g.vertices.end(),
                                             [&](const GraphVertex& gv) { return gv.pos == shared; });
          if (!share || !is_vertex) {
            bad = true;
            break;
          }
          const Point2 u = (a == shared ? b : a) - shared, w = (c == shared ? d : c) - shared;
          if (cross(u, w) == 0 && dot(u, w) > 0) bad = true;
        }
      if (bad)
        out.push_back("edges " + g.vertices[g.edges[e].u].id + "-" + g.vertices[g.edges[e].v].id + " and " +
                      g.vertices[g.edges[f].u].id + "-" + g.vertices[g.edges[f].v].id + " cross");
    }
  }
  for (int v = 0; v < n; ++v)
    for (int e = 0; e < m; ++e) {
      if (g.edges[e].u == v || g.edges[e].v == v) continue;
      const auto pl = g.polyline(e);
      for (std::size_t i = 0; i + 1 < pl.size(); ++i)
        if (point_segment_distance(g.vertices[v].pos, pl[i], pl[i + 1]) == 0) {
          out.push_back("vertex " + g.vertices[v].id + " lies on an edge");
          break;
        }
    }
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int a) { return comp[a] == a ? a : comp[a] = find(comp[a]); };
  for (const auto& ed : g.edges) comp[find(ed.u)] = find(ed.v);
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0)) {
      out.push_back("graph is disconnected");
      break;
    }
  return out;
}

PRDigraph graph_digraph(const EmbeddedGraph& g) {
  PRDigraph d;
  for (const auto& v : g.vertices) d.vertices.push_back({v.pos.x, v.pos, {v.pos}});
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) d.edges.push_back(g.oriented(e));
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

// --- scheme -----------------------------------------------------------------

EpsilonScheme derive_scheme(const EmbeddedGraph& g, double scale) {
  const double feature = minimum_feature(g);
  if (!(feature > 0)) throw Error(ErrorKind::DegenerateGeometry, "minimum feature size is zero");
  EpsilonScheme s;
  s.eps0 = 0.05 * feature * scale;
  s.eps = 4 * s.eps0;
  s.eps_prime = 2 * s.eps0;
  const int n = static_cast<int>(g.vertices.size());
  s.layout.resize(n);
  int max_degree = 1;
  double min_zone = kHugeSlope;
  for (int v = 0; v < n; ++v) {
    auto& L = s.layout[v];
    double steep = 0;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      if (g.edges[e].u != v && g.edges[e].v != v) continue;
      const Point2 d = leaving_direction(g, e, v);
      steep = std::max(steep, std::abs(d.y / d.x));
      (d.x > 0 ? L.right : L.left).push_back(e);
    }
    auto by_height = [&](int e1, int e2) {
      const Point2 d1 = leaving_direction(g, e1, v), d2 = leaving_direction(g, e2, v);
      return d1.y / std::abs(d1.x) < d2.y / std::abs(d2.x);
    };
    std::sort(L.left.begin(), L.left.end(), by_height);
    std::sort(L.right.begin(), L.right.end(), by_height);
    L.zone = 0.5 * s.eps0 / std::sqrt(1 + steep * steep);
    min_zone = std::min(min_zone, L.zone);
    max_degree = std::max(max_degree, g.degree(v));
  }
  const double w = min_zone / (4 * max_degree + 8);
  s.width = w;
  for (int v = 0; v < n; ++v) s.a.push_back(g.vertices[v].pos.y + 0.5 * w * (v + 1) / (n + 1));

  // Teeth: left strips attach below a_v, right strips above it.
  for (int v = 0; v < n; ++v) {
    auto& L = s.layout[v];
    const int nl = static_cast<int>(L.left.size()), nr = static_cast<int>(L.right.size());
    if (nl + nr == 0) throw Error(ErrorKind::DegenerateGeometry, "isolated vertex", g.vertices[v].pos);
    if (nl + nr == 1) {
      (nl ? L.left_levels : L.right_levels).push_back(s.a[v]);
      L.top = s.a[v] + w;
      L.bottom = s.a[v] - w;
      continue;
    }
    for (int k = 0; k < nl; ++k) L.left_levels.push_back(s.a[v] + 4 * w * (k - nl) + 2 * w);
    for (int k = 0; k < nr; ++k) L.right_levels.push_back(s.a[v] + 4 * w * k + 2 * w);
    L.top = std::max(L.left_levels.back(), L.right_levels.back()) + 3 * w;
    L.bottom = std::min(L.left_levels.front(), L.right_levels.front()) - 3 * w;
  }

  // Folds between neighbouring strips of a side.
  for (int v = 0; v < n; ++v) {
    const auto& L = s.layout[v];
    const double x = g.vertices[v].pos.x;
    if (L.left.size() + L.right.size() < 3) continue;
    const int total = static_cast<int>(L.left.size() + L.right.size()) - 2;
    int slot = 0;
    for (int side : {-1, 1}) {
      const auto& lv = side < 0 ? L.left_levels : L.right_levels;
      for (int k = 0; k + 1 < static_cast<int>(lv.size()); ++k, ++slot) {
        SchemeEntry en;
        en.vertex = v;
        en.side = side;
        en.index = k;
        en.kind = EntryKind::Fold;
        en.offset = L.zone * (slot + 1) / (total + 2);
        en.level = 0.5 * (lv[k] + lv[k + 1]);
        en.point = {x + side * en.offset, en.level};
        s.entries.push_back(en);
      }
    }
  }

  // Caps; leaves sharing an abscissa and a side get distinct offsets.
  std::map<std::pair<double, int>, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) {
    const auto& L = s.layout[v];
    if (L.left.size() + L.right.size() != 1) continue;
    groups[{g.vertices[v].pos.x, L.right.empty() ? -1 : 1}].push_back(v);
  }
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(), [&](int a, int b) { return s.a[a] < s.a[b]; });
    const int total = static_cast<int>(members.size());
    for (int k = 0; k < total; ++k) {
      const int v = members[k];
      SchemeEntry en;
      en.vertex = v;
      en.side = key.second;
      en.index = 0;
      en.kind = EntryKind::Cap;
      en.offset = s.layout[v].zone * (k + 1) / (total + 2);
      en.level = s.a[v];
      en.point = {key.first - en.side * en.offset, en.level};
      s.entries.push_back(en);
    }
  }
  return s;
}

std::vector<std::string> scheme_violations(const EpsilonScheme& s) {
  std::vector<std::string> out;
  if (!(s.eps_prime < s.eps)) out.push_back("eps_prime >= eps");
  std::map<int, std::vector<const SchemeEntry*>> per_vertex;
  for (const auto& e : s.entries) {
    per_vertex[e.vertex].push_back(&e);
    if (!(e.offset > 0 && e.offset < s.eps_prime))
      out.push_back("offset out of range at vertex " + std::to_string(e.vertex));
    if (!(std::abs(e.level - s.a[e.vertex]) < s.eps_prime))
      out.push_back("level too far from a_v at vertex " + std::to_string(e.vertex));
  }
  for (const auto& [v, es] : per_vertex) {
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t k = i + 1; k < es.size(); ++k) {
        if (es[i]->offset == es[k]->offset) out.push_back("equal offsets at vertex " + std::to_string(v));
        if (es[i]->side == es[k]->side && es[i]->index < es[k]->index && !(es[i]->level < es[k]->level))
          out.push_back("levels not increasing at vertex " + std::to_string(v));
        const SchemeEntry* lo = es[i]->side < 0 ? es[i] : es[k];
        const SchemeEntry* hi = es[i]->side < 0 ? es[k] : es[i];
        if (lo->side < 0 && hi->side > 0 && !(lo->level < hi->level))
          out.push_back("left level above right level at vertex " + std::to_string(v));
      }
  }
  for (std::size_t a = 0; a < s.a.size(); ++a)
    for (std::size_t b = a + 1; b < s.a.size(); ++b)
      if (s.a[a] == s.a[b]) out.push_back("equal a_v at vertices " + std::to_string(a) + " and " + std::to_string(b));
  return out;
}

// --- tube -------------------------------------------------------------------

TubeModel build_tube(const EmbeddedGraph& g, const EpsilonScheme& s) {
  const int n = static_cast<int>(g.vertices.size());
  const double w = s.width;
  Polygons poly;
  struct Teeth {
    std::vector<int> lt, lb, rt, rb;
  };
  std::vector<Teeth> teeth(n);
  for (int v = 0; v < n; ++v) {
    const auto& L = s.layout[v];
    const double x = g.vertices[v].pos.x;
    for (double y : L.left_levels) {
      teeth[v].lt.push_back(poly.node({x - L.zone, y + w}));
      teeth[v].lb.push_back(poly.node({x - L.zone, y - w}));
    }
    for (double y : L.right_levels) {
      teeth[v].rt.push_back(poly.node({x + L.zone, y + w}));
      teeth[v].rb.push_back(poly.node({x + L.zone, y - w}));
    }
    if (L.left.size() + L.right.size() >= 3) {
      const int top = poly.node({x, L.top}), bottom = poly.node({x, L.bottom});
      poly.link(teeth[v].lt.back(), top);
      poly.link(top, teeth[v].rt.back());
      poly.link(teeth[v].lb.front(), bottom);
      poly.link(bottom, teeth[v].rb.front());
    }
  }
  std::vector<int> tip(s.entries.size());
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& en = s.entries[i];
    const auto& T = teeth[en.vertex];
    tip[i] = poly.node(en.point);
    const auto& upper = en.side < 0 ? T.lt : T.rt;
    const auto& lower = en.side < 0 ? T.lb : T.rb;
    if (en.kind == EntryKind::Fold) {
      poly.link(upper[en.index], tip[i]);
      poly.link(tip[i], lower[en.index + 1]);
    } else {
      poly.link(upper[0], tip[i]);
      poly.link(tip[i], lower[0]);
    }
  }
  Point2 seed;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const auto [u, v] = g.oriented(e);
    const auto& Lu = s.layout[u];
    const auto& Lv = s.layout[v];
    const int ku = static_cast<int>(std::find(Lu.right.begin(), Lu.right.end(), e) - Lu.right.begin());
    const int kv = static_cast<int>(std::find(Lv.left.begin(), Lv.left.end(), e) - Lv.left.begin());
    const auto pl = g.polyline(e);
    std::vector<Point2> centre{{g.vertices[u].pos.x + Lu.zone, Lu.right_levels[ku]}};
    centre.insert(centre.end(), pl.begin() + 1, pl.end() - 1);
    centre.push_back({g.vertices[v].pos.x - Lv.zone, Lv.left_levels[kv]});
    if (e == 0) seed = 0.5 * (centre[0] + centre[1]);
    for (int sign : {1, -1}) {
      int prev = sign > 0 ? teeth[u].rt[ku] : teeth[u].rb[ku];
      for (std::size_t i = 1; i + 1 < centre.size(); ++i) {
        const int nd = poly.node(centre[i] + Point2{0, sign * w});
        poly.link(prev, nd);
        prev = nd;
      }
      poly.link(prev, sign > 0 ? teeth[v].lt[kv] : teeth[v].lb[kv]);
    }
  }

  const auto cycles = poly.cycles();
  // Exact crossing test on the outline segments.
  std::vector<std::array<int, 2>> segs;
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) segs.push_back({c[i], c[(i + 1) % c.size()]});
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t k = i + 1; k < segs.size(); ++k) {
      const auto [a, b] = segs[i];
      const auto [c, d] = segs[k];
      if (a == c || a == d || b == c || b == d) continue;
      if (closed_segments_meet(poly.pts[a], poly.pts[b], poly.pts[c], poly.pts[d]))
        throw Error(ErrorKind::TubeSelfIntersection, "tube outline crosses itself", poly.pts[a]);
    }

  Box box{seed.x, seed.y, seed.x, seed.y};
  for (const auto& p : poly.pts) box = merge(box, Box{p.x, p.y, p.x, p.y});
  const double tol = 1e-9 * box.diameter();
  TubeModel t;
  t.seed = seed;
  t.registry_curve.assign(s.entries.size(), -1);
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    const auto& c = cycles[ci];
    std::vector<MonotoneArc> arcs;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Point2 p = poly.pts[c[i]], q = poly.pts[c[(i + 1) % c.size()]];
      if (std::abs(q.x - p.x) <= tol || std::abs(q.y - p.y) <= tol)
        throw Error(ErrorKind::DegenerateGeometry, "axis-parallel piece in the tube outline", p);
      arcs.push_back(MonotoneArc::segment(p, q));
    }
    std::vector<CriticalPoint> declared;
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
      if (std::find(c.begin(), c.end(), tip[i]) == c.end()) continue;
      t.registry_curve[i] = static_cast<int>(ci);
      declared.push_back({s.entries[i].point, Axis::X, s.entries[i].side > 0 ? ExtremumKind::Min : ExtremumKind::Max});
    }
    const ArcChain probe(arcs, {}, tol);
    const auto ys = probe.critical_points(Axis::Y);
    declared.insert(declared.end(), ys.begin(), ys.end());
    try {
      t.boundary.push_back({"tube" + std::to_string(ci), ArcChain(arcs, declared, tol)});
    } catch (const Error& e) {
      throw Error(ErrorKind::NumericalFailure, std::string("tube folds differ from the registry: ") + e.what());
    }
  }

  // Hausdorff distance between outline and drawing.
  std::vector<std::array<Point2, 2>> drawing;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const auto pl = g.polyline(e);
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) drawing.push_back({pl[i], pl[i + 1]});
  }
  auto to_drawing = [&](Point2 p) {
    double d = kHugeSlope;
    for (const auto& sg : drawing) d = std::min(d, point_segment_distance(p, sg[0], sg[1]));
    return d;
  };
  auto to_outline = [&](Point2 p) {
    double d = kHugeSlope;
    for (const auto& [a, b] : segs) d = std::min(d, point_segment_distance(p, poly.pts[a], poly.pts[b]));
    return d;
  };
  for (const auto& [a, b] : segs)
    for (int k = 0; k <= 4; ++k)
      t.hausdorff = std::max(t.hausdorff, to_drawing(poly.pts[a] + (k / 4.0) * (poly.pts[b] - poly.pts[a])));
  for (const auto& sg : drawing)
    for (int k = 0; k <= 32; ++k)
      t.hausdorff = std::max(t.hausdorff, to_outline(sg[0] + (k / 32.0) * (sg[1] - sg[0])));
  return t;
}

// --- ellipses ---------------------------------------------------------------

std::vector<VertexEllipse> place_vertex_ellipses(const TubeModel& t, const EpsilonScheme& s,
                                                 const TolerancePolicy& tol) {
  std::vector<VertexEllipse> out;
  auto disjoint = [&](const CurveObject& c, std::string& clash) {
    for (const auto& o : out) {
      const auto& e1 = std::get<Ellipse>(c.shape);
      const auto& e2 = std::get<Ellipse>(o.disk.curve.shape);
      if (!intersect_curves(c, o.disk.curve, tol).empty() ||
          point_in_interior(c, e2.center, tol) != Containment::Outside ||
          point_in_interior(o.disk.curve, e1.center, tol) != Containment::Outside) {
        clash = o.disk.curve.id;
        return false;
      }
    }
    return true;
  };
  auto tube_hits = [&](const CurveObject& c) {
    std::vector<Intersection> hits;
    for (const auto& b : t.boundary) {
      auto h = intersect_curves(c, b, tol);
      hits.insert(hits.end(), h.begin(), h.end());
    }
    return hits;
  };
  for (EntryKind kind : {EntryKind::Fold, EntryKind::Cap}) {
    for (int i = 0; i < static_cast<int>(s.entries.size()); ++i) {
      const auto& en = s.entries[i];
      if (en.kind != kind) continue;
      const std::string id = "e" + std::to_string(i);
      std::string clash;
      if (kind == EntryKind::Fold) {
        // left end on the vertex abscissa, far end inside the junction zone
        const double A = std::min(en.offset, 0.25 * (en.offset + s.layout[en.vertex].zone));
        const Point2 centre{en.point.x + en.side * (A - en.offset), en.point.y};
        double h = std::min(s.width, 0.5 * A);
        bool placed = false;
        for (int step = 0; step < 40 && !placed; ++step, h /= std::sqrt(2.0)) {
          CurveObject c{id, Ellipse::standard(centre, A, h)};
          const auto hits = tube_hits(c);
          const bool local = hits.size() == 2 && std::all_of(hits.begin(), hits.end(), [&](const Intersection& x) {
                               return x.transversal && distance(x.point, en.point) <= 3 * en.offset;
                             });
          if (!local || !disjoint(c, clash)) continue;
          const Point2 inner = en.point - Point2{0.5 * en.side * en.offset, 0};
          out.push_back({i, {c, inner, en.point, {}}, step});
          placed = true;
        }
        if (!placed)
          throw Error(ErrorKind::PlacementCollision,
                      "no admissible ellipse for registry entry " + id + (clash.empty() ? "" : " (collides with " + clash + ")"),
                      en.point);
        continue;
      }
      // Cap: the boundary enters the cap at abscissa x_v on its upper side and
      // leaves through the lower side beyond x_v.
      const auto& L = s.layout[en.vertex];
      const double xv = en.point.x + en.side * en.offset;
      const double rise = s.width * en.offset / (L.zone + en.offset);
      const double H = 2 * rise;
      const double cy = en.level - rise - H;
      const double A = 2 * en.offset, B = 3 * H;
      const double cx = xv - en.side * A * std::sqrt(5.0) / 3;
      CurveObject c{id, Ellipse::standard({cx, cy}, A, B)};
      const auto hits = tube_hits(c);
      int at_vertex = 0, beyond = 0;
      for (const auto& x : hits) {
        if (std::abs(x.point.x - xv) <= 1e-6 * en.offset) ++at_vertex;
        else if (en.side * (x.point.x - xv) > 0) ++beyond;
      }
      if (hits.size() != 2 || at_vertex != 1 || beyond != 1 || !disjoint(c, clash))
        throw Error(ErrorKind::PlacementCollision,
                    "cap ellipse " + id + " is not admissible" + (clash.empty() ? "" : " (collides with " + clash + ")"),
                    en.point);
      out.push_back({i, {c, {cx, cy}, en.point, {}}, 0});
    }
  }
  return out;
}

// --- realization ------------------------------------------------------------

bool proposition1_check(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& next,
                        int prior_at_vertex, ClassReport* report) {
  if (prior_at_vertex < 1)
    throw Error(ErrorKind::HypothesisViolated, "no ellipse applied at this vertex yet", next.basepoint);
  const ClassReport r = classify(dom, poles, next);
  if (report) *report = r;
  return r.connected && r.pls && !r.ps;
}

Realization realize(const EmbeddedGraph& g) {
  Prepared p = prepare(g);
  Realization r;
  r.scheme = p.scheme;
  r.tube = p.tube;
  r.ellipses = p.ellipses;
  r.retries = p.retries;
  r.domain = select_region(p.scene);
  r.poles = assemble_poles(r.domain, {});
  std::vector<int> applied(g.vertices.size(), 0);
  for (const auto& ve : r.ellipses) {
    const auto& en = r.scheme.entries[ve.entry];
    if (applied[en.vertex] > 0) {
      StepCheck sc;
      sc.entry = ve.entry;
      sc.vertex = en.vertex;
      sc.conforms = proposition1_check(r.domain, r.poles, ve.disk, applied[en.vertex], &sc.report);
      r.steps.push_back(sc);
    }
    std::tie(r.domain, r.poles) = apply_addition(r.domain, r.poles, ve.disk);
    ++applied[en.vertex];
  }
  finish(g, r);
  return r;
}

MergeReport merge_extremal_pair(const EmbeddedGraph& g, int v0, int j) {
  const int n = static_cast<int>(g.vertices.size());
  if (v0 < 0 || v0 >= n) throw Error(ErrorKind::InvalidInput, "unknown vertex");
  if (g.degree(v0) != 1) throw Error(ErrorKind::NotExtremalVertex, "vertex " + g.vertices[v0].id + " is not a leaf");
  const double x0 = g.vertices[v0].pos.x;
  double lo = x0, hi = x0;
  for (const auto& v : g.vertices) lo = std::min(lo, v.pos.x), hi = std::max(hi, v.pos.x);
  if (x0 != lo && x0 != hi)
    throw Error(ErrorKind::NotExtremalVertex, "vertex " + g.vertices[v0].id + " is not at a global extremum",
                g.vertices[v0].pos);
  const int side = x0 == lo ? 1 : -1;

  Prepared p = prepare(g);
  std::vector<int> group;
  for (int i = 0; i < static_cast<int>(p.scheme.entries.size()); ++i) {
    const auto& en = p.scheme.entries[i];
    if (en.kind == EntryKind::Cap && en.side == side && g.vertices[en.vertex].pos.x == x0) group.push_back(i);
  }
  std::sort(group.begin(), group.end(),
            [&](int a, int b) { return p.scheme.entries[a].level < p.scheme.entries[b].level; });
  if (j < 0 || j + 1 >= static_cast<int>(group.size()))
    throw Error(ErrorKind::NotExtremalVertex, "fewer than two same-side caps at the extremum", g.vertices[v0].pos);
  const SchemeEntry& below = p.scheme.entries[group[j]];
  const SchemeEntry& above = p.scheme.entries[group[j + 1]];

  // State with every other ellipse applied.
  RefinedDomain dom = select_region(p.scene);
  PoleSet poles = assemble_poles(dom, {});
  for (const auto& ve : p.ellipses)
    if (ve.entry != group[j] && ve.entry != group[j + 1])
      std::tie(dom, poles) = apply_addition(dom, poles, ve.disk);

  auto rise = [&](const SchemeEntry& en) {
    return p.scheme.width * en.offset / (p.scheme.layout[en.vertex].zone + en.offset);
  };
  const double y1 = above.level + rise(above), y2 = below.level - rise(below);
  const double cy = 0.5 * (y1 + y2), half = 0.5 * (y1 - y2);
  const SchemeEntry& deep = above.offset > below.offset ? above : below;
  const double cx = x0 - side * deep.offset;
  const double tolx = 1e-6 * deep.offset;
  const TolerancePolicy& tol = dom.scene().tol;

  MergeReport rep;
  struct Verdict {
    bool c1 = false, c2 = false, c3 = false;
  };
  auto judge = [&](const PointedDisk& pd) {
    Verdict v;
    int at = 0, total = 0;
    for (const auto& c : dom.scene().curves)
      for (const auto& x : intersect_curves(pd.curve, c, tol)) {
        ++total;
        if (std::abs(x.point.x - x0) <= tolx) ++at;
      }
    v.c1 = at == 2 && total == 4;
    try {
      const auto [connected, comps] = connected_class(dom, pd);
      v.c2 = !connected && comps == 2 && in_disk_closure(pd, above.point, tol) && in_disk_closure(pd, below.point, tol);
    } catch (const Error&) {
      v.c2 = false;
    }
    // Arcs of the ellipse inside the old closure.
    constexpr int kSamples = 2048;
    std::vector<Point2> pts(kSamples);
    std::vector<char> in(kSamples);
    for (int k = 0; k < kSamples; ++k) {
      pts[k] = sample_curve(pd.curve, double(k) / kSamples);
      in[k] = region_membership(dom, pts[k]) != Membership::Outside;
    }
    int start = 0;
    while (start < kSamples && in[start]) ++start;
    if (start == kSamples) return v;
    int arcs = 0;
    bool ok = true;
    for (int k = 0; k < kSamples;) {
      const int i = (start + k) % kSamples;
      if (!in[i]) {
        ++k;
        continue;
      }
      std::vector<double> xs;
      while (k < kSamples && in[(start + k) % kSamples]) xs.push_back(pts[(start + k++) % kSamples].x);
      ++arcs;
      bool up = true, down = true;
      for (std::size_t m = 1; m < xs.size(); ++m) {
        up = up && xs[m] >= xs[m - 1] - tolx;
        down = down && xs[m] <= xs[m - 1] + tolx;
      }
      const double ext = side > 0 ? *std::min_element(xs.begin(), xs.end()) : *std::max_element(xs.begin(), xs.end());
      const double spacing = distance(pts[0], pts[1]) * 2;
      ok = ok && (up || down) && side * (ext - x0) >= -tolx && std::abs(ext - x0) <= spacing;
    }
    v.c3 = ok && arcs == 2;
    return v;
  };

  std::optional<PointedDisk> best;
  Verdict best_v;
  for (int k = 0; k < 40; ++k) {
    const double B = 16 * half * std::pow(0.5, 0.5 * k);
    if (B <= half * (1 + 1e-9)) break;
    const double A = deep.offset / std::sqrt(1 - (half / B) * (half / B));
    PointedDisk pd{{"m", Ellipse::standard({cx, cy}, A, B)}, {cx, cy}, deep.point, {}};
    const Verdict v = judge(pd);
    if (v.c2) {
      best = pd;
      best_v = v;
      rep.doublings = k;
    } else if (best) {
      break;
    }
  }
  if (!best) throw Error(ErrorKind::CheckFailed, "5.1.2: no ellipse leaves two components", deep.point);
  rep.merged = *best;
  rep.two_points_at_extremum = best_v.c1;
  rep.two_components = best_v.c2;
  rep.injective_arcs = best_v.c3;
  rep.not_ls = !classify(dom, poles, *best).ls;

  Realization& r = rep.result;
  r.scheme = p.scheme;
  r.tube = p.tube;
  r.retries = p.retries;
  for (const auto& ve : p.ellipses)
    if (ve.entry != group[j] && ve.entry != group[j + 1]) r.ellipses.push_back(ve);
  r.ellipses.push_back({-1, *best, rep.doublings});
  std::tie(r.domain, r.poles) = apply_addition(dom, poles, *best);
  finish(g, r);
  const Realization plain = realize(g);
  rep.same_as_unmerged =
      vdigraph_isomorphic(plain.digraph, r.digraph, ValueMode::ValueExact, r.scene.tol.slack()).has_value();
  return rep;
}

}  // namespace reebdom
