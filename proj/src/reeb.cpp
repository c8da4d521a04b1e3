#include "reebdom/reeb.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace reebdom {

int PRDigraph::in_degree(int v) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [v](auto e) { return e.second == v; }));
}

int PRDigraph::out_degree(int v) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [v](auto e) { return e.first == v; }));
}

std::map<std::pair<int, int>, int> PRDigraph::edge_multiplicity() const {
  std::map<std::pair<int, int>, int> m;
  for (const auto& e : edges) ++m[e];
  return m;
}

namespace {

struct DisjointSets {
  std::vector<int> p;
  explicit DisjointSets(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

struct PoleGroup {
  double value;
  std::vector<Point2> poles;
};

std::vector<PoleGroup> group_by_x(std::vector<Point2> pts, double slack) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x; });
  std::vector<PoleGroup> groups;
  for (const auto& p : pts) {
    if (!groups.empty() && p.x - groups.back().poles.back().x <= slack) {
      groups.back().poles.push_back(p);
      continue;
    }
    groups.push_back({0, {p}});
  }
  for (auto& g : groups) {
    double s = 0;
    for (const auto& p : g.poles) s += p.x;
    g.value = s / g.poles.size();
  }
  return groups;
}

// Slabs on either side of the vertical line at x, and the abscissa to use.
struct SlabPair {
  int left = -1;
  int right = -1;
  double x = 0;
  int event = -1;
};

SlabPair slabs_around(const VerticalDecomposition& dec, double x, double slack) {
  const auto& ev = dec.events();
  for (int e = 0; e < static_cast<int>(ev.size()); ++e) {
    if (std::abs(ev[e].x - x) <= slack) {
      const int n = static_cast<int>(dec.slabs().size());
      return {e > 0 ? e - 1 : -1, e < n ? e : -1, ev[e].x, e};
    }
  }
  const int s = dec.slab_at(x);
  return {s, s, x};
}

std::vector<Interval> strands(const RefinedDomain& dom, int slab, const SlabPair& at) {
  std::vector<Interval> out;
  if (slab < 0) return out;
  for (int t : dom.dec->slabs()[slab].trapezoids)
    if (dom.dec->face_of(t) == dom.face)
      out.push_back(at.event >= 0 ? dom.dec->event_interval(t, at.event) : dom.dec->interval(t, at.x));
  return out;
}

PRDigraph sweep(const RefinedDomain& dom, const std::vector<Point2>& poles) {
  const double slack = dom.scene().tol.slack();
  const auto groups = group_by_x(poles, slack);
  const int K = static_cast<int>(groups.size());
  if (K < 2) throw Error(ErrorKind::NonGenericSweep, "fewer than two critical values");

  // strand ids per gap
  std::vector<int> base(K, 0);
  std::vector<int> count(K, 0);
  int total = 0;
  for (int k = 0; k + 1 < K; ++k) {
    const auto r = slabs_around(*dom.dec, groups[k].value, slack);
    const auto l = slabs_around(*dom.dec, groups[k + 1].value, slack);
    count[k] = static_cast<int>(strands(dom, r.right, r).size());
    if (static_cast<int>(strands(dom, l.left, l).size()) != count[k])
      throw Error(ErrorKind::NonGenericSweep, "slice topology changes away from every pole",
                  Point2{0.5 * (groups[k].value + groups[k + 1].value), 0});
    base[k] = total;
    total += count[k];
  }

  PRDigraph g;
  std::vector<int> start(total, -1), finish(total, -1), next(total, -1);
  for (int k = 0; k < K; ++k) {
    const auto sp = slabs_around(*dom.dec, groups[k].value, slack);
    const auto left = k > 0 ? strands(dom, sp.left, sp) : std::vector<Interval>{};
    const auto right = k + 1 < K ? strands(dom, sp.right, sp) : std::vector<Interval>{};
    if (k > 0 && static_cast<int>(left.size()) != count[k - 1])
      throw Error(ErrorKind::NumericalFailure, "strand count mismatch");
    const int nl = static_cast<int>(left.size()), nr = static_cast<int>(right.size());
    const int np = static_cast<int>(groups[k].poles.size());
    std::vector<Interval> items(left);
    items.insert(items.end(), right.begin(), right.end());
    DisjointSets ds(nl + nr + np);
    auto touch = [&](const Interval& a, const Interval& b) {
      return std::min(a.hi, b.hi) - std::max(a.lo, b.lo) >= -slack;
    };
    for (int a = 0; a < nl + nr; ++a)
      for (int b = a + 1; b < nl + nr; ++b)
        if (touch(items[a], items[b])) ds.join(a, b);
    for (int p = 0; p < np; ++p) {
      const double y = groups[k].poles[p].y;
      bool placed = false;
      for (int a = 0; a < nl + nr; ++a) {
        if (y >= items[a].lo - slack && y <= items[a].hi + slack) {
          ds.join(nl + nr + p, a);
          placed = true;
        }
      }
      if (!placed)
        throw Error(ErrorKind::NumericalFailure, "pole is off the closure slice", groups[k].poles[p]);
    }
    std::map<int, std::vector<int>> comps;
    for (int a = 0; a < nl + nr + np; ++a) comps[ds.find(a)].push_back(a);
    for (const auto& [root, members] : comps) {
      std::vector<int> ls, rs;
      std::vector<Point2> ps;
      for (int m : members) {
        if (m < nl) ls.push_back(base[k - 1] + m);
        else if (m < nl + nr) rs.push_back(base[k] + (m - nl));
        else ps.push_back(groups[k].poles[m - nl - nr]);
      }
      if (ps.empty()) {
        if (ls.size() != 1 || rs.size() != 1)
          throw Error(ErrorKind::NonGenericSweep, "topology changes at a slice without a pole",
                      Point2{groups[k].value, items[members.front()].lo});
        next[ls[0]] = rs[0];
        continue;
      }
      PRVertex v;
      double s = 0;
      for (const auto& p : ps) s += p.x;
      v.value = s / ps.size();
      v.witness = ps.front();
      v.witnesses = ps;
      const int id = static_cast<int>(g.vertices.size());
      g.vertices.push_back(v);
      for (int l : ls) finish[l] = id;
      for (int r : rs) start[r] = id;
    }
  }
  for (int s = 0; s < total; ++s) {
    if (start[s] < 0) continue;
    int cur = s;
    int guard = 0;
    while (finish[cur] < 0) {
      cur = next[cur];
      if (cur < 0 || ++guard > total) throw Error(ErrorKind::NumericalFailure, "broken strand chain");
    }
    g.edges.push_back({start[s], finish[cur]});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<Point2> swapped_all(const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  for (const auto& p : pts) out.push_back(swapped(p));
  return out;
}

}  // namespace

PRDigraph poincare_reeb(const RefinedDomain& dom, const PoleSet& poles, Axis axis) {
  if (axis == Axis::X) {
    PRDigraph g = sweep(dom, poles.for_axis(Axis::X));
    g.axis = Axis::X;
    return g;
  }
  const RefinedDomain sd = swap_domain(dom);
  PRDigraph g = sweep(sd, swapped_all(poles.for_axis(Axis::Y)));
  for (auto& v : g.vertices) {
    v.witness = swapped(v.witness);
    v.witnesses = swapped_all(v.witnesses);
  }
  g.axis = Axis::Y;
  return g;
}

PRDigraph contract_regular(const PRDigraph& g, const std::vector<int>& keep) {
  std::vector<bool> alive(g.vertices.size(), true), kept(g.vertices.size(), false);
  for (int k : keep) kept[k] = true;
  auto edges = g.edges;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
      if (!alive[v] || kept[v]) continue;
      int in = -1, out = -1, nin = 0, nout = 0;
      for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (edges[e].second == v) in = e, ++nin;
        if (edges[e].first == v) out = e, ++nout;
      }
      if (nin != 1 || nout != 1 || in == out) continue;
      const std::pair<int, int> joined{edges[in].first, edges[out].second};
      edges.erase(edges.begin() + std::max(in, out));
      edges.erase(edges.begin() + std::min(in, out));
      edges.push_back(joined);
      alive[v] = false;
      changed = true;
    }
  }
  PRDigraph out;
  out.axis = g.axis;
  std::vector<int> remap(g.vertices.size(), -1);
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    if (!alive[v]) continue;
    remap[v] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(g.vertices[v]);
  }
  for (const auto& e : edges) out.edges.push_back({remap[e.first], remap[e.second]});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::optional<std::vector<int>> vdigraph_isomorphic(const PRDigraph& g1, const PRDigraph& g2,
                                                    ValueMode mode, double eps_value) {
  const int n = static_cast<int>(g1.vertices.size());
  if (n != static_cast<int>(g2.vertices.size()) || g1.edges.size() != g2.edges.size())
    return std::nullopt;
  std::vector<int> m1(n * n, 0), m2(n * n, 0);
  std::vector<std::pair<int, int>> d1(n), d2(n);
  for (auto [a, b] : g1.edges) ++m1[a * n + b], ++d1[a].second, ++d1[b].first;
  for (auto [a, b] : g2.edges) ++m2[a * n + b], ++d2[a].second, ++d2[b].first;
  {
    auto s1 = d1, s2 = d2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }
  auto cmp = [eps_value](double a, double b) { return std::abs(a - b) <= eps_value ? 0 : (a < b ? -1 : 1); };
  // most constrained first
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return d1[a].first + d1[a].second > d1[b].first + d1[b].second;
  });
  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> place = [&](int depth) -> bool {
    if (depth == n) return true;
    const int v = order[depth];
    for (int u = 0; u < n; ++u) {
      if (used[u] || d1[v] != d2[u]) continue;
      if (mode == ValueMode::ValueExact &&
          std::abs(g1.vertices[v].value - g2.vertices[u].value) > eps_value)
        continue;
      bool ok = m1[v * n + v] == m2[u * n + u];
      for (int k = 0; ok && k < depth; ++k) {
        const int w = order[k], x = map[w];
        ok = m1[v * n + w] == m2[u * n + x] && m1[w * n + v] == m2[x * n + u];
        if (ok && mode == ValueMode::OrderCompatible)
          ok = cmp(g1.vertices[v].value, g1.vertices[w].value) ==
               cmp(g2.vertices[u].value, g2.vertices[x].value);
      }
      if (!ok) continue;
      map[v] = u;
      used[u] = 1;
      if (place(depth + 1)) return true;
      used[u] = 0;
      map[v] = -1;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return map;
}

std::optional<std::vector<int>> digraph_isomorphic(const PRDigraph& g1, const PRDigraph& g2) {
  return vdigraph_isomorphic(g1, g2, ValueMode::Plain);
}

}  // namespace reebdom
