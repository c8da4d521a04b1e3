#include "reebdom/classes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace reebdom {

namespace {

Containment side_of(const PointedDisk& pd, const TolerancePolicy& tol) {
  const Containment s = point_in_interior(pd.curve, pd.side_seed, tol);
  if (s == Containment::On)
    throw Error(ErrorKind::InvalidPointedDisk, "side seed lies on the added curve", pd.side_seed);
  return s;
}

Scene extended_scene(const Scene& old, const CurveObject& c) {
  if (old.index_of(c.id) >= 0)
    throw Error(ErrorKind::InvalidInput, "added curve reuses id " + c.id);
  Scene s = old;
  s.curves.push_back(c);
  return s;
}

// Trapezoids of the refined decomposition lying in D_S and in D'. With
// swap set, the decomposition is of the mirrored scene.
struct Overlap {
  std::shared_ptr<const VerticalDecomposition> dec;
  std::vector<char> in;
};

Overlap build_overlap(const RefinedDomain& dom, const PointedDisk& pd, bool swap) {
  const auto& tol = dom.scene().tol;
  Scene s = extended_scene(dom.scene(), pd.curve);
  if (swap) s = swap_scene(s);
  Overlap k{decompose(s), {}};
  const Containment side = side_of(pd, tol);
  const auto& dec = *k.dec;
  k.in.assign(dec.trapezoids().size(), 0);
  for (int t = 0; t < static_cast<int>(dec.trapezoids().size()); ++t) {
    const auto& tr = dec.trapezoids()[t];
    if (tr.lower < 0 || tr.upper < 0) continue;
    const auto& sl = dec.slabs()[tr.slab];
    const double xm = 0.5 * (sl.x0 + sl.x1);
    const Interval iv = dec.interval(t, xm);
    Point2 p{xm, 0.5 * (iv.lo + iv.hi)};
    if (swap) p = swapped(p);
    const int old = dom.dec->locate(p);
    if (old < 0 || dom.dec->face_of(old) != dom.face) continue;
    k.in[t] = point_in_interior(pd.curve, p, tol) == side;
  }
  return k;
}

int overlap_components(const Overlap& k, double slack) {
  const auto& dec = *k.dec;
  std::vector<int> parent(dec.trapezoids().size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (const auto& sl : dec.slabs())
    for (std::size_t i = 0; i + 1 < sl.trapezoids.size(); ++i)
      if (k.in[sl.trapezoids[i]] && k.in[sl.trapezoids[i + 1]])
        parent[find(sl.trapezoids[i])] = find(sl.trapezoids[i + 1]);
  for (std::size_t s = 0; s + 1 < dec.slabs().size(); ++s) {
    const int e = static_cast<int>(s) + 1;
    for (int a : dec.slabs()[s].trapezoids) {
      if (!k.in[a]) continue;
      const Interval ia = dec.event_interval(a, e);
      for (int b : dec.slabs()[s + 1].trapezoids) {
        if (!k.in[b]) continue;
        const Interval ib = dec.event_interval(b, e);
        if (std::min(ia.hi, ib.hi) - std::max(ia.lo, ib.lo) >= -slack) parent[find(a)] = find(b);
      }
    }
  }
  int count = 0;
  for (int t = 0; t < static_cast<int>(parent.size()); ++t)
    if (k.in[t] && find(t) == t) ++count;
  return count;
}

// Does the vertical line at x meet the overlap?
bool line_meets(const Overlap& k, double x, double slack) {
  const auto& dec = *k.dec;
  std::vector<int> slabs;
  for (int s = 0; s < static_cast<int>(dec.slabs().size()); ++s) {
    const auto& sl = dec.slabs()[s];
    if (x >= sl.x0 - slack && x <= sl.x1 + slack) slabs.push_back(s);
  }
  for (int s : slabs) {
    const auto& sl = dec.slabs()[s];
    const double xe = std::clamp(x, sl.x0, sl.x1);
    for (int t : sl.trapezoids) {
      if (!k.in[t]) continue;
      const Interval iv = dec.interval(t, xe);
      if (iv.hi - iv.lo >= -slack) return true;
    }
  }
  return false;
}

}  // namespace

bool in_disk_closure(const PointedDisk& pd, Point2 p, const TolerancePolicy& tol) {
  const Containment side = side_of(pd, tol);
  if (distance_to_curve(pd.curve, p) <= tol.slack()) return true;
  return point_in_interior(pd.curve, p, tol) == side;
}

void validate_pointed_disk(const RefinedDomain& dom, const PointedDisk& pd) {
  const auto& tol = dom.scene().tol;
  const Containment side = side_of(pd, tol);
  if (point_in_interior(pd.curve, pd.basepoint, tol) != side ||
      distance_to_curve(pd.curve, pd.basepoint) <= tol.slack())
    throw Error(ErrorKind::InvalidPointedDisk, "basepoint is not inside the added disk", pd.basepoint);
  if (region_membership(dom, pd.basepoint) != Membership::Boundary)
    throw Error(ErrorKind::InvalidPointedDisk, "basepoint is not on the region boundary", pd.basepoint);
  for (const auto& p : pd.incoming_poles)
    if (distance_to_curve(pd.curve, p) > tol.slack())
      throw Error(ErrorKind::InvalidPointedDisk, "incoming pole is not on the added curve", p);
}

std::pair<RefinedDomain, PoleSet> apply_addition(const RefinedDomain& dom, const PoleSet& poles,
                                                 const PointedDisk& pd, std::optional<Point2> new_seed) {
  validate_pointed_disk(dom, pd);
  const auto& tol = dom.scene().tol;
  Scene s = extended_scene(dom.scene(), pd.curve);
  const Containment side = side_of(pd, tol);
  if (new_seed) {
    s.seed = *new_seed;
  } else {
    // Candidates: sample points of the old face outside closure(D').
    std::vector<Point2> cands;
    const auto& dec = *dom.dec;
    for (int t : dom.trapezoids) {
      const auto& tr = dec.trapezoids()[t];
      const auto& sl = dec.slabs()[tr.slab];
      for (int a = 1; a <= 5; ++a) {
        const double x = sl.x0 + (sl.x1 - sl.x0) * a / 6.0;
        const Interval iv = dec.interval(t, x);
        for (int b = 1; b <= 5; ++b) {
          const Point2 p{x, iv.lo + (iv.hi - iv.lo) * b / 6.0};
          const Containment c = point_in_interior(pd.curve, p, tol);
          if (c != side && c != Containment::On && distance_to_curve(pd.curve, p) > tol.slack() * 10)
            cands.push_back(p);
        }
      }
    }
    if (cands.empty()) throw Error(ErrorKind::RegionVanishes, "the added disk covers the region");
    const auto ndec = decompose(s);
    int face = -1;
    Point2 chosen = cands.front();
    double best_clear = -1;
    for (const auto& p : cands) {
      const int t = ndec->locate(p);
      if (t < 0) continue;
      const int f = ndec->face_of(t);
      if (face >= 0 && f != face)
        throw Error(ErrorKind::RegionDisconnected, "the remaining region has several components", p);
      face = f;
      double clear = 1e300;
      for (const auto& c : s.curves) clear = std::min(clear, distance_to_curve(c, p));
      if (clear > best_clear) best_clear = clear, chosen = p;
    }
    s.seed = chosen;
  }
  RefinedDomain nd = select_region(s);
  std::vector<Point2> carried = poles.extra;
  std::vector<Point2> incoming = pd.incoming_poles;
  if (incoming.empty())
    for (Axis a : {Axis::X, Axis::Y})
      for (const auto& cp : projection_critical_points(pd.curve, a)) incoming.push_back(cp.point);
  append_unique(carried, incoming, tol.slack());
  std::vector<Point2> extra;
  for (const auto& p : carried)
    if (region_membership(nd, p) == Membership::Boundary) extra.push_back(p);
  PoleSet np = assemble_poles(nd, extra);
  return {std::move(nd), std::move(np)};
}

std::pair<bool, int> connected_class(const RefinedDomain& dom, const PointedDisk& pd) {
  const auto k = build_overlap(dom, pd, false);
  const int n = overlap_components(k, dom.scene().tol.slack());
  return {n == 1, n};
}

ClassReport classify(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& pd) {
  validate_pointed_disk(dom, pd);
  const auto& tol = dom.scene().tol;
  const double slack = tol.slack();
  ClassReport r;
  const auto kx = build_overlap(dom, pd, false);
  const auto ky = build_overlap(dom, pd, true);
  r.components = overlap_components(kx, slack);
  r.connected = r.components == 1;
  const Point2 b = pd.basepoint;
  const auto all = poles.all();
  for (const auto& p : all) {
    const bool hit_x = std::abs(p.x - b.x) > tol.eps_value && line_meets(kx, p.x, slack);
    const bool hit_y = std::abs(p.y - b.y) > tol.eps_value && line_meets(ky, p.y, slack);
    if (hit_x || hit_y) r.evidence.small.push_back(p);
    if (distance(p, b) <= slack || !in_disk_closure(pd, p, tol)) continue;
    if (std::abs(p.x - b.x) > tol.eps_value && std::abs(p.y - b.y) > tol.eps_value)
      r.evidence.locally_small.push_back(p);
  }
  r.small = r.evidence.small.empty();
  r.ls = r.evidence.locally_small.empty();
  r.ps = r.small && r.connected;
  r.pls = r.ls && r.connected;
  return r;
}

bool corollary1_check(const RefinedDomain& dom, const PoleSet& poles, const PointedDisk& pd) {
  const double slack = dom.scene().tol.slack();
  bool on_curve = false;
  for (const auto& c : dom.scene().curves) on_curve = on_curve || distance_to_curve(c, pd.basepoint) <= slack;
  if (!on_curve)
    throw Error(ErrorKind::BasepointNotOnCurves, "basepoint is not on the scene curves", pd.basepoint);
  const ClassReport r = classify(dom, poles, pd);
  const bool pls_ok = !(r.ls && r.connected) || r.pls;
  const bool ps_ok = !(r.small && r.connected) || r.ps;
  const bool s_ls = !r.small || r.ls;
  return pls_ok && ps_ok && s_ls;
}

}  // namespace reebdom
