#include "reebdom/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace reebdom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<Interval> merge_intervals(std::vector<Interval> v, double slack) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi + slack) {
      out.back().hi = std::max(out.back().hi, iv.hi);
      continue;
    }
    out.push_back(iv);
  }
  return out;
}

// Index of the event within slack of x, or -1.
int event_near(const VerticalDecomposition& dec, double x, double slack) {
  const auto& ev = dec.events();
  auto it = std::lower_bound(ev.begin(), ev.end(), x,
                             [](const Event& e, double v) { return e.x < v; });
  int best = -1;
  double bd = slack;
  for (auto j : {it - ev.begin() - 1, it - ev.begin()}) {
    if (j < 0 || j >= static_cast<long>(ev.size())) continue;
    const double d = std::abs(ev[j].x - x);
    if (d <= bd) bd = d, best = static_cast<int>(j);
  }
  return best;
}

}  // namespace

int Scene::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < curves.size(); ++i)
    if (curves[i].id == id) return static_cast<int>(i);
  return -1;
}

Box Scene::bounds() const {
  Box b{seed.x, seed.y, seed.x, seed.y};
  for (const auto& c : curves) b = merge(b, bounding_box(c));
  return b;
}

void validate_scene(const Scene& scene) {
  if (scene.curves.empty()) throw Error(ErrorKind::InvalidInput, "scene has no curves");
  std::set<std::string> ids;
  for (const auto& c : scene.curves)
    if (!ids.insert(c.id).second) throw Error(ErrorKind::InvalidInput, "duplicate curve id " + c.id);
  for (const auto& c : scene.curves)
    if (distance_to_curve(c, scene.seed) <= scene.tol.eps_coincide)
      throw Error(ErrorKind::InvalidInput, "seed lies on curve " + c.id, scene.seed);
}

VerticalDecomposition::VerticalDecomposition(const Scene& scene)
    : scene_(std::make_shared<const Scene>(scene)) {
  const auto& curves = scene_->curves;
  const double slack = scene_->tol.slack();
  for (int i = 0; i < static_cast<int>(curves.size()); ++i) {
    sweeps_.emplace_back(curves[i], i);
    for (const auto& b : sweeps_.back().branches()) branches_.push_back(b);
  }

  std::vector<Event> raw;
  for (const auto& c : curves)
    for (const auto& cp : projection_critical_points(c, Axis::X)) raw.push_back({cp.point.x, {cp.point}});
  for (int i = 0; i < static_cast<int>(curves.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(curves.size()); ++j) {
      for (const auto& x : intersect_curves(curves[i], curves[j], scene_->tol)) {
        crossings_.push_back({x.point, i, j, x.transversal});
        raw.push_back({x.point.x, {x.point}});
      }
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Event& a, const Event& b) { return a.x < b.x; });
  for (const auto& e : raw) {
    if (!events_.empty() && e.x - events_.back().points.back().x <= slack) {
      events_.back().points.push_back(e.points.front());
      continue;
    }
    events_.push_back(e);
  }
  for (auto& e : events_) {
    double s = 0;
    for (const auto& p : e.points) s += p.x;
    e.x = s / e.points.size();
    e.x_lo = e.points.front().x;
    e.x_hi = e.points.back().x;
  }

  for (std::size_t k = 0; k + 1 < events_.size(); ++k) {
    Slab slab{events_[k].x, events_[k + 1].x, {}};
    const double mid = 0.5 * (slab.x0 + slab.x1);
    std::vector<std::pair<double, int>> active;
    for (int b = 0; b < static_cast<int>(branches_.size()); ++b) {
      if (branches_[b].x0 <= slab.x0 + slack && branches_[b].x1 >= slab.x1 - slack)
        active.push_back({branch_y(b, mid), b});
    }
    std::sort(active.begin(), active.end());
    int below = -1;
    for (const auto& [y, b] : active) {
      slab.trapezoids.push_back(static_cast<int>(traps_.size()));
      traps_.push_back({static_cast<int>(k), below, b});
      below = b;
    }
    slab.trapezoids.push_back(static_cast<int>(traps_.size()));
    traps_.push_back({static_cast<int>(k), below, -1});
    slabs_.push_back(std::move(slab));
  }

  adjacency_.assign(traps_.size(), {});
  UnionFind uf(static_cast<int>(traps_.size()));
  for (std::size_t k = 0; k + 1 < slabs_.size(); ++k) {
    const int e = static_cast<int>(k) + 1;
    for (int a : slabs_[k].trapezoids) {
      const Interval ia = event_interval(a, e);
      for (int b : slabs_[k + 1].trapezoids) {
        const Interval ib = event_interval(b, e);
        if (std::min(ia.hi, ib.hi) - std::max(ia.lo, ib.lo) > slack) {
          adjacency_[a].push_back(b);
          adjacency_[b].push_back(a);
          uf.join(a, b);
        }
      }
    }
  }
  std::map<int, int> root_to_face;
  face_.resize(traps_.size());
  for (int t = 0; t < static_cast<int>(traps_.size()); ++t) {
    const int r = uf.find(t);
    auto [it, fresh] = root_to_face.emplace(r, static_cast<int>(face_bounded_.size()));
    if (fresh) face_bounded_.push_back(true);
    face_[t] = it->second;
    if (traps_[t].lower < 0 || traps_[t].upper < 0) face_bounded_[it->second] = false;
  }
}

double VerticalDecomposition::branch_y(int branch, double x) const {
  const Branch& b = branches_[branch];
  return sweeps_[b.curve].eval(b, x);
}

Interval VerticalDecomposition::interval(int trapezoid, double x) const {
  const auto& t = traps_[trapezoid];
  return {t.lower < 0 ? -kInf : branch_y(t.lower, x), t.upper < 0 ? kInf : branch_y(t.upper, x)};
}

Interval VerticalDecomposition::event_interval(int trapezoid, int event) const {
  const auto& ev = events_[event];
  return interval(trapezoid, traps_[trapezoid].slab < event ? ev.x_lo : ev.x_hi);
}

int VerticalDecomposition::slab_at(double x) const {
  auto it = std::lower_bound(slabs_.begin(), slabs_.end(), x,
                             [](const Slab& s, double v) { return s.x1 < v; });
  if (it == slabs_.end() || x < it->x0) return -1;
  return static_cast<int>(it - slabs_.begin());
}

int VerticalDecomposition::locate(Point2 p) const {
  const int s = slab_at(p.x);
  if (s < 0) return -1;
  const double eps = scene_->tol.eps_coincide;
  for (int t : slabs_[s].trapezoids) {
    const Interval iv = interval(t, p.x);
    if (p.y > iv.lo + eps && p.y < iv.hi - eps) return t;
  }
  return -1;
}

std::shared_ptr<const VerticalDecomposition> decompose(const Scene& scene) {
  return std::make_shared<const VerticalDecomposition>(scene);
}

std::vector<Interval> face_slice(const RefinedDomain& dom, double x, int side) {
  const auto& dec = *dom.dec;
  const double slack = dom.scene().tol.slack();
  std::vector<int> slabs;
  const int e = event_near(dec, x, slack);
  if (e >= 0) {
    x = dec.events()[e].x;
    if (side <= 0 && e > 0) slabs.push_back(e - 1);
    if (side >= 0 && e + 1 < static_cast<int>(dec.events().size())) slabs.push_back(e);
  } else if (const int s = dec.slab_at(x); s >= 0) {
    slabs.push_back(s);
  }
  std::vector<Interval> ivs;
  for (int s : slabs)
    for (int t : dec.slabs()[s].trapezoids)
      if (dec.face_of(t) == dom.face) {
        const Interval iv = e >= 0 ? dec.event_interval(t, e) : dec.interval(t, x);
        if (iv.hi - iv.lo > -slack) ivs.push_back(iv);
      }
  return merge_intervals(ivs, slack);
}

bool in_closure(const RefinedDomain& dom, Point2 p) {
  const double slack = dom.scene().tol.slack();
  for (const auto& iv : face_slice(dom, p.x, 0))
    if (p.y >= iv.lo - slack && p.y <= iv.hi + slack) return true;
  return false;
}

RefinedDomain select_region(const Scene& scene) {
  validate_scene(scene);
  RefinedDomain dom;
  dom.dec = decompose(scene);
  const auto& dec = *dom.dec;
  const int t0 = dec.locate(scene.seed);
  if (t0 < 0) throw Error(ErrorKind::SeedOutsideBounded, "seed is outside every slab", scene.seed);
  dom.face = dec.face_of(t0);
  if (!dec.face_bounded(dom.face))
    throw Error(ErrorKind::SeedOutsideBounded, "seed face is unbounded", scene.seed);

  for (int t = 0; t < static_cast<int>(dec.trapezoids().size()); ++t)
    if (dec.face_of(t) == dom.face) dom.trapezoids.push_back(t);

  const double slack = scene.tol.slack();
  for (const auto& x : dec.crossings()) {
    if (!in_closure(dom, x.point)) continue;
    if (!x.transversal)
      throw Error(ErrorKind::TangentialCrossing, "tangential contact on the region boundary", x.point);
    int on = 0;
    for (const auto& c : scene.curves)
      if (distance_to_curve(c, x.point) <= slack) ++on;
    if (on >= 3) throw Error(ErrorKind::TriplePoint, "three curves meet on the boundary", x.point);
    dom.double_points.push_back(x.point);
  }

  std::map<int, std::vector<BranchPiece>> by_curve;
  for (int t : dom.trapezoids) {
    const auto& tr = dec.trapezoids()[t];
    const auto& sl = dec.slabs()[tr.slab];
    for (int b : {tr.lower, tr.upper}) {
      auto& pieces = by_curve[dec.branches()[b].curve];
      auto it = std::find_if(pieces.begin(), pieces.end(), [&](const BranchPiece& p) {
        return p.branch == b && std::abs(p.x1 - sl.x0) <= slack;
      });
      if (it != pieces.end()) it->x1 = sl.x1;
      else pieces.push_back({b, sl.x0, sl.x1});
    }
  }
  for (const auto& [curve, pieces] : by_curve) {
    const int n = static_cast<int>(pieces.size());
    UnionFind uf(n);
    auto ends = [&](const BranchPiece& p) {
      return std::pair{Point2{p.x0, dec.branch_y(p.branch, p.x0)}, Point2{p.x1, dec.branch_y(p.branch, p.x1)}};
    };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto [a0, a1] = ends(pieces[i]);
        auto [b0, b1] = ends(pieces[j]);
        for (Point2 p : {a0, a1})
          for (Point2 q : {b0, b1})
            if (distance(p, q) <= slack) uf.join(i, j);
      }
    std::map<int, BoundaryArc> arcs;
    for (int i = 0; i < n; ++i) arcs[uf.find(i)].pieces.push_back(pieces[i]);
    auto& dst = dom.boundary_incidence[scene.curves[curve].id];
    for (auto& [root, arc] : arcs) dst.push_back(std::move(arc));
  }
  for (const auto& c : scene.curves)
    if (dom.boundary_incidence[c.id].empty())
      throw Error(ErrorKind::CurveNotTouching, "curve " + c.id + " does not touch the region");
  return dom;
}

Membership region_membership(const RefinedDomain& dom, Point2 p) {
  const double slack = dom.scene().tol.slack();
  bool near = false;
  for (const auto& c : dom.scene().curves)
    if (distance_to_curve(c, p) <= slack) near = true;
  if (near) return in_closure(dom, p) ? Membership::Boundary : Membership::Outside;
  const int t = dom.dec->locate(p);
  return t >= 0 && dom.dec->face_of(t) == dom.face ? Membership::Interior : Membership::Outside;
}

Scene swap_scene(const Scene& scene) {
  Scene out = scene;
  out.seed = swapped(scene.seed);
  for (auto& c : out.curves) c = swap_axes(c);
  for (auto& p : out.extra_poles) p = swapped(p);
  return out;
}

RefinedDomain swap_domain(const RefinedDomain& dom) { return select_region(swap_scene(dom.scene())); }

}  // namespace reebdom
