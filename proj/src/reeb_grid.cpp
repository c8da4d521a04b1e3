#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>

#include "reebdom/reeb.hpp"

namespace reebdom {

namespace {

struct Run {
  int col;
  int r0;
  int r1;
};

// Inside test per column: for conics the interval between the two roots of
// the implicit equation, for chains the parity of polyline crossings.
class ColumnClassifier {
 public:
  explicit ColumnClassifier(const std::vector<CurveObject>& curves) {
    for (const auto& c : curves) {
      if (const auto* ch = std::get_if<ArcChain>(&c.shape)) {
        polylines_.push_back(ch->polyline(64));
        conics_.push_back({});
      } else {
        polylines_.push_back({});
        conics_.push_back(c.is_circle() ? conic_of(std::get<Circle>(c.shape))
                                        : conic_of(std::get<Ellipse>(c.shape)));
      }
    }
  }

  // Bit k set when row centre y is inside curve k.
  void column(double x, const std::vector<double>& ys, std::vector<std::uint64_t>& sig) const {
    std::fill(sig.begin(), sig.end(), 0);
    for (std::size_t k = 0; k < conics_.size(); ++k) {
      const std::uint64_t bit = std::uint64_t{1} << k;
      if (polylines_[k].empty()) {
        const Conic& q = conics_[k];
        const double a = q.C, b = q.B * x + q.E, c = q.A * x * x + q.D * x + q.F;
        const double disc = b * b - 4 * a * c;
        if (disc <= 0) continue;
        const double s = std::sqrt(disc);
        const double lo = (-b - s) / (2 * a), hi = (-b + s) / (2 * a);
        for (std::size_t j = 0; j < ys.size(); ++j)
          if (ys[j] > lo && ys[j] < hi) sig[j] |= bit;
        continue;
      }
      std::vector<double> cross;
      const auto& pl = polylines_[k];
      for (std::size_t i = 0; i < pl.size(); ++i) {
        const Point2 a = pl[i], b = pl[(i + 1) % pl.size()];
        if ((a.x <= x) == (b.x <= x)) continue;
        cross.push_back(a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y));
      }
      std::sort(cross.begin(), cross.end());
      std::size_t above = cross.size(), idx = 0;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        while (idx < cross.size() && cross[idx] <= ys[j]) ++idx;
        above = cross.size() - idx;
        if (above % 2 == 1) sig[j] |= bit;
      }
    }
  }

 private:
  std::vector<Conic> conics_;
  std::vector<std::vector<Point2>> polylines_;
};

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

PRDigraph grid_reeb_x(const std::vector<CurveObject>& curves, Point2 seed,
                      const std::vector<Point2>& poles, int n, double slack) {
  if (n < 128) throw Error(ErrorKind::InvalidInput, "grid resolution must be at least 128");
  if (curves.size() > 64) throw Error(ErrorKind::InvalidInput, "too many curves for the grid oracle");
  Box box = bounding_box(curves.front());
  for (const auto& c : curves) box = merge(box, bounding_box(c));
  const double pad = 0.01 * box.diameter();
  box = {box.xmin - pad, box.ymin - pad, box.xmax + pad, box.ymax + pad};
  const double hx = (box.xmax - box.xmin) / n, hy = (box.ymax - box.ymin) / n;

  // Pole values must be resolvable.
  std::vector<double> xs;
  for (const auto& p : poles) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] - xs[i - 1] > slack && xs[i] - xs[i - 1] < 6 * hx)
      throw Error(ErrorKind::ResolutionTooCoarse, "pole values closer than six grid cells",
                  Point2{xs[i], 0});

  ColumnClassifier cls(curves);
  std::vector<double> ys(n);
  for (int j = 0; j < n; ++j) ys[j] = box.ymin + (j + 0.5) * hy;
  std::vector<std::uint64_t> sig(static_cast<std::size_t>(n) * n), col(n);
  for (int i = 0; i < n; ++i) {
    cls.column(box.xmin + (i + 0.5) * hx, ys, col);
    std::copy(col.begin(), col.end(), sig.begin() + static_cast<std::size_t>(i) * n);
  }
  const int si = std::clamp(int((seed.x - box.xmin) / hx), 0, n - 1);
  const int sj = std::clamp(int((seed.y - box.ymin) / hy), 0, n - 1);
  std::vector<char> in(static_cast<std::size_t>(n) * n, 0);
  const std::uint64_t target = sig[static_cast<std::size_t>(si) * n + sj];
  std::queue<std::pair<int, int>> q;
  q.push({si, sj});
  in[static_cast<std::size_t>(si) * n + sj] = 1;
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop();
    const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      const int a = i + di[d], b = j + dj[d];
      if (a < 0 || b < 0 || a >= n || b >= n) continue;
      const std::size_t id = static_cast<std::size_t>(a) * n + b;
      if (in[id] || sig[id] != target) continue;
      in[id] = 1;
      q.push({a, b});
    }
  }

  std::vector<Run> runs;
  std::vector<std::vector<int>> col_runs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n;) {
      if (!in[static_cast<std::size_t>(i) * n + j]) {
        ++j;
        continue;
      }
      int k = j;
      while (k < n && in[static_cast<std::size_t>(i) * n + k]) ++k;
      col_runs[i].push_back(static_cast<int>(runs.size()));
      runs.push_back({i, j, k - 1});
      j = k;
    }
  }
  const int R = static_cast<int>(runs.size());
  std::vector<std::vector<int>> right(R), left(R);
  for (int i = 0; i + 1 < n; ++i)
    for (int a : col_runs[i])
      for (int b : col_runs[i + 1])
        if (std::min(runs[a].r1, runs[b].r1) >= std::max(runs[a].r0, runs[b].r0)) {
          right[a].push_back(b);
          left[b].push_back(a);
        }

  // Attach each pole to the nearest run in a small window around it.
  std::vector<int> pole_run(poles.size(), -1);
  for (std::size_t p = 0; p < poles.size(); ++p) {
    const int ci = int(std::floor((poles[p].x - box.xmin) / hx));
    const int rj = int(std::floor((poles[p].y - box.ymin) / hy));
    int best = -1;
    int best_score = 1 << 30;
    for (int c = ci - 3; c <= ci + 3; ++c) {
      if (c < 0 || c >= n) continue;
      for (int r : col_runs[c]) {
        const int dr = rj < runs[r].r0 ? runs[r].r0 - rj : (rj > runs[r].r1 ? rj - runs[r].r1 : 0);
        if (dr > 8) continue;
        const int score = 4 * std::abs(c - ci) + dr;
        if (score < best_score) best_score = score, best = r;
      }
    }
    if (best < 0) throw Error(ErrorKind::ResolutionTooCoarse, "no raster run near a pole (wedge thinner than the grid)", poles[p]);
    pole_run[p] = best;
  }

  // Clusters: every run within two columns of a pole run and connected to it
  // inside that window.
  Dsu ds(R);
  std::vector<char> owned(R, 0);
  constexpr int kWindow = 2;
  for (std::size_t p = 0; p < poles.size(); ++p) {
    const int m = pole_run[p];
    const int c0 = runs[m].col;
    std::queue<int> bq;
    std::vector<int> seen{m};
    bq.push(m);
    owned[m] = 1;
    std::vector<char> vis(R, 0);
    vis[m] = 1;
    while (!bq.empty()) {
      const int r = bq.front();
      bq.pop();
      for (const auto* nb : {&left[r], &right[r]})
        for (int s : *nb) {
          if (vis[s] || std::abs(runs[s].col - c0) > kWindow) continue;
          vis[s] = 1;
          ds.join(s, m);
          owned[s] = 1;
          bq.push(s);
        }
    }
  }

  // Nodes: clusters and irregular free runs; regular free runs form chains.
  auto regular = [&](int r) { return !owned[r] && left[r].size() == 1 && right[r].size() == 1; };
  std::map<int, int> node_of_root;
  std::vector<int> node(R, -1);
  std::vector<std::vector<Point2>> node_poles;
  std::vector<int> node_col;
  for (int r = 0; r < R; ++r) {
    if (regular(r)) continue;
    const int root = owned[r] ? ds.find(r) : r;
    auto [it, fresh] = node_of_root.emplace(root, static_cast<int>(node_poles.size()));
    if (fresh) {
      node_poles.push_back({});
      node_col.push_back(runs[r].col);
    }
    node[r] = it->second;
  }
  for (std::size_t p = 0; p < poles.size(); ++p) node_poles[node[pole_run[p]]].push_back(poles[p]);

  struct Edge {
    int a, b, span;
  };
  std::vector<Edge> edges;
  for (int r = 0; r < R; ++r) {
    if (node[r] < 0) continue;
    for (int s : right[r]) {
      int cur = s;
      while (node[cur] < 0) cur = right[cur].front();
      if (node[cur] == node[r]) continue;
      edges.push_back({node[r], node[cur], runs[cur].col - runs[r].col});
    }
  }

  // Fold stray free nodes into a pole cluster reached by a short chain.
  const int N = static_cast<int>(node_poles.size());
  Dsu nd(N);
  for (int v = 0; v < N; ++v) {
    if (!node_poles[v].empty()) continue;
    for (const auto& e : edges) {
      const int other_end = e.a == v ? e.b : (e.b == v ? e.a : -1);
      if (other_end < 0 || node_poles[nd.find(other_end)].empty() || e.span > 4) continue;
      const int root = nd.find(other_end);
      nd.p[v] = root;
      break;
    }
  }
  PRDigraph g;
  std::vector<int> vid(N, -1);
  std::vector<int> keep;
  for (int v = 0; v < N; ++v) {
    if (nd.find(v) != v) continue;
    vid[v] = static_cast<int>(g.vertices.size());
    PRVertex pv;
    const auto& ps = node_poles[v];
    if (!ps.empty()) {
      double s = 0;
      for (const auto& p : ps) s += p.x;
      pv.value = s / ps.size();
      pv.witness = ps.front();
      pv.witnesses = ps;
      keep.push_back(vid[v]);
    } else {
      pv.value = box.xmin + (node_col[v] + 0.5) * hx;
      pv.witness = {pv.value, 0};
    }
    g.vertices.push_back(pv);
  }
  for (const auto& e : edges) {
    const int a = vid[nd.find(e.a)], b = vid[nd.find(e.b)];
    if (a != b) g.edges.push_back({a, b});
  }
  return contract_regular(g, keep);
}

}  // namespace

PRDigraph reference_reeb_grid(const RefinedDomain& dom, const PoleSet& poles, Axis axis,
                              int resolution) {
  const Scene& scene = dom.scene();
  const double slack = scene.tol.slack();
  if (axis == Axis::X) {
    PRDigraph g = grid_reeb_x(scene.curves, scene.seed, poles.for_axis(Axis::X), resolution, slack);
    g.axis = Axis::X;
    return g;
  }
  const Scene sw = swap_scene(scene);
  std::vector<Point2> ps;
  for (const auto& p : poles.for_axis(Axis::Y)) ps.push_back(swapped(p));
  PRDigraph g = grid_reeb_x(sw.curves, sw.seed, ps, resolution, slack);
  for (auto& v : g.vertices) {
    v.witness = swapped(v.witness);
    for (auto& w : v.witnesses) w = swapped(w);
  }
  g.axis = Axis::Y;
  return g;
}

}  // namespace reebdom
