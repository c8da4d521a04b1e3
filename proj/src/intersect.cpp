#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/Polynomials>

#include "detail.hpp"
#include "reebdom/geometry.hpp"

namespace reebdom {

namespace {

using detail::ConicFrame;

// Roots of sum coeffs[k] u^k with real part kept when the imaginary part is small.
std::vector<double> real_roots(std::vector<double> coeffs) {
  double big = 0;
  for (double c : coeffs) big = std::max(big, std::abs(c));
  if (big == 0) throw Error(ErrorKind::DegenerateGeometry, "coincident conics");
  while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-13 * big) coeffs.pop_back();
  std::vector<double> out;
  if (coeffs.size() < 2) return out;
  if (coeffs.size() == 2) {
    out.push_back(-coeffs[0] / coeffs[1]);
    return out;
  }
  Eigen::VectorXd poly(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) poly[i] = coeffs[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(poly);
  for (const auto& z : solver.roots())
    if (std::abs(z.imag()) < 1e-5 * std::max(1.0, std::abs(z))) out.push_back(z.real());
  return out;
}

void push_unique(std::vector<Intersection>& out, const Intersection& x, double radius) {
  for (auto& y : out) {
    if (distance(x.point, y.point) <= radius) {
      y.transversal = y.transversal && x.transversal;
      return;
    }
  }
  out.push_back(x);
}

bool transversal_at(Point2 t1, Point2 t2, const TolerancePolicy& tol) {
  const double n = norm(t1) * norm(t2);
  if (n == 0) return false;
  return std::abs(cross(t1, t2)) / n > tol.eps_tangent;
}

std::vector<Intersection> circle_circle(const Circle& a, const Circle& b,
                                        const TolerancePolicy& tol) {
  const Point2 d = b.center - a.center;
  const double dist = norm(d);
  std::vector<Intersection> out;
  if (dist <= tol.eps_coincide) {
    if (std::abs(a.radius - b.radius) <= tol.eps_coincide)
      throw Error(ErrorKind::DegenerateGeometry, "coincident circles", a.center);
    return out;
  }
  const double along = (dist * dist + a.radius * a.radius - b.radius * b.radius) / (2 * dist);
  double h2 = a.radius * a.radius - along * along;
  const double scale = std::max(a.radius, b.radius);
  if (h2 < -2 * tol.eps_coincide * scale) return out;
  const Point2 e = (1.0 / dist) * d;
  const Point2 n{-e.y, e.x};
  const Point2 base = a.center + along * e;
  if (h2 <= 2 * tol.eps_coincide * scale) {
    out.push_back({base, false});
    return out;
  }
  const double h = std::sqrt(h2);
  for (double s : {-1.0, 1.0}) {
    const Point2 p = base + (s * h) * n;
    const Point2 t1{-(p - a.center).y, (p - a.center).x};
    const Point2 t2{-(p - b.center).y, (p - b.center).x};
    out.push_back({p, transversal_at(t1, t2, tol)});
  }
  return out;
}

std::vector<Intersection> conic_conic(const ConicFrame& f1, const Conic& q1, const Conic& q2,
                                      double scale, const TolerancePolicy& tol) {
  // Start the parameter where conic 1 is farthest from conic 2 so that the
  // point at u = infinity is never a root.
  double best_phi = 0, best_val = -1;
  for (int k = 0; k < 16; ++k) {
    const double phi = 2 * std::numbers::pi * k / 16;
    const Point2 p = f1.at(phi + std::numbers::pi);
    const double v = q2.geometric_residual(p);
    if (v > best_val) best_val = v, best_phi = phi;
  }
  ConicFrame f = f1.rotated(best_phi);
  const Point2 C = f.center, U = f.u, V = f.v;
  auto quad = [&](Point2 a, Point2 b) {
    return q2.A * a.x * b.x + 0.5 * q2.B * (a.x * b.y + a.y * b.x) + q2.C * a.y * b.y;
  };
  const double al = quad(U, U), be = 2 * quad(U, V), ga = quad(V, V);
  const double de = 2 * quad(U, C) + q2.D * U.x + q2.E * U.y;
  const double ep = 2 * quad(V, C) + q2.D * V.x + q2.E * V.y;
  const double ze = q2(C);
  const std::vector<double> coeffs{al + de + ze, 2 * be + 2 * ep, -2 * al + 4 * ga + 2 * ze,
                                   -2 * be + 2 * ep, al - de + ze};
  std::vector<Intersection> out;
  for (double u : real_roots(coeffs)) {
    double t = 2 * std::atan(u);
    bool ok = false;
    for (int it = 0; it < 50; ++it) {
      const Point2 p = f.at(t);
      const double g = q2(p);
      const double dg = dot(q2.gradient(p), f.tangent(t));
      if (q2.geometric_residual(p) < 1e-13 * scale) {
        ok = true;
        break;
      }
      if (dg == 0) break;
      const double step = g / dg;
      t -= std::clamp(step, -0.5, 0.5);
      if (std::abs(step) < 1e-15) {
        ok = true;
        break;
      }
    }
    const Point2 p = f.at(t);
    if (!ok && q2.geometric_residual(p) > 1e-7 * scale) continue;
    if (q2.geometric_residual(p) > 1e-6 * scale) continue;
    const Point2 t1{-q1.gradient(p).y, q1.gradient(p).x};
    const Point2 t2{-q2.gradient(p).y, q2.gradient(p).x};
    // two roots landing on one point are a double root: tangency
    bool merged = false;
    for (auto& y : out)
      if (distance(p, y.point) <= 1e-6 * scale) y.transversal = false, merged = true;
    if (!merged) out.push_back({p, transversal_at(t1, t2, tol)});
  }
  return out;
}

// Roots of a scalar function along a parametrised piece: sign changes refined
// by bisection, and near-zero minima refined as tangential contacts.
template <class G>
void scan_roots(G&& g, double zero_tol, int samples, double t0, double t1,
                std::vector<std::pair<double, bool>>& roots) {
  std::vector<double> ts(samples + 1), gs(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    ts[k] = t0 + (t1 - t0) * k / samples;
    gs[k] = g(ts[k]);
  }
  for (int k = 0; k < samples; ++k) {
    if (gs[k] == 0) {
      roots.push_back({ts[k], true});
      continue;
    }
    if ((gs[k] < 0) != (gs[k + 1] < 0) && gs[k + 1] != 0) {
      double lo = ts[k], hi = ts[k + 1];
      const bool neg_lo = gs[k] < 0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) < 0) == neg_lo) lo = mid; else hi = mid;
      }
      roots.push_back({0.5 * (lo + hi), true});
    }
  }
  if (gs[samples] == 0) roots.push_back({t1, true});
  // tangential contacts: local minima of |g| without a sign change
  for (int k = 1; k < samples; ++k) {
    if (std::abs(gs[k]) > std::abs(gs[k - 1]) || std::abs(gs[k]) > std::abs(gs[k + 1])) continue;
    if ((gs[k - 1] < 0) != (gs[k + 1] < 0)) continue;
    double a = ts[k - 1], b = ts[k + 1];
    const double phi = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 100; ++it) {
      const double c = b - phi * (b - a), d = a + phi * (b - a);
      if (std::abs(g(c)) < std::abs(g(d))) b = d; else a = c;
    }
    const double t = 0.5 * (a + b);
    if (std::abs(g(t)) <= zero_tol) roots.push_back({t, false});
  }
}

std::vector<Intersection> conic_chain(const Conic& q, const Box& qb, const ArcChain& chain,
                                      double scale, const TolerancePolicy& tol) {
  std::vector<Intersection> out;
  const double pad = 0.05 * qb.diameter() + tol.eps_coincide * scale;
  for (const auto& arc : chain.arcs()) {
    // restrict the scan to the stretch whose monotone coordinate meets the conic's box
    const bool onx = arc.monotone_axis == Axis::X;
    auto coord = [&](double t) { const Point2 p = arc.eval(t); return onx ? p.x : p.y; };
    const double lo = (onx ? qb.xmin : qb.ymin) - pad, hi = (onx ? qb.xmax : qb.ymax) + pad;
    const bool up = coord(1) > coord(0);
    auto solve = [&](double level) {
      double a = 0, b = 1;
      for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (a + b);
        if ((coord(m) < level) == up) a = m; else b = m;
      }
      return 0.5 * (a + b);
    };
    const double c0 = std::min(coord(0), coord(1)), c1 = std::max(coord(0), coord(1));
    if (c1 < lo || c0 > hi) continue;
    double t0 = c0 >= lo ? (up ? 0.0 : 1.0) : solve(lo);
    double t1 = c1 <= hi ? (up ? 1.0 : 0.0) : solve(hi);
    if (t0 > t1) std::swap(t0, t1);
    auto g = [&](double t) {
      const Point2 p = arc.eval(t);
      const double gn = norm(q.gradient(p));
      return gn > 0 ? q(p) / gn : q(p);
    };
    std::vector<std::pair<double, bool>> roots;
    scan_roots(g, tol.eps_coincide, 64, t0, t1, roots);
    for (auto [t, crossing] : roots) {
      const Point2 p = arc.eval(t);
      const Point2 tq{-q.gradient(p).y, q.gradient(p).x};
      const bool tr = crossing && transversal_at(tq, arc.derivative(t), tol);
      push_unique(out, {p, tr}, 1e-6 * scale);
    }
  }
  return out;
}

void arc_arc(const MonotoneArc& a, double a0, double a1, const MonotoneArc& b, double b0,
             double b1, int depth, double scale, std::vector<std::pair<double, double>>& hits) {
  auto box = [](const MonotoneArc& m, double t0, double t1) {
    Box bx{1e300, 1e300, -1e300, -1e300};
    for (int k = 0; k <= 8; ++k) {
      const Point2 p = m.eval(t0 + (t1 - t0) * k / 8.0);
      bx = merge(bx, Box{p.x, p.y, p.x, p.y});
    }
    return bx;
  };
  Box ba = box(a, a0, a1), bb = box(b, b0, b1);
  const double pad = std::max({ba.diameter(), bb.diameter()}) * 0.1 + 1e-12 * scale;
  if (ba.xmax + pad < bb.xmin || bb.xmax + pad < ba.xmin || ba.ymax + pad < bb.ymin ||
      bb.ymax + pad < ba.ymin)
    return;
  if (depth >= 12 || std::max(ba.diameter(), bb.diameter()) < 1e-4 * scale) {
    double s = 0.5 * (a0 + a1), t = 0.5 * (b0 + b1);
    for (int it = 0; it < 40; ++it) {
      const Point2 r = a.eval(s) - b.eval(t);
      const Point2 da = a.derivative(s), db = b.derivative(t);
      const double det = -da.x * db.y + da.y * db.x;
      if (std::abs(det) < 1e-300) return;
      const double ds = (-r.x * -db.y - (-db.x) * -r.y) / det;
      const double dt = (da.x * -r.y - da.y * -r.x) / det;
      s += ds;
      t += dt;
      if (std::abs(ds) + std::abs(dt) < 1e-15) break;
    }
    if (s < -1e-9 || s > 1 + 1e-9 || t < -1e-9 || t > 1 + 1e-9) return;
    if (distance(a.eval(s), b.eval(t)) < 1e-10 * scale)
      hits.push_back({std::clamp(s, 0.0, 1.0), std::clamp(t, 0.0, 1.0)});
    return;
  }
  const double am = 0.5 * (a0 + a1), bm = 0.5 * (b0 + b1);
  arc_arc(a, a0, am, b, b0, bm, depth + 1, scale, hits);
  arc_arc(a, a0, am, b, bm, b1, depth + 1, scale, hits);
  arc_arc(a, am, a1, b, b0, bm, depth + 1, scale, hits);
  arc_arc(a, am, a1, b, bm, b1, depth + 1, scale, hits);
}

std::vector<Intersection> chain_chain(const ArcChain& c1, const ArcChain& c2, double scale,
                                      const TolerancePolicy& tol) {
  std::vector<Intersection> out;
  for (const auto& a : c1.arcs()) {
    for (const auto& b : c2.arcs()) {
      std::vector<std::pair<double, double>> hits;
      arc_arc(a, 0, 1, b, 0, 1, 0, scale, hits);
      for (auto [s, t] : hits) {
        const Point2 p = a.eval(s);
        push_unique(out, {p, transversal_at(a.derivative(s), b.derivative(t), tol)},
                    1e-6 * scale);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Intersection> intersect_curves(const CurveObject& c1, const CurveObject& c2,
                                           const TolerancePolicy& tol) {
  const double scale = std::max(merge(bounding_box(c1), bounding_box(c2)).diameter(), 1e-12);
  std::vector<Intersection> r;
  if (c1.is_circle() && c2.is_circle())
    r = circle_circle(std::get<Circle>(c1.shape), std::get<Circle>(c2.shape), tol);
  else if (!c1.is_chain() && !c2.is_chain())
    r = conic_conic(detail::frame_of(c1), detail::conic_of(c1), detail::conic_of(c2), scale, tol);
  else if (c1.is_chain() && c2.is_chain())
    r = chain_chain(std::get<ArcChain>(c1.shape), std::get<ArcChain>(c2.shape), scale, tol);
  else if (c1.is_chain())
    r = conic_chain(detail::conic_of(c2), bounding_box(c2), std::get<ArcChain>(c1.shape), scale, tol);
  else
    r = conic_chain(detail::conic_of(c1), bounding_box(c1), std::get<ArcChain>(c2.shape), scale, tol);
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
    return a.point.x != b.point.x ? a.point.x < b.point.x : a.point.y < b.point.y;
  });
  return r;
}

}  // namespace reebdom
