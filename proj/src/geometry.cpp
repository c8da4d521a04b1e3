#include "reebdom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail.hpp"

namespace reebdom {

namespace {

struct ChainParam {
  int arc = 0;
  double t = 0;
  double dist = 1e300;
};

ChainParam nearest_on_chain(const ArcChain& chain, Point2 p) {
  ChainParam best;
  const auto& arcs = chain.arcs();
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    constexpr int kSamples = 32;
    int kbest = 0;
    double dbest = 1e300;
    for (int k = 0; k <= kSamples; ++k) {
      const double d = distance(arcs[i].eval(double(k) / kSamples), p);
      if (d < dbest) dbest = d, kbest = k;
    }
    double a = std::max(0.0, (kbest - 1.0) / kSamples), b = std::min(1.0, (kbest + 1.0) / kSamples);
    const double phi = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 80; ++it) {
      const double c = b - phi * (b - a), d = a + phi * (b - a);
      if (distance(arcs[i].eval(c), p) < distance(arcs[i].eval(d), p)) b = d; else a = c;
    }
    const double t = 0.5 * (a + b);
    const double d = distance(arcs[i].eval(t), p);
    if (d < best.dist) best = {i, t, d};
  }
  return best;
}

double nearest_on_conic(const detail::ConicFrame& f, Point2 p) {
  constexpr int kSamples = 256;
  int kbest = 0;
  double dbest = 1e300;
  for (int k = 0; k < kSamples; ++k) {
    const double d = distance(f.at(2 * std::numbers::pi * k / kSamples), p);
    if (d < dbest) dbest = d, kbest = k;
  }
  double a = 2 * std::numbers::pi * (kbest - 1) / kSamples;
  double b = 2 * std::numbers::pi * (kbest + 1) / kSamples;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 80; ++it) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (distance(f.at(c), p) < distance(f.at(d), p)) b = d; else a = c;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<CriticalPoint> projection_critical_points(const CurveObject& c, Axis axis) {
  if (const auto* chain = std::get_if<ArcChain>(&c.shape)) return chain->critical_points(axis);
  const auto f = detail::frame_of(c);
  const double t = axis == Axis::X ? std::atan2(f.v.x, f.u.x) : std::atan2(f.v.y, f.u.y);
  return {{f.at(t + std::numbers::pi), axis, ExtremumKind::Min}, {f.at(t), axis, ExtremumKind::Max}};
}

std::vector<double> SliceResult::coords() const {
  std::vector<double> out;
  for (const auto& h : hits) out.push_back(h.coord);
  return out;
}

SliceResult slice_curve(const CurveObject& c, Axis axis, double value, const TolerancePolicy& tol) {
  SliceResult res;
  for (const auto& cp : projection_critical_points(c, axis))
    if (std::abs(coord(cp.point, axis) - value) <= tol.eps_value) res.near_critical = true;

  if (const auto* chain = std::get_if<ArcChain>(&c.shape)) {
    std::vector<double> raw;
    for (const auto& run : chain->runs(axis)) {
      if (value < run.lo - tol.eps_value || value > run.hi + tol.eps_value) continue;
      const double v = std::clamp(value, run.lo, run.hi);
      for (const auto& piece : run.pieces) {
        const auto& arc = chain->arcs()[piece.arc];
        const double a = coord(arc.eval(piece.t0), axis), b = coord(arc.eval(piece.t1), axis);
        if (v < std::min(a, b) || v > std::max(a, b)) continue;
        const double t = detail::solve_monotone(arc, axis, piece.t0, piece.t1, v);
        raw.push_back(coord(arc.eval(t), other(axis)));
        break;
      }
    }
    std::sort(raw.begin(), raw.end());
    for (double r : raw) {
      if (!res.hits.empty() && std::abs(res.hits.back().coord - r) <= tol.slack()) {
        res.hits.back().multiplicity = 2;
        continue;
      }
      res.hits.push_back({r, 1});
    }
    return res;
  }

  const Conic q = detail::conic_of(c);
  double a2, a1, a0;
  if (axis == Axis::X) {
    a2 = q.C, a1 = q.B * value + q.E, a0 = q.A * value * value + q.D * value + q.F;
  } else {
    a2 = q.A, a1 = q.B * value + q.D, a0 = q.C * value * value + q.E * value + q.F;
  }
  const double disc = a1 * a1 - 4 * a2 * a0;
  if (res.near_critical && std::abs(disc) <= 1e-6 * a1 * a1 + 1e-12) {
    res.hits.push_back({-a1 / (2 * a2), 2});
    return res;
  }
  if (disc < 0) {
    if (res.near_critical) res.hits.push_back({-a1 / (2 * a2), 2});
    return res;
  }
  const double sq = std::sqrt(disc);
  double r1 = (-a1 - sq) / (2 * a2), r2 = (-a1 + sq) / (2 * a2);
  if (r1 > r2) std::swap(r1, r2);
  res.hits.push_back({r1, 1});
  res.hits.push_back({r2, 1});
  return res;
}

double distance_to_curve(const CurveObject& c, Point2 p) {
  if (const auto* chain = std::get_if<ArcChain>(&c.shape)) return nearest_on_chain(*chain, p).dist;
  const auto f = detail::frame_of(c);
  return distance(f.at(nearest_on_conic(f, p)), p);
}

Point2 tangent_at(const CurveObject& c, Point2 p) {
  Point2 t;
  if (const auto* chain = std::get_if<ArcChain>(&c.shape)) {
    const auto np = nearest_on_chain(*chain, p);
    t = chain->arcs()[np.arc].derivative(np.t);
  } else {
    const auto f = detail::frame_of(c);
    t = f.tangent(nearest_on_conic(f, p));
  }
  const double n = norm(t);
  return n > 0 ? (1.0 / n) * t : t;
}

Containment point_in_interior(const CurveObject& c, Point2 p, const TolerancePolicy& tol) {
  if (!c.is_chain()) {
    const Conic q = detail::conic_of(c);
    if (q.geometric_residual(p) <= tol.eps_coincide) return Containment::On;
    return q(p) < 0 ? Containment::Inside : Containment::Outside;
  }
  if (distance_to_curve(c, p) <= tol.eps_coincide) return Containment::On;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const CurveObject probe = attempt == 0 ? c : rotate(c, 0.3917 * attempt, p);
    const auto s = slice_curve(probe, Axis::X, p.x, tol);
    if (s.near_critical) continue;
    int above = 0;
    for (const auto& h : s.hits)
      if (h.coord > p.y) above += h.multiplicity;
    return above % 2 == 1 ? Containment::Inside : Containment::Outside;
  }
  throw Error(ErrorKind::DegenerateRay, "every probe ray grazes a critical point", p);
}

// --- SweepCurve -------------------------------------------------------------

SweepCurve::SweepCurve(const CurveObject& c, int curve_index) : curve_(&c) {
  if (const auto* chain = std::get_if<ArcChain>(&c.shape)) {
    const auto& runs = chain->runs(Axis::X);
    for (int i = 0; i < static_cast<int>(runs.size()); ++i)
      branches_.push_back({curve_index, i, runs[i].lo, runs[i].hi});
    return;
  }
  conic_ = detail::conic_of(c);
  const auto cps = projection_critical_points(c, Axis::X);
  const double x0 = cps[0].point.x, x1 = cps[1].point.x;
  branches_.push_back({curve_index, 0, x0, x1});
  branches_.push_back({curve_index, 1, x0, x1});
}

double SweepCurve::eval(const Branch& b, double x) const {
  x = std::clamp(x, b.x0, b.x1);
  if (const auto* chain = std::get_if<ArcChain>(&curve_->shape)) {
    const auto& run = chain->runs(Axis::X)[b.index];
    for (const auto& piece : run.pieces) {
      const auto& arc = chain->arcs()[piece.arc];
      const double a = arc.eval(piece.t0).x, e = arc.eval(piece.t1).x;
      if (x < std::min(a, e) || x > std::max(a, e)) continue;
      return arc.eval(detail::solve_monotone(arc, Axis::X, piece.t0, piece.t1, x)).y;
    }
    const auto& last = run.pieces.back();
    return chain->arcs()[last.arc].eval(last.t1).y;
  }
  const double a2 = conic_.C, a1 = conic_.B * x + conic_.E;
  const double a0 = conic_.A * x * x + conic_.D * x + conic_.F;
  const double sq = std::sqrt(std::max(0.0, a1 * a1 - 4 * a2 * a0));
  return b.index == 0 ? (-a1 - sq) / (2 * a2) : (-a1 + sq) / (2 * a2);
}

}  // namespace reebdom
