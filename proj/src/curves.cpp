#include "reebdom/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "reebdom/error.hpp"
#include "reebdom/tolerance.hpp"

namespace reebdom {

std::ostream& operator<<(std::ostream& os, Point2 p) { return os << '(' << p.x << ", " << p.y << ')'; }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::SliceAtCriticalValue: return "SliceAtCriticalValue";
    case ErrorKind::DegenerateRay: return "DegenerateRay";
    case ErrorKind::DegenerateEvents: return "DegenerateEvents";
    case ErrorKind::SeedOutsideBounded: return "SeedOutsideBounded";
    case ErrorKind::CurveNotTouching: return "CurveNotTouching";
    case ErrorKind::TriplePoint: return "TriplePoint";
    case ErrorKind::TangentialCrossing: return "TangentialCrossing";
    case ErrorKind::ExtraPoleOffBoundary: return "ExtraPoleOffBoundary";
    case ErrorKind::NonGenericSweep: return "NonGenericSweep";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::InvalidPointedDisk: return "InvalidPointedDisk";
    case ErrorKind::RegionVanishes: return "RegionVanishes";
    case ErrorKind::RegionDisconnected: return "RegionDisconnected";
    case ErrorKind::BasepointNotOnCurves: return "BasepointNotOnCurves";
    case ErrorKind::ForbiddenDirection: return "ForbiddenDirection";
    case ErrorKind::NoLSFound: return "NoLSFound";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::GapTooLarge: return "GapTooLarge";
    case ErrorKind::SimilarityBroken: return "SimilarityBroken";
    case ErrorKind::InitialDiskInvalid: return "InitialDiskInvalid";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::TubeSelfIntersection: return "TubeSelfIntersection";
    case ErrorKind::PlacementCollision: return "PlacementCollision";
    case ErrorKind::RealizationMismatch: return "RealizationMismatch";
    case ErrorKind::NotExtremalVertex: return "NotExtremalVertex";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail, std::optional<Point2> where)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), where_(where) {}

TolerancePolicy TolerancePolicy::for_diameter(double diameter) {
  const double d = diameter > 0 ? diameter : 1.0;
  return {1e-9 * d, 1e-7, 1e-9 * d};
}

bool TolerancePolicy::valid_for(double diameter) const {
  const double cap = 1e-3 * diameter;
  return eps_coincide > 0 && eps_tangent > 0 && eps_value > 0 && eps_coincide < cap &&
         eps_value < cap;
}

double Conic::geometric_residual(Point2 p) const {
  const double g = norm(gradient(p));
  const double f = std::abs((*this)(p));
  return g > 0 ? f / g : f;
}

double Ellipse::semi_axis_u() const { return std::sqrt(r / a1); }
double Ellipse::semi_axis_v() const { return std::sqrt(r / a2); }
Point2 Ellipse::axis_u() const { return {std::cos(rotation), std::sin(rotation)}; }
Point2 Ellipse::axis_v() const { return {-std::sin(rotation), std::cos(rotation)}; }

Ellipse Ellipse::standard(Point2 center, double half_width, double half_height) {
  // a1 w^2 = r and a2 h^2 = r with r = 1.
  return {center, 1.0 / (half_width * half_width), 1.0 / (half_height * half_height), 1.0, 0.0};
}

Conic conic_of(const Circle& c) {
  const double cx = c.center.x, cy = c.center.y;
  return {1.0, 0.0, 1.0, -2 * cx, -2 * cy, cx * cx + cy * cy - c.radius * c.radius};
}

Conic conic_of(const Ellipse& e) {
  // Quadratic form M = R^T diag(a1, a2) R with R rows = axis_u, axis_v.
  const Point2 u = e.axis_u(), v = e.axis_v();
  const double m11 = e.a1 * u.x * u.x + e.a2 * v.x * v.x;
  const double m12 = e.a1 * u.x * u.y + e.a2 * v.x * v.y;
  const double m22 = e.a1 * u.y * u.y + e.a2 * v.y * v.y;
  const double cx = e.center.x, cy = e.center.y;
  Conic q;
  q.A = m11;
  q.B = 2 * m12;
  q.C = m22;
  q.D = -2 * (m11 * cx + m12 * cy);
  q.E = -2 * (m12 * cx + m22 * cy);
  q.F = m11 * cx * cx + 2 * m12 * cx * cy + m22 * cy * cy - e.r;
  return q;
}

// --- MonotoneArc -----------------------------------------------------------

Point2 MonotoneArc::eval(double t) const {
  const double s = 1 - t;
  const double b0 = s * s * s, b1 = 3 * s * s * t, b2 = 3 * s * t * t, b3 = t * t * t;
  return {b0 * ctrl[0].x + b1 * ctrl[1].x + b2 * ctrl[2].x + b3 * ctrl[3].x,
          b0 * ctrl[0].y + b1 * ctrl[1].y + b2 * ctrl[2].y + b3 * ctrl[3].y};
}

Point2 MonotoneArc::derivative(double t) const {
  const double s = 1 - t;
  const Point2 u = ctrl[1] - ctrl[0], v = ctrl[2] - ctrl[1], w = ctrl[3] - ctrl[2];
  return 3.0 * (s * s * u + 2 * s * t * v + t * t * w);
}

MonotoneArc MonotoneArc::hermite(Point2 p0, Point2 d0, Point2 p1, Point2 d1, Axis axis) {
  return {{p0, p0 + (1.0 / 3.0) * d0, p1 - (1.0 / 3.0) * d1, p1}, axis};
}

MonotoneArc MonotoneArc::segment(Point2 p0, Point2 p1, Axis axis) {
  return {{p0, p0 + (1.0 / 3.0) * (p1 - p0), p0 + (2.0 / 3.0) * (p1 - p0), p1}, axis};
}

// --- ArcChain --------------------------------------------------------------

namespace {

// Interior parameters where the axis component of the derivative changes sign.
std::vector<double> turning_params(const MonotoneArc& arc, Axis axis) {
  auto comp = [axis](Point2 p) { return coord(p, axis); };
  const double u = comp(arc.ctrl[1] - arc.ctrl[0]);
  const double v = comp(arc.ctrl[2] - arc.ctrl[1]);
  const double w = comp(arc.ctrl[3] - arc.ctrl[2]);
  const double a = u - 2 * v + w, b = 2 * (v - u), c = u;
  std::vector<double> roots;
  const double scale = std::max({std::abs(u), std::abs(v), std::abs(w), 1e-300});
  if (std::abs(a) < 1e-12 * scale) {
    if (std::abs(b) > 1e-12 * scale) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4 * a * c;
    if (disc > 0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (b + std::copysign(sq, b));
      roots.push_back(q / a);
      if (q != 0) roots.push_back(c / q);
    }
  }
  std::vector<double> out;
  for (double t : roots)
    if (t > 1e-9 && t < 1 - 1e-9) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

struct SubPiece {
  int arc;
  double t0, t1;
  int dir;
};

}  // namespace

ArcChain::ArcChain(std::vector<MonotoneArc> arcs, std::vector<CriticalPoint> declared, double tol)
    : arcs_(std::move(arcs)), declared_(std::move(declared)) {
  if (arcs_.size() < 2) throw Error(ErrorKind::InvalidInput, "arc chain needs at least two arcs");
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const auto& a = arcs_[i];
    const auto& b = arcs_[(i + 1) % arcs_.size()];
    if (distance(a.end(), b.start()) > tol)
      throw Error(ErrorKind::InvalidInput, "arc chain is not closed at arc " + std::to_string(i),
                  a.end());
  }
  build_runs(tol);
  if (declared_.empty()) {
    declared_ = computed_x_;
    declared_.insert(declared_.end(), computed_y_.begin(), computed_y_.end());
    return;
  }
  auto matches = [&](const std::vector<CriticalPoint>& computed, Axis axis) {
    std::size_t n_declared = 0;
    for (const auto& d : declared_) {
      if (d.axis != axis) continue;
      ++n_declared;
      const bool found = std::any_of(computed.begin(), computed.end(), [&](const CriticalPoint& c) {
        return c.kind == d.kind && distance(c.point, d.point) <= std::max(tol, 1e-7);
      });
      if (!found)
        throw Error(ErrorKind::InvalidInput, "declared critical point is not a fold of the chain",
                    d.point);
    }
    if (n_declared != computed.size())
      throw Error(ErrorKind::InvalidInput, "chain has undeclared critical points");
  };
  matches(computed_x_, Axis::X);
  matches(computed_y_, Axis::Y);
}

std::vector<CriticalPoint> ArcChain::critical_points(Axis axis) const {
  return axis == Axis::X ? computed_x_ : computed_y_;
}

void ArcChain::build_runs(double tol) {
  for (Axis axis : {Axis::X, Axis::Y}) {
    std::vector<SubPiece> subs;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
      std::vector<double> cuts{0.0};
      for (double t : turning_params(arcs_[i], axis)) cuts.push_back(t);
      cuts.push_back(1.0);
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double diff = coord(arcs_[i].eval(cuts[k + 1]) - arcs_[i].eval(cuts[k]), axis);
        const double len = distance(arcs_[i].eval(cuts[k + 1]), arcs_[i].eval(cuts[k]));
        if (len <= tol * 1e-3) continue;
        if (std::abs(diff) <= 1e-12 * std::max(len, 1e-300))
          throw Error(ErrorKind::InvalidInput, "arc chain has a piece of constant coordinate",
                      arcs_[i].eval(cuts[k]));
        subs.push_back({i, cuts[k], cuts[k + 1], diff > 0 ? 1 : -1});
      }
    }
    auto& crit = axis == Axis::X ? computed_x_ : computed_y_;
    auto& runs = axis == Axis::X ? runs_x_ : runs_y_;
    crit.clear();
    runs.clear();
    const int n = static_cast<int>(subs.size());
    int start = -1;
    for (int k = 0; k < n; ++k) {
      if (subs[k].dir != subs[(k + n - 1) % n].dir) {
        start = k;
        break;
      }
    }
    if (start < 0) throw Error(ErrorKind::InvalidInput, "closed chain without turning points");
    ChainRun current;
    int current_dir = 0;
    for (int step = 0; step < n; ++step) {
      const SubPiece& s = subs[(start + step) % n];
      if (step > 0 && s.dir != current_dir) {
        runs.push_back(current);
        current = {};
        const Point2 p = arcs_[s.arc].eval(s.t0);
        crit.push_back({p, axis, current_dir > 0 ? ExtremumKind::Max : ExtremumKind::Min});
      }
      if (step == 0) {
        const Point2 p = arcs_[s.arc].eval(s.t0);
        crit.push_back({p, axis, s.dir > 0 ? ExtremumKind::Min : ExtremumKind::Max});
      }
      current_dir = s.dir;
      current.pieces.push_back({s.arc, s.t0, s.t1});
    }
    runs.push_back(current);
    for (auto& run : runs) {
      const auto& f = run.pieces.front();
      const auto& l = run.pieces.back();
      const double a = coord(arcs_[f.arc].eval(f.t0), axis);
      const double b = coord(arcs_[l.arc].eval(l.t1), axis);
      run.lo = std::min(a, b);
      run.hi = std::max(a, b);
    }
  }
}

std::vector<Point2> ArcChain::polyline(int samples_per_arc) const {
  std::vector<Point2> pts;
  for (const auto& a : arcs_)
    for (int k = 0; k < samples_per_arc; ++k) pts.push_back(a.eval(double(k) / samples_per_arc));
  return pts;
}

namespace {

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d, Point2& out) {
  const Point2 r = b - a, s = d - c;
  const double den = cross(r, s);
  if (den == 0) return false;
  const double t = cross(c - a, s) / den;
  const double u = cross(c - a, r) / den;
  if (t < 0 || t > 1 || u < 0 || u > 1) return false;
  out = a + t * r;
  return true;
}

}  // namespace

std::vector<Point2> ArcChain::self_intersections(double tol) const {
  constexpr int kSamples = 48;
  const int n = static_cast<int>(arcs_.size());
  std::vector<std::vector<Point2>> poly(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= kSamples; ++k) poly[i].push_back(arcs_[i].eval(double(k) / kSamples));
  std::vector<Point2> hits;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      for (int a = 0; a < kSamples; ++a) {
        for (int b = 0; b < kSamples; ++b) {
          Point2 x;
          if (!segments_cross(poly[i][a], poly[i][a + 1], poly[j][b], poly[j][b + 1], x)) continue;
          if (adjacent) {
            const Point2 shared = (j == i + 1) ? arcs_[i].end() : arcs_[i].start();
            if (distance(x, shared) <= std::max(tol, 1e-9) * 1e3) continue;
          }
          hits.push_back(x);
        }
      }
    }
  }
  return hits;
}

// --- shared helpers ---------------------------------------------------------

double Box::diameter() const { return std::hypot(xmax - xmin, ymax - ymin); }

Box merge(const Box& a, const Box& b) {
  return {std::min(a.xmin, b.xmin), std::min(a.ymin, b.ymin), std::max(a.xmax, b.xmax),
          std::max(a.ymax, b.ymax)};
}

Box bounding_box(const CurveObject& c) {
  return std::visit(
      [](const auto& s) -> Box {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return {s.center.x - s.radius, s.center.y - s.radius, s.center.x + s.radius,
                  s.center.y + s.radius};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          const Point2 u = s.semi_axis_u() * s.axis_u(), v = s.semi_axis_v() * s.axis_v();
          const double hx = std::hypot(u.x, v.x), hy = std::hypot(u.y, v.y);
          return {s.center.x - hx, s.center.y - hy, s.center.x + hx, s.center.y + hy};
        } else {
          Box b{1e300, 1e300, -1e300, -1e300};
          for (const auto& a : s.arcs())
            for (const auto& p : a.ctrl) b = merge(b, Box{p.x, p.y, p.x, p.y});
          return b;
        }
      },
      c.shape);
}

Point2 rotate(Point2 p, double angle, Point2 about) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  const Point2 d = p - about;
  return about + Point2{cs * d.x - sn * d.y, sn * d.x + cs * d.y};
}

namespace {

double normalize_rotation(double theta) {
  theta = std::fmod(theta, std::numbers::pi);
  if (theta < 0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  return theta;
}

template <class F>
ArcChain map_chain(const ArcChain& chain, F&& f, bool swap_axis_tag) {
  std::vector<MonotoneArc> arcs;
  for (const auto& a : chain.arcs()) {
    MonotoneArc m = a;
    for (auto& p : m.ctrl) p = f(p);
    if (swap_axis_tag) m.monotone_axis = other(a.monotone_axis);
    arcs.push_back(m);
  }
  return ArcChain(std::move(arcs), {}, 1e-9);
}

}  // namespace

CurveObject swap_axes(const CurveObject& c) {
  CurveObject out{c.id, {}};
  out.shape = std::visit(
      [](const auto& s) -> CurveShape {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return Circle{swapped(s.center), s.radius};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          Ellipse e = s;
          e.center = swapped(s.center);
          e.rotation = normalize_rotation(std::numbers::pi / 2 - s.rotation);
          return e;
        } else {
          return map_chain(s, [](Point2 p) { return swapped(p); }, true);
        }
      },
      c.shape);
  return out;
}

CurveObject rotate(const CurveObject& c, double angle, Point2 about) {
  CurveObject out{c.id, {}};
  out.shape = std::visit(
      [&](const auto& s) -> CurveShape {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return Circle{rotate(s.center, angle, about), s.radius};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          Ellipse e = s;
          e.center = rotate(s.center, angle, about);
          e.rotation = normalize_rotation(s.rotation + angle);
          return e;
        } else {
          return map_chain(s, [&](Point2 p) { return rotate(p, angle, about); }, false);
        }
      },
      c.shape);
  return out;
}

Point2 sample_curve(const CurveObject& c, double s) {
  return std::visit(
      [s](const auto& sh) -> Point2 {
        using T = std::decay_t<decltype(sh)>;
        const double th = 2 * std::numbers::pi * s;
        if constexpr (std::is_same_v<T, Circle>) {
          return sh.center + sh.radius * Point2{std::cos(th), std::sin(th)};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return sh.center + (sh.semi_axis_u() * std::cos(th)) * sh.axis_u() +
                 (sh.semi_axis_v() * std::sin(th)) * sh.axis_v();
        } else {
          const int n = static_cast<int>(sh.arcs().size());
          double f = s * n;
          int i = std::clamp(static_cast<int>(std::floor(f)), 0, n - 1);
          return sh.arcs()[i].eval(std::clamp(f - i, 0.0, 1.0));
        }
      },
      c.shape);
}

}  // namespace reebdom
