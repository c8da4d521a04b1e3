#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace reebdom::io {

namespace {

void check_fields(const json& j, const char* what, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) throw ParseError(std::string(what) + ": missing field '" + k + "'");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ParseError(std::string(what) + ": unknown field '" + k + "'");
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + ": not finite");
  return v;
}

Point2 point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw ParseError(std::string(what) + ": expected [x, y]");
  return {number(j[0], what), number(j[1], what)};
}

std::vector<Point2> points(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected a list of points");
  std::vector<Point2> out;
  for (const auto& p : j) out.push_back(point(p, what));
  return out;
}

json pt(Point2 p) { return json::array({p.x, p.y}); }

json pts(const std::vector<Point2>& ps) {
  json a = json::array();
  for (auto p : ps) a.push_back(pt(p));
  return a;
}

Axis axis_of(const json& j) {
  if (j == "x") return Axis::X;
  if (j == "y") return Axis::Y;
  throw ParseError("axis must be \"x\" or \"y\"");
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

CurveObject curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("curve: missing field 'kind'");
  const std::string kind = j["kind"];
  if (!j.contains("id") || !j["id"].is_string()) throw ParseError("curve: missing string field 'id'");
  const std::string id = j["id"];
  if (kind == "circle") {
    check_fields(j, "circle", {"id", "kind", "center", "radius"});
    const double r = number(j["radius"], "radius");
    if (!(r > 0)) throw ParseError("circle " + id + ": radius must be positive");
    return {id, Circle{point(j["center"], "center"), r}};
  }
  if (kind == "ellipse") {
    check_fields(j, "ellipse", {"id", "kind", "center", "a1", "a2"}, {"r", "rotation"});
    Ellipse e;
    e.center = point(j["center"], "center");
    e.a1 = number(j["a1"], "a1");
    e.a2 = number(j["a2"], "a2");
    e.r = j.contains("r") ? number(j["r"], "r") : 1.0;
    e.rotation = j.contains("rotation") ? number(j["rotation"], "rotation") : 0.0;
    if (!(e.a1 > 0 && e.a2 > 0 && e.r > 0)) throw ParseError("ellipse " + id + ": a1, a2, r must be positive");
    return {id, e};
  }
  if (kind == "arcchain") {
    check_fields(j, "arcchain", {"id", "kind", "arcs"}, {"critical_points"});
    std::vector<MonotoneArc> arcs;
    for (const auto& a : j["arcs"]) {
      check_fields(a, "arc", {"ctrl"}, {"axis"});
      const auto c = points(a["ctrl"], "ctrl");
      if (c.size() != 4) throw ParseError("arc: ctrl needs 4 points");
      MonotoneArc m{{c[0], c[1], c[2], c[3]}, a.contains("axis") ? axis_of(a["axis"]) : Axis::X};
      arcs.push_back(m);
    }
    std::vector<CriticalPoint> declared;
    if (j.contains("critical_points")) {
      for (const auto& c : j["critical_points"]) {
        check_fields(c, "critical point", {"point", "axis", "kind"});
        ExtremumKind k;
        if (c["kind"] == "min") k = ExtremumKind::Min;
        else if (c["kind"] == "max") k = ExtremumKind::Max;
        else throw ParseError("critical point kind must be \"min\" or \"max\"");
        declared.push_back({point(c["point"], "point"), axis_of(c["axis"]), k});
      }
    }
    Box b{1e300, 1e300, -1e300, -1e300};
    for (const auto& a : arcs)
      for (auto p : a.ctrl) b = merge(b, Box{p.x, p.y, p.x, p.y});
    return {id, ArcChain(std::move(arcs), std::move(declared), 1e-9 * std::max(1.0, b.diameter()))};
  }
  throw ParseError("curve " + id + ": unknown kind '" + kind + "'");
}

json curve_to_json(const CurveObject& c) {
  json j{{"id", c.id}};
  if (const auto* ci = std::get_if<Circle>(&c.shape)) {
    j["kind"] = "circle";
    j["center"] = pt(ci->center);
    j["radius"] = ci->radius;
  } else if (const auto* e = std::get_if<Ellipse>(&c.shape)) {
    j["kind"] = "ellipse";
    j["center"] = pt(e->center);
    j["a1"] = e->a1;
    j["a2"] = e->a2;
    j["r"] = e->r;
    j["rotation"] = e->rotation;
  } else {
    const auto& ch = std::get<ArcChain>(c.shape);
    j["kind"] = "arcchain";
    json arcs = json::array();
    for (const auto& a : ch.arcs())
      arcs.push_back({{"ctrl", pts({a.ctrl.begin(), a.ctrl.end()})}, {"axis", a.monotone_axis == Axis::X ? "x" : "y"}});
    j["arcs"] = arcs;
    json cps = json::array();
    for (const auto& cp : ch.declared())
      cps.push_back({{"point", pt(cp.point)},
                     {"axis", cp.axis == Axis::X ? "x" : "y"},
                     {"kind", cp.kind == ExtremumKind::Min ? "min" : "max"}});
    j["critical_points"] = cps;
  }
  return j;
}

Scene scene_from_json(const json& j) {
  check_fields(j, "scene", {"curves", "seed"}, {"extra_poles", "tolerance"});
  Scene s;
  if (!j["curves"].is_array()) throw ParseError("scene: curves must be a list");
  for (const auto& c : j["curves"]) s.curves.push_back(curve_from_json(c));
  s.seed = point(j["seed"], "seed");
  if (j.contains("extra_poles")) s.extra_poles = points(j["extra_poles"], "extra_poles");
  if (j.contains("tolerance")) {
    const auto& t = j["tolerance"];
    check_fields(t, "tolerance", {}, {"eps_coincide", "eps_tangent", "eps_value"});
    if (t.contains("eps_coincide")) s.tol.eps_coincide = number(t["eps_coincide"], "eps_coincide");
    if (t.contains("eps_tangent")) s.tol.eps_tangent = number(t["eps_tangent"], "eps_tangent");
    if (t.contains("eps_value")) s.tol.eps_value = number(t["eps_value"], "eps_value");
  }
  return s;
}

json scene_to_json(const Scene& s) {
  json curves = json::array();
  for (const auto& c : s.curves) curves.push_back(curve_to_json(c));
  return {{"curves", curves},
          {"seed", pt(s.seed)},
          {"extra_poles", pts(s.extra_poles)},
          {"tolerance",
           {{"eps_coincide", s.tol.eps_coincide}, {"eps_tangent", s.tol.eps_tangent}, {"eps_value", s.tol.eps_value}}}};
}

PointedDisk disk_from_json(const json& j) {
  check_fields(j, "disk", {"curve", "side_seed", "basepoint"}, {"incoming_poles"});
  PointedDisk pd;
  pd.curve = curve_from_json(j["curve"]);
  pd.side_seed = point(j["side_seed"], "side_seed");
  pd.basepoint = point(j["basepoint"], "basepoint");
  if (j.contains("incoming_poles")) pd.incoming_poles = points(j["incoming_poles"], "incoming_poles");
  return pd;
}

json disk_to_json(const PointedDisk& pd) {
  return {{"curve", curve_to_json(pd.curve)},
          {"side_seed", pt(pd.side_seed)},
          {"basepoint", pt(pd.basepoint)},
          {"incoming_poles", pts(pd.incoming_poles)}};
}

EmbeddedGraph graph_from_json(const json& j) {
  check_fields(j, "graph", {"vertices", "edges"});
  EmbeddedGraph g;
  for (const auto& v : j["vertices"]) {
    check_fields(v, "vertex", {"id", "x", "y"});
    if (!v["id"].is_string()) throw ParseError("vertex id must be a string");
    g.vertices.push_back({v["id"], {number(v["x"], "x"), number(v["y"], "y")}});
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("edge must be [id, id] or [id, id, [[x, y], ...]]");
    GraphEdge ge{g.index_of(e[0]), g.index_of(e[1]), {}};
    if (ge.u < 0 || ge.v < 0) throw ParseError("edge names an unknown vertex");
    if (e.size() == 3) ge.via = points(e[2], "via");
    g.edges.push_back(ge);
  }
  return g;
}

json graph_to_json(const EmbeddedGraph& g) {
  json vs = json::array(), es = json::array();
  for (const auto& v : g.vertices) vs.push_back({{"id", v.id}, {"x", v.pos.x}, {"y", v.pos.y}});
  for (const auto& e : g.edges) {
    json a = json::array({g.vertices[e.u].id, g.vertices[e.v].id});
    if (!e.via.empty()) a.push_back(pts(e.via));
    es.push_back(a);
  }
  return {{"vertices", vs}, {"edges", es}};
}

std::string num6(double v) {
  if (v == 0) v = 0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string point6(Point2 p) { return "(" + num6(p.x) + "," + num6(p.y) + ")"; }

std::string digraph_dot(const PRDigraph& g) {
  std::ostringstream o;
  o << "digraph PR {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    o << "  v" << v << " [label=\"" << num6(g.vertices[v].value) << "\"];\n";
  for (auto [a, b] : g.edges) o << "  v" << a << " -> v" << b << ";\n";
  o << "}\n";
  return o.str();
}

json digraph_json(const PRDigraph& g) {
  json vs = json::array(), es = json::array();
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    vs.push_back({{"id", v}, {"value", g.vertices[v].value}, {"witness", pt(g.vertices[v].witness)}});
  for (auto [a, b] : g.edges) es.push_back(json::array({a, b}));
  return {{"axis", index(g.axis)}, {"vertices", vs}, {"edges", es}};
}

json report_json(const ClassReport& r) {
  return {{"connected", r.connected},
          {"components", r.components},
          {"S", r.small},
          {"PS", r.ps},
          {"LS", r.ls},
          {"PLS", r.pls},
          {"evidence", {{"small", pts(r.evidence.small)}, {"locally_small", pts(r.evidence.locally_small)}}}};
}

std::vector<std::string> jitter_scene(Scene& s, double amount) {
  std::vector<std::string> log;
  if (amount <= 0) return log;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> U(-amount, amount);
  for (auto& c : s.curves) {
    const Point2 d{U(rng), U(rng)};
    const double dr = U(rng);
    if (auto* ci = std::get_if<Circle>(&c.shape)) {
      ci->center = ci->center + d;
      ci->radius += dr;
    } else if (auto* e = std::get_if<Ellipse>(&c.shape)) {
      e->center = e->center + d;
      e->r *= 1 + dr / std::max(e->semi_axis_u(), e->semi_axis_v());
    } else {
      auto& ch = std::get<ArcChain>(c.shape);
      std::vector<MonotoneArc> arcs = ch.arcs();
      for (auto& a : arcs)
        for (auto& p : a.ctrl) p = p + d;
      std::vector<CriticalPoint> cps = ch.declared();
      for (auto& cp : cps) cp.point = cp.point + d;
      ch = ArcChain(std::move(arcs), std::move(cps), 1e-9 * std::max(1.0, bounding_box(c).diameter()));
    }
    log.push_back("jitter " + c.id + " by " + point6(d) + " size " + num6(dr));
  }
  return log;
}

// --- SVG ------------------------------------------------------------------

namespace {

struct Canvas {
  Box box;
  double scale;
  std::string x(double v) const { return num6((v - box.xmin) * scale); }
  std::string y(double v) const { return num6((box.ymax - v) * scale); }
  std::string at(Point2 p) const { return x(p.x) + "," + y(p.y); }
};

std::string polyline_path(const Canvas& cv, const std::vector<Point2>& ps, bool close) {
  std::string d;
  for (std::size_t i = 0; i < ps.size(); ++i) d += (i ? " L" : "M") + cv.at(ps[i]);
  if (close) d += " Z";
  return d;
}

std::vector<Point2> curve_points(const CurveObject& c, int samples) {
  if (const auto* ch = std::get_if<ArcChain>(&c.shape)) {
    auto p = ch->polyline(std::max(4, samples / std::max<int>(1, ch->arcs().size())));
    return p;
  }
  std::vector<Point2> out;
  for (int k = 0; k < samples; ++k) out.push_back(sample_curve(c, double(k) / samples));
  return out;
}

}  // namespace

std::string render_svg(const Scene& s, const RenderOptions& opt) {
  const RefinedDomain dom = select_region(s);
  const auto& dec = *dom.dec;
  Box b = s.bounds();
  if (opt.disk) b = merge(b, bounding_box(opt.disk->curve));
  const double span = std::max(b.xmax - b.xmin, b.ymax - b.ymin);
  const double pad = 0.05 * span;
  b = {b.xmin - pad, b.ymin - pad, b.xmax + pad, b.ymax + pad};
  PRDigraph reeb;
  PoleSet poles;
  if (opt.show_poles || opt.show_reeb_overlay) poles = assemble_poles(dom, s.extra_poles);
  double band = 0;
  if (opt.show_reeb_overlay) {
    reeb = poincare_reeb(dom, poles, Axis::X);
    band = 0.35 * (b.ymax - b.ymin);
    b.ymin -= band;
  }
  const double width = 800;
  const Canvas cv{b, width / (b.xmax - b.xmin)};
  const double height = (b.ymax - b.ymin) * cv.scale;

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num6(width) << "\" height=\""
    << num6(height) << "\" viewBox=\"0 0 " << num6(width) << " " << num6(height) << "\">\n";

  // region: union of its trapezoids, each traced along its two branches
  o << "<path fill=\"#cfe3f7\" stroke=\"none\" d=\"";
  const int strips = 24;
  bool first = true;
  for (int t : dom.trapezoids) {
    const auto& tr = dec.trapezoids()[t];
    if (tr.lower < 0 || tr.upper < 0) continue;
    const auto& sl = dec.slabs()[tr.slab];
    std::vector<Point2> poly;
    for (int k = 0; k <= strips; ++k) {
      const double x = sl.x0 + (sl.x1 - sl.x0) * k / strips;
      poly.push_back({x, dec.branch_y(tr.lower, x)});
    }
    for (int k = strips; k >= 0; --k) {
      const double x = sl.x0 + (sl.x1 - sl.x0) * k / strips;
      poly.push_back({x, dec.branch_y(tr.upper, x)});
    }
    o << (first ? "" : " ") << polyline_path(cv, poly, true);
    first = false;
  }
  o << "\"/>\n";

  for (const auto& c : s.curves)
    o << "<path id=\"" << c.id << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" d=\""
      << polyline_path(cv, curve_points(c, opt.samples), true) << "\"/>\n";

  if (opt.disk) {
    o << "<path id=\"disk-" << opt.disk->curve.id << "\" fill=\"#3060e0\" fill-opacity=\"0.25\" stroke=\"#1030c0\" "
      << "stroke-width=\"1.5\" d=\"" << polyline_path(cv, curve_points(opt.disk->curve, opt.samples), true) << "\"/>\n";
    o << "<circle cx=\"" << cv.x(opt.disk->basepoint.x) << "\" cy=\"" << cv.y(opt.disk->basepoint.y)
      << "\" r=\"4\" fill=\"#1030c0\"/>\n";
  }

  if (opt.show_poles) {
    std::vector<Point2> all = poles.all();
    std::sort(all.begin(), all.end(), [](Point2 p, Point2 q) { return p.x != q.x ? p.x < q.x : p.y < q.y; });
    for (auto p : all) o << "<circle cx=\"" << cv.x(p.x) << "\" cy=\"" << cv.y(p.y) << "\" r=\"3\" fill=\"#000000\"/>\n";
  }

  if (opt.show_reeb_overlay) {
    // vertices keep their x; heights are squeezed into the band below the scene
    const Box sb = s.bounds();
    const double top = sb.ymin - 0.1 * band, bottom = sb.ymin - 0.9 * band;
    auto place = [&](const PRVertex& v) {
      const double f = sb.ymax > sb.ymin ? (v.witness.y - sb.ymin) / (sb.ymax - sb.ymin) : 0.5;
      return Point2{v.value, bottom + f * (top - bottom)};
    };
    o << "<g id=\"reeb\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"1.5\">\n";
    // parallel edges bow apart
    std::map<std::pair<int, int>, int> seen;
    const auto mult = reeb.edge_multiplicity();
    for (auto e : reeb.edges) {
      const int i = seen[e]++, m = mult.at(e);
      const Point2 a = place(reeb.vertices[e.first]), c = place(reeb.vertices[e.second]);
      const Point2 mid{0.5 * (a.x + c.x), 0.5 * (a.y + c.y) + (i - 0.5 * (m - 1)) * 0.25 * band};
      o << "<path d=\"" << polyline_path(cv, {a, mid, c}, false) << "\"/>\n";
    }
    for (const auto& v : reeb.vertices) {
      const Point2 p = place(v);
      o << "<circle cx=\"" << cv.x(p.x) << "\" cy=\"" << cv.y(p.y) << "\" r=\"3.5\" fill=\"#c03030\" stroke=\"none\"/>\n";
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace reebdom::io
