#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "io.hpp"

using namespace reebdom;
using io::json;

namespace {

struct Globals {
  double tolerance = 0;
  double jitter = 0;
  std::string seed_point;
};

Point2 parse_xy(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw io::ParseError("expected x,y but got '" + s + "'");
  try {
    std::size_t a = 0, b = 0;
    const double x = std::stod(s.substr(0, comma), &a);
    const double y = std::stod(s.substr(comma + 1), &b);
    if (a != comma || b != s.size() - comma - 1) throw std::invalid_argument(s);
    return {x, y};
  } catch (const std::logic_error&) {
    throw io::ParseError("expected x,y but got '" + s + "'");
  }
}

Scene load_scene(const std::string& path, const Globals& g) {
  Scene s = io::scene_from_json(io::read_json_file(path));
  if (g.tolerance > 0) s.tol.eps_coincide = s.tol.eps_value = g.tolerance;
  if (!g.seed_point.empty()) s.seed = parse_xy(g.seed_point);
  for (const auto& line : io::jitter_scene(s, g.jitter)) std::cerr << line << "\n";
  return s;
}

void print_error(const Error& e) {
  std::cerr << to_string(e.kind());
  if (e.where()) std::cerr << " " << io::point6(*e.where());
  std::string msg = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  while (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
  std::cerr << ": " << msg << "\n";
}

Axis axis_from(int a) {
  if (a != 1 && a != 2) throw io::ParseError("--axis must be 1 or 2");
  return a == 1 ? Axis::X : Axis::Y;
}

int cmd_validate(const std::string& scene, const Globals& g) {
  const Scene s = load_scene(scene, g);
  const RefinedDomain dom = select_region(s);
  std::cout << "ok: " << s.curves.size() << " curves, " << dom.boundary_incidence.size()
            << " on the boundary, " << dom.double_points.size() << " double points\n";
  return 0;
}

int cmd_poles(const std::string& scene, const Globals& g) {
  const Scene s = load_scene(scene, g);
  const RefinedDomain dom = select_region(s);
  const PoleSet p = assemble_poles(dom, s.extra_poles);
  auto list = [](const std::vector<Point2>& v) {
    json a = json::array();
    for (auto q : v) a.push_back(json::array({q.x, q.y}));
    return a;
  };
  std::cout << json{{"double_points", list(dom.double_points)},
                    {"F1", list(p.f1)},
                    {"F2", list(p.f2)},
                    {"extra", list(p.extra)}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_reeb(const std::string& scene, int axis, const std::string& format, int oracle, const Globals& g) {
  const Axis ax = axis_from(axis);
  const Scene s = load_scene(scene, g);
  const RefinedDomain dom = select_region(s);
  const PoleSet poles = assemble_poles(dom, s.extra_poles);
  const PRDigraph d = poincare_reeb(dom, poles, ax);
  if (format == "dot") std::cout << io::digraph_dot(d);
  else std::cout << io::digraph_json(d).dump(2) << "\n";
  if (oracle > 0) {
    const PRDigraph grid = reference_reeb_grid(dom, poles, ax, oracle);
    const bool iso = digraph_isomorphic(d, grid).has_value();
    std::cout << "oracle: " << (iso ? "isomorphic" : "NOT isomorphic") << "\n";
    if (!iso) return 1;
  }
  return 0;
}

int cmd_classify(const std::string& scene, const std::string& disk, const Globals& g) {
  const Scene s = load_scene(scene, g);
  const PointedDisk pd = io::disk_from_json(io::read_json_file(disk));
  const RefinedDomain dom = select_region(s);
  const ClassReport r = classify(dom, assemble_poles(dom, s.extra_poles), pd);
  std::cout << io::report_json(r).dump(2) << "\n";
  return 0;
}

int cmd_grow(const std::string& scene, const std::string& disk, const std::string& ls_from,
             const std::string& ls_to, const std::string& out, const Globals& g) {
  const Scene s = load_scene(scene, g);
  const RefinedDomain dom = select_region(s);
  const PoleSet poles = assemble_poles(dom, s.extra_poles);
  PointedDisk pd;
  if (!disk.empty()) {
    pd = io::disk_from_json(io::read_json_file(disk));
  } else {
    if (ls_from.empty() || ls_to.empty()) throw io::ParseError("grow needs a disk file or --ls-from and --ls-to");
    pd = choose_ls_ellipse(dom, poles, parse_xy(ls_from), parse_xy(ls_to));
  }
  const ClassReport r = classify(dom, poles, pd);
  auto [nd, np] = apply_addition(dom, poles, pd);
  Scene grown = nd.scene();
  grown.extra_poles = np.extra;
  const json result{{"report", io::report_json(r)},
                    {"disk", io::disk_to_json(pd)},
                    {"reeb", io::digraph_json(poincare_reeb(nd, np, Axis::X))}};
  std::cout << result.dump(2) << "\n";
  const std::string text = io::scene_to_json(grown).dump(2) + "\n";
  if (out.empty()) std::cout << text;
  else io::write_text_file(out, text);
  return 0;
}

int cmd_shrink(const std::string& scene, const std::string& disk, const std::string& kind, int steps,
               const std::string& frames, const Globals& g) {
  const Scene s = load_scene(scene, g);
  const RefinedDomain dom = select_region(s);
  const PoleSet poles = assemble_poles(dom, s.extra_poles);
  const PointedDisk pd = io::disk_from_json(io::read_json_file(disk));
  ShrinkFamily f;
  if (kind == "chord") f = shrink_family_chord(dom, poles, pd, steps);
  else if (kind == "concentric") f = shrink_family_concentric(dom, poles, pd.basepoint, disk_radius(pd), steps);
  else throw io::ParseError("--kind must be chord or concentric");
  const bool inv = family_reeb_invariant(dom, poles, f);
  json members = json::array();
  for (std::size_t k = 0; k < f.disks.size(); ++k)
    members.push_back({{"t", f.params[k]}, {"disk", io::disk_to_json(f.disks[k])}});
  std::cout << json{{"kind", kind}, {"invariant", inv}, {"members", members}}.dump(2) << "\n";
  if (!frames.empty()) {
    std::filesystem::create_directories(frames);
    for (std::size_t k = 0; k < f.disks.size(); ++k) {
      io::RenderOptions opt;
      opt.disk = &f.disks[k];
      char name[32];
      std::snprintf(name, sizeof name, "frame%03zu.svg", k);
      io::write_text_file((std::filesystem::path(frames) / name).string(), io::render_svg(s, opt));
    }
  }
  return inv ? 0 : 1;
}

void dump_realization(const std::filesystem::path& dir, const EmbeddedGraph& g, const Realization& r) {
  std::filesystem::create_directories(dir);
  io::write_text_file((dir / "scene.json").string(), io::scene_to_json(r.scene).dump(2) + "\n");
  io::write_text_file((dir / "reeb.dot").string(), io::digraph_dot(r.digraph));
  json m = json::object();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) m[g.vertices[v].id] = r.mapping[v];
  io::write_text_file((dir / "mapping.json").string(), m.dump(2) + "\n");
  io::RenderOptions opt;
  opt.show_poles = true;
  io::write_text_file((dir / "render.svg").string(), io::render_svg(r.scene, opt));
}

EmbeddedGraph load_graph(const std::string& path) {
  const EmbeddedGraph g = io::graph_from_json(io::read_json_file(path));
  const auto diag = validate_embedded_graph(g);
  if (!diag.empty()) {
    for (const auto& d : diag) std::cerr << d << "\n";
    throw Error(ErrorKind::InvalidInput, diag.front());
  }
  return g;
}

int cmd_realize(const std::string& graph, const std::string& out_dir) {
  const EmbeddedGraph g = load_graph(graph);
  const Realization r = realize(g);
  std::cout << "realized: " << r.digraph.vertices.size() << " vertices, " << r.digraph.edges.size()
            << " edges, " << r.ellipses.size() << " ellipses, isomorphism verified\n";
  if (!out_dir.empty()) dump_realization(out_dir, g, r);
  return 0;
}

int cmd_merge(const std::string& graph, const std::string& vertex, int j, const std::string& out_dir) {
  const EmbeddedGraph g = load_graph(graph);
  const int v0 = g.index_of(vertex);
  if (v0 < 0) throw io::ParseError("unknown vertex '" + vertex + "'");
  const MergeReport m = merge_extremal_pair(g, v0, j);
  const bool ok = m.two_points_at_extremum && m.two_components && m.injective_arcs && m.not_ls && m.same_as_unmerged;
  std::cout << json{{"merged", io::disk_to_json(m.merged)},
                    {"doublings", m.doublings},
                    {"two_points_at_extremum", m.two_points_at_extremum},
                    {"two_components", m.two_components},
                    {"injective_arcs", m.injective_arcs},
                    {"not_ls", m.not_ls},
                    {"same_as_unmerged", m.same_as_unmerged}}
                   .dump(2)
            << "\n";
  if (!out_dir.empty()) dump_realization(out_dir, g, m.result);
  return ok ? 0 : 1;
}

int cmd_render(const std::string& scene, const std::string& disk, const std::string& out, bool poles, bool overlay,
               const Globals& g) {
  const Scene s = load_scene(scene, g);
  io::RenderOptions opt;
  opt.show_poles = poles;
  opt.show_reeb_overlay = overlay;
  PointedDisk pd;
  if (!disk.empty()) {
    pd = io::disk_from_json(io::read_json_file(disk));
    opt.disk = &pd;
  }
  const std::string svg = io::render_svg(s, opt);
  if (out.empty()) std::cout << svg;
  else io::write_text_file(out, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poincare-Reeb digraphs of planar domains"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tolerance", g.tolerance, "absolute coincidence and value tolerance");
  app.add_option("--jitter", g.jitter, "translate every curve by a random vector of at most this size");
  app.add_option("--seed-point", g.seed_point, "override the scene seed, as x,y");

  std::string scene, disk, graph, out, out_dir, format = "dot", kind = "concentric", frames, ls_from, ls_to,
                                                 vertex;
  int axis = 1, oracle = 0, steps = 10, index = 0;
  bool show_poles = false, overlay = false;
  std::function<int()> run;

  auto* v = app.add_subcommand("validate", "check a scene and select its region");
  v->add_option("scene", scene)->required();
  v->callback([&] { run = [&] { return cmd_validate(scene, g); }; });

  auto* p = app.add_subcommand("poles", "list double points and folds");
  p->add_option("scene", scene)->required();
  p->callback([&] { run = [&] { return cmd_poles(scene, g); }; });

  auto* r = app.add_subcommand("reeb", "Poincare-Reeb digraph");
  r->add_option("scene", scene)->required();
  r->add_option("--axis", axis)->check(CLI::IsMember({1, 2}));
  r->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  r->add_option("--oracle", oracle, "cross-check against the raster oracle at this resolution");
  r->callback([&] { run = [&] { return cmd_reeb(scene, axis, format, oracle, g); }; });

  auto* c = app.add_subcommand("classify", "S/PS/LS/PLS flags of a pointed disk");
  c->add_option("scene", scene)->required();
  c->add_option("disk", disk)->required();
  c->callback([&] { run = [&] { return cmd_classify(scene, disk, g); }; });

  auto* gr = app.add_subcommand("grow", "apply one disk addition");
  gr->add_option("scene", scene)->required();
  gr->add_option("disk", disk);
  gr->add_option("--ls-from", ls_from, "pole x for an automatically chosen LS ellipse");
  gr->add_option("--ls-to", ls_to, "second point of that ellipse's axis");
  gr->add_option("--out", out, "write the grown scene here");
  gr->callback([&] { run = [&] { return cmd_grow(scene, disk, ls_from, ls_to, out, g); }; });

  auto* sf = app.add_subcommand("shrink-family", "shrink a disk and check digraph invariance");
  sf->add_option("scene", scene)->required();
  sf->add_option("disk", disk)->required();
  sf->add_option("--kind", kind)->check(CLI::IsMember({"chord", "concentric"}));
  sf->add_option("--steps", steps);
  sf->add_option("--frames", frames, "directory for one SVG per member");
  sf->callback([&] { run = [&] { return cmd_shrink(scene, disk, kind, steps, frames, g); }; });

  auto* re = app.add_subcommand("realize", "build a domain whose digraph is the given graph");
  re->add_option("graph", graph)->required();
  re->add_option("--out-dir", out_dir);
  re->callback([&] { run = [&] { return cmd_realize(graph, out_dir); }; });

  auto* me = app.add_subcommand("merge", "merge two caps at an extremal vertex");
  me->add_option("graph", graph)->required();
  me->add_option("--vertex", vertex)->required();
  me->add_option("--index", index);
  me->add_option("--out-dir", out_dir);
  me->callback([&] { run = [&] { return cmd_merge(graph, vertex, index, out_dir); }; });

  auto* rn = app.add_subcommand("render", "SVG picture of a scene");
  rn->add_option("scene", scene)->required();
  rn->add_option("--disk", disk);
  rn->add_option("--out", out);
  rn->add_flag("--show-poles", show_poles);
  rn->add_flag("--show-reeb-overlay", overlay);
  rn->callback([&] { run = [&] { return cmd_render(scene, disk, out, show_poles, overlay, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run();
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    print_error(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
