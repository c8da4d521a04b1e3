#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "io.hpp"

using namespace reebdom;
using io::json;

namespace {

const std::string kPresets = PRESETS_DIR;

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(REEBDOM_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string preset(const std::string& name) { return kPresets + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / "reebdom_cli_test";
  std::filesystem::create_directories(d);
  return d / name;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(SceneJson, RoundTripIsIdempotent) {
  for (const char* name : {"annulus-ps.json", "annulus-ls.json", "three-circle.json"}) {
    const json once = io::scene_to_json(io::scene_from_json(io::read_json_file(preset(name))));
    const json twice = io::scene_to_json(io::scene_from_json(once));
    EXPECT_EQ(once.dump(), twice.dump()) << name;
  }
}

TEST(SceneJson, ChainRoundTrip) {
  const EmbeddedGraph g = io::graph_from_json(io::read_json_file(preset("y-graph.json")));
  const Realization r = realize(g);
  const json once = io::scene_to_json(r.scene);
  const Scene back = io::scene_from_json(once);
  EXPECT_EQ(io::scene_to_json(back).dump(), once.dump());
  EXPECT_NO_THROW(select_region(back));
}

TEST(SceneJson, RejectsUnknownAndMissingFields) {
  auto bad = [](const char* text) {
    try {
      io::scene_from_json(json::parse(text));
    } catch (const io::ParseError&) {
      return true;
    }
    return false;
  };
  EXPECT_TRUE(bad(R"({"curves":[],"seed":[0,0],"colour":1})"));
  EXPECT_TRUE(bad(R"({"curves":[{"id":"a","kind":"circle","center":[0,0],"radius":1,"fill":2}],"seed":[0,0]})"));
  EXPECT_TRUE(bad(R"({"curves":[{"id":"a","kind":"circle","center":[0,0]}],"seed":[0,0]})"));
  EXPECT_TRUE(bad(R"({"curves":[{"id":"a","kind":"square"}],"seed":[0,0]})"));
  EXPECT_TRUE(bad(R"({"curves":[],"seed":[0]})"));
  EXPECT_FALSE(bad(R"({"curves":[],"seed":[0,0],"tolerance":{"eps_value":1e-8}})"));
}

TEST(Presets, MatchBuilders) {
  auto same = [](const SceneWithDisk& built, const std::string& name) {
    EXPECT_EQ(io::scene_to_json(built.scene).dump(), io::read_json_file(preset(name + ".json")).dump()) << name;
    EXPECT_EQ(io::disk_to_json(built.disk).dump(), io::read_json_file(preset(name + ".disk.json")).dump()) << name;
  };
  same(build_annulus_example(1, 2, AnnulusVariant::Example1Disk), "annulus-ps");
  same(build_annulus_example(1, 2, AnnulusVariant::Example2Ellipse), "annulus-ls");
  same(three_circle_witness(0.1), "three-circle");
}

TEST(Digraph, DotUsesSixDigits) {
  PRDigraph g;
  g.vertices = {{-1.0 / 3, {}, {}}, {2e-7, {}, {}}, {12345678.9, {}, {}}};
  g.edges = {{0, 1}, {1, 2}};
  const std::string dot = io::digraph_dot(g);
  EXPECT_NE(dot.find("label=\"-0.333333\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"2e-07\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"1.23457e+07\""), std::string::npos);
  EXPECT_NE(dot.find("v0 -> v1;"), std::string::npos);
  const json j = io::digraph_json(g);
  EXPECT_EQ(j["vertices"][0]["value"].get<double>(), -1.0 / 3);
  EXPECT_EQ(j["edges"][1], json::array({1, 2}));
}

TEST(Cli, Validate) {
  EXPECT_EQ(cli("validate " + preset("annulus-ps.json")).code, 0);
  const auto tangent = write("tangent.json", R"({"curves":[
    {"id":"a","kind":"circle","center":[0,0],"radius":1},
    {"id":"b","kind":"circle","center":[2,0],"radius":1}],"seed":[0,0]})");
  const CliRun r = cli("validate " + tangent);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("TangentialCrossing (1,0)"), std::string::npos) << r.out;
  EXPECT_EQ(cli("validate " + write("broken.json", "{\"curves\": [")).code, 2);
  EXPECT_EQ(cli("validate " + write("extra.json", R"({"curves":[],"seed":[0,0],"what":1})")).code, 2);
  EXPECT_EQ(cli("validate /nonexistent/file.json").code, 2);
}

TEST(Cli, Reeb) {
  const CliRun r = cli("reeb " + preset("annulus-ps.json") + " --axis 1 --format dot --oracle 1024");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oracle: isomorphic"), std::string::npos);
  int vertices = 0, edges = 0;
  std::istringstream lines(r.out);
  for (std::string l; std::getline(lines, l);) {
    vertices += l.find("[label=") != std::string::npos;
    edges += l.find("->") != std::string::npos;
  }
  EXPECT_EQ(vertices, 4);
  EXPECT_EQ(edges, 4);
  const CliRun j = cli("reeb " + preset("annulus-ps.json") + " --axis 2 --format json");
  EXPECT_EQ(j.code, 0);
  EXPECT_EQ(json::parse(j.out)["vertices"].size(), 4u);
  EXPECT_EQ(cli("reeb " + preset("annulus-ps.json") + " --axis 3").code, 2);
  // two circles with equal leftmost x
  const auto degenerate = write("degenerate.json", R"({"curves":[
    {"id":"a","kind":"circle","center":[0,0],"radius":1},
    {"id":"b","kind":"circle","center":[0.5,0],"radius":1.5}],"seed":[1.5,0]})");
  EXPECT_EQ(cli("reeb " + degenerate).code, 1);
}

TEST(Cli, Classify) {
  const CliRun ps = cli("classify " + preset("annulus-ps.json") + " " + preset("annulus-ps.disk.json"));
  ASSERT_EQ(ps.code, 0) << ps.out;
  EXPECT_TRUE(json::parse(ps.out)["PS"].get<bool>());
  const CliRun ls = cli("classify " + preset("annulus-ls.json") + " " + preset("annulus-ls.disk.json"));
  ASSERT_EQ(ls.code, 0) << ls.out;
  EXPECT_TRUE(json::parse(ls.out)["LS"].get<bool>());
  EXPECT_FALSE(json::parse(ls.out)["PLS"].get<bool>());
  const auto off = write("off.json", R"({"curve":{"id":"d","kind":"circle","center":[1.5,0],"radius":0.1},
    "side_seed":[1.5,0],"basepoint":[1.5,0.1]})");
  EXPECT_EQ(cli("classify " + preset("annulus-ps.json") + " " + off).code, 1);
}

TEST(Cli, Realize) {
  const auto dir = scratch("y-out");
  std::filesystem::remove_all(dir);
  const CliRun y = cli("realize " + preset("y-graph.json") + " --out-dir " + dir.string());
  ASSERT_EQ(y.code, 0) << y.out;
  for (const char* f : {"scene.json", "reeb.dot", "render.svg", "mapping.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  const json m = json::parse(slurp(dir / "mapping.json"));
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ(cli("validate " + (dir / "scene.json").string()).code, 0);
  const auto path = write("path.json", R"({"vertices":[{"id":"a","x":0,"y":0},{"id":"b","x":1,"y":0.2},
    {"id":"c","x":2,"y":0}],"edges":[["a","b"],["b","c"]]})");
  const CliRun bad = cli("realize " + path);
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("degree 2"), std::string::npos);
  const CliRun theta = cli("realize " + preset("theta.json"));
  EXPECT_EQ(theta.code, 0) << theta.out;
}

TEST(Cli, MergeGrowShrink) {
  EXPECT_EQ(cli("merge " + preset("twin-min.json") + " --vertex a").code, 0);
  EXPECT_EQ(cli("merge " + preset("twin-min.json") + " --vertex c").code, 1);
  const auto grown = scratch("grown.json");
  EXPECT_EQ(cli("grow " + preset("annulus-ps.json") + " " + preset("annulus-ps.disk.json") + " --out " + grown.string()).code, 0);
  EXPECT_EQ(io::scene_from_json(io::read_json_file(grown.string())).curves.size(), 3u);
  const CliRun sf = cli("shrink-family " + preset("annulus-ps.json") + " " + preset("annulus-ps.disk.json") + " --kind chord --steps 4");
  EXPECT_EQ(sf.code, 0) << sf.out;
}

TEST(Cli, GlobalFlags) {
  const CliRun moved = cli("--seed-point 0,-1.5 validate " + preset("annulus-ps.json"));
  EXPECT_EQ(moved.code, 0);
  const CliRun outside = cli("--seed-point 0,0 validate " + preset("annulus-ps.json"));
  EXPECT_EQ(outside.code, 1);
  EXPECT_EQ(cli("--seed-point 5 validate " + preset("annulus-ps.json")).code, 2);
  const CliRun j = cli("--jitter 1e-6 validate " + preset("annulus-ps.json"));
  EXPECT_EQ(j.code, 0);
  EXPECT_NE(j.out.find("jitter inner"), std::string::npos);
  EXPECT_EQ(cli("--tolerance 1e-8 validate " + preset("three-circle.json")).code, 0);
}

TEST(Cli, RenderIsDeterministic) {
  const auto a = scratch("a.svg"), b = scratch("b.svg");
  const std::string args = "render " + preset("three-circle.json") + " --disk " + preset("three-circle.disk.json") +
                           " --show-poles --show-reeb-overlay --out ";
  ASSERT_EQ(cli(args + a.string()).code, 0);
  ASSERT_EQ(cli(args + b.string()).code, 0);
  const std::string svg = slurp(a);
  EXPECT_EQ(svg, slurp(b));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"reeb\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"disk-"), std::string::npos);
}
