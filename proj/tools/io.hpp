#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "reebdom/construct.hpp"
#include "reebdom/realize.hpp"

namespace reebdom::io {

using nlohmann::json;

// Malformed documents: wrong JSON, unknown or missing fields, bad kinds.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

CurveObject curve_from_json(const json& j);
json curve_to_json(const CurveObject& c);

Scene scene_from_json(const json& j);
json scene_to_json(const Scene& s);

PointedDisk disk_from_json(const json& j);
json disk_to_json(const PointedDisk& pd);

EmbeddedGraph graph_from_json(const json& j);
json graph_to_json(const EmbeddedGraph& g);

std::string digraph_dot(const PRDigraph& g);
json digraph_json(const PRDigraph& g);
json report_json(const ClassReport& r);

// printf("%.6g") without the exponent-only quirks of iostreams.
std::string num6(double v);
std::string point6(Point2 p);

// Translates every curve by a pseudo-random vector of size <= amount (and
// perturbs radii by as much); the returned lines record what moved.
std::vector<std::string> jitter_scene(Scene& s, double amount);

struct RenderOptions {
  bool show_poles = false;
  bool show_reeb_overlay = false;
  const PointedDisk* disk = nullptr;
  int samples = 256;
};

// SVG 1.1 picture of the region selected by the scene's seed.
std::string render_svg(const Scene& s, const RenderOptions& opt);

}  // namespace reebdom::io
