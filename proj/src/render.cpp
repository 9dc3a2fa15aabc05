// Copyright 2026 The Kochawave Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kochawave/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "kochawave/analyze.hpp"
#include "kochawave/errors.hpp"

namespace kochawave {

using cplx = std::complex<double>;
using nlohmann::json;

namespace {

constexpr double kOutputSize = 1000.0;
constexpr double kMargin = 0.02;
constexpr double kRowGap = 0.6;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

cplx row_offset(int row) { return cplx(0, -kRowGap * row); }

const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                                                  "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};
  return colors;
}

Layer curve_layer(const std::string& name, const Polyline& p, cplx offset, double width = 1.0) {
  Layer l{name, Style{}, {}};
  l.style.stroke_width = width;
  l.shapes.push_back({to_plane(p.vertices, p.scale_exp, offset), false});
  return l;
}

Scene rows_of_curves(int last) {
  Scene s{"iterations 1 to " + std::to_string(last), {}};
  for (int k = 1; k <= last; ++k) {
    s.layers.push_back(curve_layer("iteration-" + std::to_string(k), generate_segments(k), row_offset(k - 1)));
  }
  return s;
}

Scene rows_of_triangles(int last) {
  Scene s{"triangle construction 1 to " + std::to_string(last), {}};
  for (int k = 1; k <= last; ++k) {
    Layer l{"iteration-" + std::to_string(k), Style{"none", "#1f4e9c", 0.0, 1.0, 0.0}, {}};
    for (const Triangle& t : generate_triangles(k)) {
      auto c = t.corners();
      l.shapes.push_back({to_plane({c[0], c[1], c[2]}, k, row_offset(k - 1)), true});
    }
    s.layers.push_back(std::move(l));
  }
  return s;
}

Scene rows_of_points(int last) {
  Scene s{"point sets 0 to " + std::to_string(last), {}};
  for (int k = 0; k <= last; ++k) {
    const Polyline p = generate_segments(k);
    Layer line = curve_layer("curve-" + std::to_string(k), p, row_offset(k));
    line.style.stroke = "#b0b0b0";
    s.layers.push_back(std::move(line));
    Layer dots{"points-" + std::to_string(k), Style{"none", "#1f4e9c", 0.0, 1.0, 4.0}, {}};
    dots.shapes.push_back({to_plane(p.vertices, k, row_offset(k)), false});
    s.layers.push_back(std::move(dots));
  }
  return s;
}

Scene cantor_rows(int last) {
  Scene s{"base remainder 1 to " + std::to_string(last), {}};
  for (int k = 1; k <= last; ++k) {
    const Polyline p = generate_segments(k);
    s.layers.push_back(curve_layer("curve-" + std::to_string(k), p, row_offset(k - 1)));
    Layer blue{"cantor-" + std::to_string(k), Style{"#1f4ef0", "none", 4.0, 1.0, 0.0}, {}};
    const double scale = std::pow(3.0, k);
    for (auto [lo, hi] : cantor_remainder(k).intervals) {
      blue.shapes.push_back({{cplx(lo / scale, 0) + row_offset(k - 1), cplx(hi / scale, 0) + row_offset(k - 1)}, false});
    }
    s.layers.push_back(std::move(blue));
  }
  return s;
}

Scene loops_scene(int n) {
  const Polyline p = generate_segments(n);
  Scene s{"closed loops at iteration " + std::to_string(n), {}};
  s.layers.push_back(curve_layer("curve", p, {}));
  Layer green{"loops", Style{"#00a000", "#00a000", 1.5, 0.35, 0.0}, {}};
  for (const Loop& l : detect_loops(p)) green.shapes.push_back({to_plane(l.vertices, n), true});
  s.layers.push_back(std::move(green));
  return s;
}

Covering preset_covering(TileKind kind, int n) {
  if (kind == TileKind::kRhomboidal || kind == TileKind::kDart) return cover_scale_invariant(kind, n, -2, 1);
  return cover_periodic(kind, lattice_window(QOmega(0), 3, 3), n);
}

}  // namespace

std::vector<cplx> to_plane(const std::vector<EisensteinInt>& v, int scale_exp, cplx offset) {
  const double s = std::pow(3.0, scale_exp);
  std::vector<cplx> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(z.to_complex() / s + offset);
  return out;
}

std::string render_svg(const Scene& scene) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  std::size_t count = 0;
  for (const Layer& l : scene.layers) {
    for (const Shape& sh : l.shapes) {
      for (cplx z : sh.points) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
        ++count;
      }
    }
  }
  if (count == 0) throw PreconditionError("render_svg: scene has no geometry");

  double extent = std::max(xmax - xmin, ymax - ymin);
  if (extent <= 0) extent = 1;
  const double margin = kMargin * extent;
  const double f = kOutputSize / (extent + 2 * margin);
  const double width = (xmax - xmin + 2 * margin) * f;
  const double height = (ymax - ymin + 2 * margin) * f;
  auto X = [&](cplx z) { return (z.real() - xmin + margin) * f; };
  auto Y = [&](cplx z) { return (ymax - z.imag() + margin) * f; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  if (!scene.title.empty()) out += "<title>" + escape(scene.title) + "</title>\n";
  for (const Layer& l : scene.layers) {
    const Style& st = l.style;
    out += "<g id=\"" + escape(l.name) + "\" fill=\"" + escape(st.fill) + "\" stroke=\"" + escape(st.stroke) +
           "\" stroke-width=\"" + num(st.stroke_width) + "\"";
    if (st.fill != "none" && st.fill_opacity != 1.0) out += " fill-opacity=\"" + num(st.fill_opacity) + "\"";
    out += " fill-rule=\"evenodd\" stroke-linejoin=\"round\" stroke-linecap=\"round\">\n";
    for (const Shape& sh : l.shapes) {
      if (sh.points.empty()) continue;
      if (st.marker_radius > 0) {
        for (cplx z : sh.points) {
          out += "<circle cx=\"" + num(X(z)) + "\" cy=\"" + num(Y(z)) + "\" r=\"" + num(st.marker_radius) + "\"/>\n";
        }
        continue;
      }
      out += "<path d=\"M";
      for (std::size_t i = 0; i < sh.points.size(); ++i) {
        if (i > 0) out += " L";
        out += num(X(sh.points[i])) + " " + num(Y(sh.points[i]));
      }
      if (sh.closed) out += " Z";
      out += "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

json scene_json(const Scene& scene) {
  json layers = json::array();
  for (const Layer& l : scene.layers) {
    json shapes = json::array();
    for (const Shape& sh : l.shapes) {
      json pts = json::array();
      for (cplx z : sh.points) pts.push_back(json::array({z.real(), z.imag()}));
      shapes.push_back({{"closed", sh.closed}, {"points", pts}});
    }
    layers.push_back({{"name", l.name},
                      {"style",
                       {{"stroke", l.style.stroke},
                        {"fill", l.style.fill},
                        {"stroke_width", l.style.stroke_width},
                        {"fill_opacity", l.style.fill_opacity},
                        {"marker_radius", l.style.marker_radius}}},
                      {"shapes", shapes}});
  }
  return {{"schema", kSceneSchema}, {"title", scene.title}, {"layers", layers}};
}

Scene scene_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kSceneSchema) throw PreconditionError("expected a scene document");
  Scene s;
  s.title = j.at("title").get<std::string>();
  for (const auto& jl : j.at("layers")) {
    Layer l;
    l.name = jl.at("name").get<std::string>();
    const auto& st = jl.at("style");
    l.style = {st.at("stroke").get<std::string>(), st.at("fill").get<std::string>(),
               st.at("stroke_width").get<double>(), st.at("fill_opacity").get<double>(),
               st.at("marker_radius").get<double>()};
    for (const auto& js : jl.at("shapes")) {
      Shape sh;
      sh.closed = js.at("closed").get<bool>();
      for (const auto& p : js.at("points")) sh.points.emplace_back(p[0].get<double>(), p[1].get<double>());
      l.shapes.push_back(std::move(sh));
    }
    s.layers.push_back(std::move(l));
  }
  return s;
}

Scene polyline_scene(const Polyline& p, std::string title) {
  return Scene{std::move(title), {curve_layer("curve", p, {})}};
}

Scene triangles_scene(const std::vector<Triangle>& t, int scale_exp, std::string title) {
  Layer l{"triangles", Style{"none", "#1f4e9c", 0.0, 1.0, 0.0}, {}};
  for (const Triangle& tri : t) {
    auto c = tri.corners();
    l.shapes.push_back({to_plane({c[0], c[1], c[2]}, scale_exp), true});
  }
  return Scene{std::move(title), {std::move(l)}};
}

Scene tile_scene(const Tile& t) {
  Layer l{to_string(t.kind), Style{"#000000", palette()[static_cast<std::size_t>(t.kind) % palette().size()], 1.0,
                                   1.0, 0.0},
          {}};
  l.shapes.push_back({to_plane(t.boundary.vertices, t.n), true});
  Layer frame{"frame", Style{"#d00000", "none", 0.75, 1.0, 0.0}, {}};
  frame.shapes.push_back({to_plane(tile_corners(t.kind), 0), true});
  return Scene{to_string(t.kind) + " tile at iteration " + std::to_string(t.n), {std::move(l), std::move(frame)}};
}

Scene covering_scene(const Covering& c, int n) {
  const Tile tile = build_tile(c.scheme, n);
  const auto base = to_plane(tile.boundary.vertices, n);
  // One layer per fill colour keeps the style table small.
  std::map<std::size_t, Layer> by_color;
  for (const Placement& p : c.placements) {
    const std::size_t key =
        static_cast<std::size_t>(((p.rot / 2) + 3 * (p.scale_exp + 64)) % static_cast<int>(palette().size()));
    auto [it, fresh] = by_color.try_emplace(key);
    if (fresh) it->second = Layer{"tiles-" + std::to_string(key), Style{"#000000", palette()[key], 0.5, 1.0, 0.0}, {}};
    Shape sh{{}, true};
    sh.points.reserve(base.size());
    for (cplx z : base) sh.points.push_back(apply(p, z));
    it->second.shapes.push_back(std::move(sh));
  }
  Scene s{to_string(c.scheme) + " covering at iteration " + std::to_string(n), {}};
  for (auto& [key, layer] : by_color) s.layers.push_back(std::move(layer));
  Layer win{"window", Style{"#d00000", "none", 1.5, 1.0, 0.0}, {}};
  win.shapes.push_back({{c.window.at(0, 0), c.window.at(1, 0), c.window.at(1, 1), c.window.at(0, 1)}, true});
  s.layers.push_back(std::move(win));
  return s;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig3",  "fig6",  "fig8",  "fig13", "fig14", "fig16", "fig17",
                                                 "fig18", "fig19", "fig20", "fig21", "fig22", "fig23", "fig24",
                                                 "fig25"};
  return names;
}

Scene preset(std::string_view name, int n) {
  auto pick = [&](int fallback) { return n < 0 ? fallback : n; };
  if (name == "fig3") return rows_of_curves(pick(4));
  if (name == "fig6") return rows_of_triangles(pick(4));
  if (name == "fig8") return rows_of_points(pick(3));
  if (name == "fig13") return cantor_rows(pick(4));
  if (name == "fig14") return loops_scene(pick(4));
  const auto& kinds = all_tile_kinds();
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (name == "fig" + std::to_string(16 + i)) return tile_scene(build_tile(kinds[i], std::max(1, pick(4))));
    if (name == "fig" + std::to_string(21 + i)) {
      const int m = std::max(1, pick(3));
      return covering_scene(preset_covering(kinds[i], m), m);
    }
  }
  throw PreconditionError("unknown preset " + std::string(name));
}

}  // namespace kochawave
