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

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kochawave/construct.hpp"
#include "kochawave/tiling.hpp"

namespace kochawave {

inline constexpr const char* kSceneSchema = "kochawave.scene/1";

struct Style {
  std::string stroke = "#000000";
  std::string fill = "none";
  /// In output units; the larger side of the picture is 1000 units.
  double stroke_width = 1.0;
  double fill_opacity = 1.0;
  /// When positive, each point is drawn as a dot of this radius instead.
  double marker_radius = 0.0;

  bool operator==(const Style&) const = default;
};

struct Shape {
  std::vector<std::complex<double>> points;
  bool closed = false;

  bool operator==(const Shape&) const = default;
};

struct Layer {
  std::string name;
  Style style;
  std::vector<Shape> shapes;

  bool operator==(const Layer&) const = default;
};

struct Scene {
  std::string title;
  std::vector<Layer> layers;

  bool operator==(const Scene&) const = default;
};

/// Lattice points at scale 3^scale_exp mapped to the unit plane.
std::vector<std::complex<double>> to_plane(const std::vector<EisensteinInt>& v, int scale_exp,
                                           std::complex<double> offset = {});

/// SVG 1.1 with y pointing up in the geometry. Coordinates are written with
/// nine significant digits, so equal scenes give identical bytes.
std::string render_svg(const Scene& scene);

nlohmann::json scene_json(const Scene& scene);
Scene scene_from_json(const nlohmann::json& j);

Scene polyline_scene(const Polyline& p, std::string title);
Scene triangles_scene(const std::vector<Triangle>& t, int scale_exp, std::string title);
Scene tile_scene(const Tile& t);
/// Every placed tile at iteration n, plus the window outline.
Scene covering_scene(const Covering& c, int n);

/// fig3, fig6, fig8, fig13, fig14, fig16 ... fig25.
const std::vector<std::string>& preset_names();
/// The last iteration shown; negative selects the preset's default.
Scene preset(std::string_view name, int n = -1);

}  // namespace kochawave
