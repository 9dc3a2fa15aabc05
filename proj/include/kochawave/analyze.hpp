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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kochawave/construct.hpp"
#include "kochawave/lattice.hpp"

namespace kochawave {

// ---------------------------------------------------------------------------
// Closed-form properties
// ---------------------------------------------------------------------------

/// Length of the n-th iterate on the unit segment, summed from step lengths.
SqrtThreeScalar length_exact(int n);
/// (1 + 1/sqrt3)^n expanded.
SqrtThreeScalar length_closed_form(int n);

/// Total area of the triangle construction, summed over all 4^n triangles.
SqrtThreeScalar tri_area_exact(int n, const GenerationLimits& limits = {});
/// (sqrt3/4)(2/3)^n.
SqrtThreeScalar tri_area_closed_form(int n);

/// Area between the n-th iterate and the base: (sqrt3/4 - T_n)/3.
SqrtThreeScalar curve_area_exact(int n);
/// Limit of curve_area_exact: 1/(4 sqrt3).
SqrtThreeScalar curve_area_limit();

/// Even-odd sampled area of the closed polygon (iterate plus base) on a
/// triangular grid with `resolution` cells per unit length.
double rasterized_area(int n, std::int64_t resolution);

/// Even-odd sampled area of an arbitrary closed lattice polygon given at
/// scale 3^scale_exp.
double rasterized_polygon_area(const std::vector<EisensteinInt>& polygon, int scale_exp,
                               std::int64_t resolution);

struct HeightResult {
  SqrtThreeScalar height;
  /// All maximal-height points of K_n in curve order, on the unit scale.
  std::vector<QOmega> maximizers;
  QOmega leftmost;
  QOmega rightmost;
};

HeightResult height(int n);
/// Compares the observed extreme maximizers with the commonly stated
/// positions (4+4w)/9 (leftmost) and (5+4w)/9 (rightmost).
struct ExtremePointCheck {
  int n = 0;
  QOmega claimed_left;
  QOmega claimed_right;
  QOmega observed_left;
  QOmega observed_right;
  bool left_matches = false;
  bool right_matches = false;
  bool claimed_left_is_maximizer = false;
  bool claimed_right_is_maximizer = false;
};

ExtremePointCheck check_extreme_point_claim(int n);

/// 0, 1/(2 sqrt3), then 2/(3 sqrt3).
SqrtThreeScalar height_closed_form(int n);

/// One piece of the centroid dissection. The piece's centroid is
/// (offset + linear * m) / 3 and it carries `weight` of the total.
struct DissectionPart {
  Rational weight;
  QOmega offset;
  QOmega linear;
};

std::vector<DissectionPart> centroid_dissection();
/// Solves m = sum weight * (offset + linear*m)/3 over Q(omega).
QOmega centroid_solve();
/// Right side minus left side of the centroid equation at m.
QOmega centroid_residual(const QOmega& m);

/// Volume of the solid of revolution about the base, as a multiple of pi,
/// from a centroid and the limit area (Pappus).
Rational revolution_volume(const QOmega& centroid);
Rational revolution_volume();

/// Root of 3^(1-d) + 3^(-d/2) = 1 on [1, 2] by bisection.
double hausdorff_dimension(double tol);
double hausdorff_dimension_closed_form();
/// Left side of the dimension equation minus one.
double dimension_equation(double d);

struct CantorIntervals {
  int n = 0;
  /// Closed intervals [first, second] in units of 3^-n.
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;

  bool operator==(const CantorIntervals&) const = default;
};

/// Maximal pieces of the iterate lying on the base segment.
CantorIntervals cantor_remainder(int n);
CantorIntervals cantor_remainder(const Polyline& p);

// ---------------------------------------------------------------------------
// Loops and the simple curve
// ---------------------------------------------------------------------------

struct Loop {
  std::size_t start_index = 0;
  /// Vertices of the original polyline from start_index to the repeat,
  /// so front() == back().
  std::vector<EisensteinInt> vertices;
};

/// Outermost closed loops, found by a stack scan over repeated vertices.
/// Polylines with scale_exp <= 6 are also checked for edge crossings that
/// do not pass through a shared vertex; finding one throws InvariantError.
std::vector<Loop> detect_loops(const Polyline& p);

/// The polyline with every loop cut out; vertices are pairwise distinct.
Polyline remove_loops(const Polyline& p);

enum class EdgeColor { kBlack, kBlue, kRed };

struct ColoredPolyline {
  Polyline polyline;
  std::vector<EdgeColor> colors;  // one per edge
  SqrtThreeScalar total_length;   // on the unit scale
};

/// Two-rule colored substitution producing the loop-free curve.
ColoredPolyline curve_c_generate(int n);

struct SymmetryReport {
  int n = 0;
  double distance = 0;
  /// Index in the loop-free polyline where it was split.
  std::size_t split_index = 0;
  /// False when the center is not a vertex and the nearest vertex was used.
  bool split_exact = false;
  double split_offset = 0;  // distance from the split vertex to the center
};

/// Splits the loop-free curve at the center of the triangle on the base,
/// rotates the first half by +120 degrees about the center (or the second
/// half by -120 degrees) and measures the symmetric Hausdorff distance to
/// the other half.
SymmetryReport curve_c_symmetry_check(int n, bool rotate_second_half = false);

/// Symmetric Hausdorff distance between two polylines given in the plane.
double polyline_hausdorff(const std::vector<std::complex<double>>& x,
                          const std::vector<std::complex<double>>& y);

enum class Construction { kSegments, kTriangles };

/// Rasterizes the filled region on a triangular grid at pitch 3^-n and
/// reports whether its complement is connected.
bool simply_connected_check(int n, Construction construction);

/// Same test for an arbitrary closed lattice polygon (even-odd fill).
bool polygon_region_simply_connected(const std::vector<EisensteinInt>& polygon);

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct PropertyReport {
  int n = 0;
  SqrtThreeScalar length;
  SqrtThreeScalar tri_area;
  SqrtThreeScalar curve_area;
  SqrtThreeScalar height;
  std::vector<QOmega> height_argmax_points;
  QOmega centroid;
  Rational volume_over_pi;
  double hausdorff_dim = 0;

  bool operator==(const PropertyReport&) const = default;
};

PropertyReport compute_properties(int n);

}  // namespace kochawave
