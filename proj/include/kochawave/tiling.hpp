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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kochawave/construct.hpp"
#include "kochawave/lattice.hpp"

namespace kochawave {

enum class TileKind { kBifaceAntisym, kBifaceSym, kTriangular, kRhomboidal, kDart };

std::string to_string(TileKind kind);
std::optional<TileKind> tile_kind_from_string(std::string_view name);
const std::vector<TileKind>& all_tile_kinds();

/// One curve on a tile edge: z -> scale * (conjugate ? conj(z) : z) + offset
/// applied to the unit curve, traversed backwards when `reversed`.
struct CurveCopy {
  EisensteinInt scale;
  EisensteinInt offset;
  bool conjugate = false;
  bool reversed = false;

  EisensteinInt start() const;
  EisensteinInt end() const;
};

/// The curve copies bounding a tile, in boundary order.
const std::vector<CurveCopy>& tile_curves(TileKind kind);

/// Corners of the straight polygon the curves are arranged around.
std::vector<EisensteinInt> tile_corners(TileKind kind);

struct Tile {
  TileKind kind = TileKind::kTriangular;
  int n = 0;
  /// Closed: front() == back(). Scaled by 3^n like every Polyline.
  Polyline boundary;
};

/// Concatenates the transformed iterates. Throws ConstructionError when two
/// boundary edges cross properly.
Tile build_tile(TileKind kind, int n, const GenerationLimits& limits = {});

/// z -> 3^scale_exp * omega^(rot/2) * (mirrored ? conj(z) : z) + translation.
/// rot counts 30 degree steps; only even values keep the map in Q(omega).
struct Placement {
  int rot = 0;
  int scale_exp = 0;
  QOmega translation;
  bool mirrored = false;

  bool operator==(const Placement&) const = default;
};

bool placement_less(const Placement& x, const Placement& y);

/// Exact image of a point. Throws PreconditionError for odd rot.
QOmega apply(const Placement& p, const QOmega& z);
std::complex<double> apply(const Placement& p, std::complex<double> z);

/// Points origin + s*e1 + t*e2 for s, t in [0, 1].
struct Window {
  QOmega origin;
  QOmega e1;
  QOmega e2;

  bool empty() const;
  std::complex<double> at(double s, double t) const;
  /// Axis-aligned bounds in the plane: {min corner, max corner}.
  std::pair<std::complex<double>, std::complex<double>> bounds() const;

  bool operator==(const Window&) const = default;
};

/// The parallelogram spanned by `width` along 1 and `height` along omega.
Window lattice_window(const QOmega& origin, const Rational& width, const Rational& height);

struct Covering {
  TileKind scheme = TileKind::kTriangular;
  int n = 0;
  Window window;
  std::vector<Placement> placements;
  /// Biface regions left undecomposed below the finest scale.
  TileKind unresolved_kind = TileKind::kBifaceAntisym;
  std::vector<Placement> unresolved;
  /// Scale range, present for scale-invariant schemes.
  std::optional<std::pair<int, int>> k_range;
};

/// Translated copies on the lattice: bifaces on every lattice edge, or one
/// triangular tile per lattice point. Only copies near the window are kept.
Covering cover_periodic(TileKind kind, const Window& window, int n);

/// Rhomboidal or dart tiles at scales 3^k for kmin <= k <= kmax, obtained
/// by splitting the six bifaces around the origin recursively.
Covering cover_scale_invariant(TileKind kind, int n, int kmin, int kmax,
                               std::optional<Window> window = std::nullopt);

/// Centered window used when none is given: half-width 3^(kmax+1) / 4.
Window default_scale_invariant_window(int kmax);

/// Every placement and the window scaled by 3^shift about the origin.
Covering scale_covering(const Covering& c, int shift);

/// Placement sets compared as sets.
bool same_placements(const std::vector<Placement>& x, const std::vector<Placement>& y);

struct Offender {
  std::complex<double> point;
  int multiplicity = 0;
};

struct CoveringCheck {
  bool pass = false;
  std::size_t samples = 0;
  std::size_t near_boundary = 0;  // excluded from the statistics
  std::size_t considered = 0;
  std::size_t multiplicity_one = 0;
  /// Of the considered points, those in an undecomposed biface.
  std::size_t unresolved = 0;
  double fraction_one = 0;
  std::map<int, std::size_t> histogram;  // over considered points
  std::vector<Offender> worst;
  double epsilon = 0;
};

/// Halton points over the window. Each point's multiplicity is the number
/// of tiles containing it by the even-odd rule at the covering's iteration,
/// evaluated on the curve hierarchy without materializing the boundaries.
/// Points within epsilon of a tile boundary are skipped. Passes when at
/// least 99% of the rest have multiplicity one.
CoveringCheck check_covering(const Covering& c, std::size_t samples, double epsilon,
                             unsigned threads = 1);

/// Even-odd membership of a plane point in a placed tile at iteration n.
bool tile_contains(TileKind kind, const Placement& p, int n, std::complex<double> z);

}  // namespace kochawave
