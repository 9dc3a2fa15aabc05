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

#include <cmath>
#include <set>

#include "doctest.h"
#include "kochawave/analyze.hpp"
#include "kochawave/errors.hpp"
#include "kochawave/tiling.hpp"

using namespace kochawave;

namespace {

std::set<EisensteinInt> vertex_set(const Tile& t) {
  return {t.boundary.vertices.begin(), t.boundary.vertices.end()};
}

template <typename F>
std::set<EisensteinInt> mapped(const std::set<EisensteinInt>& s, F f) {
  std::set<EisensteinInt> out;
  for (const auto& z : s) out.insert(f(z));
  return out;
}

double a_n(int n) { return curve_area_exact(n).to_double(); }

}  // namespace

TEST_CASE("tile kinds round-trip through names") {
  for (TileKind k : all_tile_kinds()) CHECK(tile_kind_from_string(to_string(k)) == k);
  CHECK_FALSE(tile_kind_from_string("hexagonal").has_value());
}

TEST_CASE("tile boundaries close exactly") {
  for (TileKind k : all_tile_kinds()) {
    for (int n = 1; n <= 5; ++n) {
      Tile t = build_tile(k, n);
      const std::size_t copies = tile_curves(k).size();
      REQUIRE(t.boundary.vertices.size() == copies * pow4(n) + 1);
      CHECK(t.boundary.vertices.front() == t.boundary.vertices.back());
      CHECK(t.boundary.scale_exp == n);
    }
  }
  CHECK(build_tile(TileKind::kBifaceAntisym, 1).boundary.vertices.size() - 1 == 8);
  CHECK(build_tile(TileKind::kTriangular, 1).boundary.vertices.size() - 1 == 12);
  CHECK_THROWS_AS(build_tile(TileKind::kDart, 0), PreconditionError);
}

TEST_CASE("tile corners") {
  CHECK(tile_corners(TileKind::kTriangular) == std::vector<EisensteinInt>{0, 1, {0, 1}});
  CHECK(tile_corners(TileKind::kRhomboidal) == std::vector<EisensteinInt>{0, {1, 1}, 1, {0, -1}});
  CHECK(tile_corners(TileKind::kDart) == std::vector<EisensteinInt>{0, {1, 1}, 1, {2, -1}});
  for (TileKind k : all_tile_kinds()) {
    const auto& c = tile_curves(k);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].end() == c[(i + 1) % c.size()].start());
  }
}

TEST_CASE("biface antisymmetrical tile is point symmetric about 1/2") {
  for (int n = 1; n <= 5; ++n) {
    Tile t = build_tile(TileKind::kBifaceAntisym, n);
    const EisensteinInt s(checked::pow3(n));
    auto v = vertex_set(t);
    CHECK(mapped(v, [&](const EisensteinInt& z) { return s - z; }) == v);
  }
}

TEST_CASE("mirror symmetric tiles") {
  for (int n = 1; n <= 4; ++n) {
    auto v = vertex_set(build_tile(TileKind::kBifaceSym, n));
    CHECK(mapped(v, [](const EisensteinInt& z) { return z.conj(); }) == v);
    auto d = vertex_set(build_tile(TileKind::kDart, n));
    CHECK(mapped(d, [](const EisensteinInt& z) { return z.conj(); }) == d);
    auto r = vertex_set(build_tile(TileKind::kRhomboidal, n));
    const EisensteinInt s(checked::pow3(n));
    CHECK(mapped(r, [&](const EisensteinInt& z) { return s - z; }) == r);
  }
}

TEST_CASE("triangular tile has exact threefold symmetry") {
  const EisensteinInt w2(-1, 1);
  for (int n = 1; n <= 5; ++n) {
    Tile t = build_tile(TileKind::kTriangular, n);
    const EisensteinInt s(checked::pow3(n));
    auto v = vertex_set(t);
    // Rotation by 120 degrees about (1+omega)/3.
    auto rot = [&](const EisensteinInt& z) { return w2 * z + s; };
    CHECK(mapped(v, rot) == v);
    // The boundary sequence itself is rotated by one curve copy.
    const auto& b = t.boundary.vertices;
    const std::size_t third = (b.size() - 1) / 3;
    for (std::size_t i = 0; i + third < b.size(); i += 7) CHECK(rot(b[i]) == b[i + third]);
    // It is not symmetric under a quarter of that.
    auto flip = [&](const EisensteinInt& z) { return z.conj(); };
    CHECK(mapped(v, flip) != v);
  }
}

TEST_CASE("tile areas agree with the curve area identities") {
  const int n = 4;
  const double sqrt3 = std::sqrt(3.0);
  struct Case {
    TileKind kind;
    double expected;
  };
  const std::vector<Case> cases = {
      {TileKind::kBifaceAntisym, 2 * a_n(n)},
      {TileKind::kBifaceSym, 2 * a_n(n)},
      {TileKind::kTriangular, sqrt3 / 4 + 3 * a_n(n)},
      {TileKind::kRhomboidal, sqrt3 / 2 + 8 * a_n(n)},
      {TileKind::kDart, sqrt3 / 2 + 8 * a_n(n)},
  };
  for (const auto& c : cases) {
    Tile t = build_tile(c.kind, n);
    const double area = rasterized_polygon_area(t.boundary.vertices, n, 729);
    CAPTURE(to_string(c.kind));
    CHECK(std::abs(area / c.expected - 1) < 0.02);
  }
  // The limit rhomboid holds seven bifaces' worth of area.
  CHECK(std::abs((sqrt3 / 2 + 8 * curve_area_limit().to_double()) / (2 * curve_area_limit().to_double()) - 7) < 1e-12);
}

TEST_CASE("no directed edge repeats once loops are removed") {
  const int n = 4;
  const Polyline curve = remove_loops(generate_segments(n));
  const EisensteinInt s(checked::pow3(n));
  for (TileKind k : all_tile_kinds()) {
    std::vector<EisensteinInt> b;
    for (const CurveCopy& c : tile_curves(k)) {
      std::vector<EisensteinInt> piece;
      for (const auto& z : curve.vertices) piece.push_back(c.scale * (c.conjugate ? z.conj() : z) + c.offset * s);
      if (c.reversed) std::reverse(piece.begin(), piece.end());
      if (!b.empty()) {
        REQUIRE(b.back() == piece.front());
        piece.erase(piece.begin());
      }
      b.insert(b.end(), piece.begin(), piece.end());
    }
    REQUIRE(b.front() == b.back());
    std::set<std::pair<EisensteinInt, EisensteinInt>> edges;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) CHECK(edges.insert({b[i], b[i + 1]}).second);
  }
}

TEST_CASE("placements map exactly") {
  Placement p{4, 1, QOmega(EisensteinInt(2, 1)), false};
  // 3 * omega^2 * 1 + (2 + omega) = 3(omega - 1) + 2 + omega
  CHECK(apply(p, QOmega(1)) == QOmega(EisensteinInt(-1, 4)));
  Placement m{0, 0, QOmega(0), true};
  CHECK(apply(m, QOmega(EisensteinInt(0, 1))) == QOmega(EisensteinInt(1, -1)));
  CHECK(std::abs(kochawave::apply(p, std::complex<double>(1, 0)) - QOmega(EisensteinInt(-1, 4)).to_complex()) < 1e-12);
  CHECK_THROWS_AS(apply(Placement{1, 0, QOmega(0), false}, QOmega(1)), PreconditionError);
}

TEST_CASE("hierarchical membership matches the materialized polygon") {
  for (TileKind k : all_tile_kinds()) {
    const int n = 3;
    Tile t = build_tile(k, n);
    std::vector<std::complex<double>> poly;
    for (const auto& z : t.boundary.vertices) poly.push_back(z.to_complex() / 27.0);
    auto inside = [&](std::complex<double> p) {
      bool in = false;
      for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        auto a = poly[i], b = poly[i + 1];
        if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
          double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
          if (x > p.real()) in = !in;
        }
      }
      return in;
    };
    int agree = 0, total = 0;
    for (int i = 0; i < 60; ++i) {
      for (int j = 0; j < 60; ++j) {
        std::complex<double> q(-1.05 + 3.1 * (i + 0.37) / 60, -1.1 + 2.2 * (j + 0.61) / 60);
        ++total;
        agree += inside(q) == tile_contains(k, Placement{}, n, q) ? 1 : 0;
      }
    }
    CAPTURE(to_string(k));
    CHECK(agree == total);
  }
}

TEST_CASE("checker sanity") {
  // The rhomboid contains its parallelogram.
  Covering one;
  one.scheme = TileKind::kRhomboidal;
  one.n = 3;
  one.window = {QOmega(0), QOmega(EisensteinInt(1, 1)), QOmega(EisensteinInt(0, -1))};
  one.placements = {Placement{}};
  auto r = check_covering(one, 2000, 0.0);
  CHECK(r.pass);
  CHECK(r.histogram.at(1) == 2000);

  Covering two = one;
  two.placements.push_back(Placement{});
  auto r2 = check_covering(two, 2000, 0.0);
  CHECK_FALSE(r2.pass);
  CHECK(r2.histogram.at(2) == 2000);
  REQUIRE_FALSE(r2.worst.empty());
  CHECK(r2.worst.front().multiplicity == 2);

  CHECK_THROWS_AS(check_covering(one, 999, 0.0), PreconditionError);
}

TEST_CASE("empty window gives no placements") {
  Window w = lattice_window(QOmega(0), Rational(0), Rational(3));
  CHECK(w.empty());
  CHECK(cover_periodic(TileKind::kTriangular, w, 2).placements.empty());
  CHECK_THROWS_AS(cover_periodic(TileKind::kDart, lattice_window(QOmega(0), 2, 2), 2), PreconditionError);
  CHECK_THROWS_AS(cover_scale_invariant(TileKind::kTriangular, 2, 0, 1), PreconditionError);
}

TEST_CASE("finite iterates leave the predicted gap and no overlap") {
  // Oracle: the uncovered area is the residue of the triangle construction,
  // a fraction (2/3)^n of the plane for bifaces and half that for triangles.
  const int n = 2;
  const Window w = lattice_window(QOmega(0), 3, 3);
  struct Case {
    TileKind kind;
    double gap;
  };
  for (const Case& c : {Case{TileKind::kBifaceAntisym, 4.0 / 9}, Case{TileKind::kBifaceSym, 4.0 / 9},
                        Case{TileKind::kTriangular, 2.0 / 9}}) {
    auto r = check_covering(cover_periodic(c.kind, w, n), 20000, 0.0, 4);
    const double zero = static_cast<double>(r.histogram[0]) / static_cast<double>(r.considered);
    CAPTURE(to_string(c.kind));
    CHECK(std::abs(zero - c.gap) < 0.01);
    CHECK(r.histogram[2] + r.histogram[3] < 10);
    CHECK_FALSE(r.pass);
  }
}

TEST_CASE("periodic coverings pass at a fine iterate") {
  const Window w = lattice_window(QOmega(0), 3, 3);
  const int n = 14;
  for (TileKind k : {TileKind::kBifaceAntisym, TileKind::kBifaceSym, TileKind::kTriangular}) {
    auto r = check_covering(cover_periodic(k, w, n), 10000, std::pow(3.0, -n) / 10, 4);
    CAPTURE(to_string(k));
    CHECK(r.pass);
  }
}

TEST_CASE("scale-invariant coverings") {
  for (TileKind k : {TileKind::kRhomboidal, TileKind::kDart}) {
    CAPTURE(to_string(k));
    Covering c = cover_scale_invariant(k, 14, -2, 1);
    CHECK(c.k_range == std::make_pair(-2, 1));
    std::set<int> scales;
    for (const auto& p : c.placements) scales.insert(p.scale_exp);
    CHECK(scales == std::set<int>{-2, -1, 0, 1});
    for (const auto& p : c.unresolved) CHECK(p.scale_exp == -2);

    // Shifting the k range is the same as scaling by 3.
    Covering up = cover_scale_invariant(k, 14, -1, 2);
    Covering scaled = scale_covering(c, 1);
    CHECK(same_placements(up.placements, scaled.placements));
    CHECK(same_placements(up.unresolved, scaled.unresolved));
    CHECK(up.window == scaled.window);

    auto r = check_covering(c, 10000, std::pow(3.0, -14) / 10, 4);
    CHECK(r.pass);

    // One scale only: the undecomposed bifaces show up as gaps.
    auto single = check_covering(cover_scale_invariant(k, 14, 0, 0), 10000, std::pow(3.0, -14) / 10, 4);
    CHECK_FALSE(single.pass);
    CHECK(single.histogram[0] > 1000);
    CHECK(single.unresolved > 1000);
  }
}
