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
#include <functional>
#include <string>
#include <vector>

#include "kochawave/lattice.hpp"

namespace kochawave {

// Incidence predicates below work directly on (a, b) lattice coordinates:
// the map to the plane is affine, so orientation signs are preserved.

enum class ContactKind {
  kProperCrossing,    // interiors cross at a single point
  kTouch,             // an endpoint of one edge lies inside the other
  kCollinearOverlap,  // edges share a piece of positive length
};

struct EdgeContact {
  std::size_t first;   // edge index: vertices[first] -> vertices[first + 1]
  std::size_t second;  // second > first
  ContactKind kind;
};

std::string to_string(ContactKind kind);

/// Pairs of edges meeting anywhere other than at a common endpoint vertex.
/// For closed polylines the edge from the last vertex back to the first is
/// included. Stops after max_reports contacts.
std::vector<EdgeContact> find_edge_contacts(const std::vector<EisensteinInt>& vertices,
                                            bool closed, std::size_t max_reports = 16);

/// Cells of the triangular grid over the (a, b) lattice. Up cell (i, j) has
/// corners (i,j), (i+1,j), (i,j+1); down cell (i, j) has corners (i+1,j),
/// (i+1,j+1), (i,j+1).
class TriangularRaster {
 public:
  TriangularRaster(std::int64_t i0, std::int64_t j0, std::int64_t width, std::int64_t height);

  std::int64_t i0() const { return i0_; }
  std::int64_t j0() const { return j0_; }
  std::int64_t width() const { return w_; }
  std::int64_t height() const { return h_; }

  bool get(bool up, std::int64_t i, std::int64_t j) const;
  void set(bool up, std::int64_t i, std::int64_t j, bool value);
  std::size_t count() const;

  /// Number of connected components of unset cells, where cells touching at
  /// a corner are connected. Cells outside the raster count as unset and are
  /// all joined to the outer component.
  std::size_t complement_components() const;

 private:
  std::size_t index(bool up, std::int64_t i, std::int64_t j) const;

  std::int64_t i0_, j0_, w_, h_;
  std::vector<std::uint8_t> cells_;
};

/// Marks every cell whose interior sample point lies inside the closed
/// polygon under the even-odd rule. Vertices are lattice points.
void fill_polygon_even_odd(TriangularRaster& raster, const std::vector<EisensteinInt>& polygon);

/// Marks every cell whose sample point lies inside the triangle p, q, r.
void fill_triangle(TriangularRaster& raster, const EisensteinInt& p, const EisensteinInt& q,
                   const EisensteinInt& r);

/// Tight raster bounds for a point set with `margin` spare cells each side.
TriangularRaster raster_for(const std::vector<EisensteinInt>& points, std::int64_t margin = 2);

}  // namespace kochawave
