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

#include "kochawave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "kochawave/errors.hpp"
#include "internal/scanline.hpp"

namespace kochawave {

namespace {

Int128 orient(const EisensteinInt& p, const EisensteinInt& q, const EisensteinInt& r) {
  return static_cast<Int128>(q.a - p.a) * (r.b - p.b) - static_cast<Int128>(q.b - p.b) * (r.a - p.a);
}

int sgn(Int128 x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// r is known to be collinear with p, q.
bool within(const EisensteinInt& p, const EisensteinInt& q, const EisensteinInt& r) {
  return std::min(p.a, q.a) <= r.a && r.a <= std::max(p.a, q.a) && std::min(p.b, q.b) <= r.b &&
         r.b <= std::max(p.b, q.b);
}

// Position of r along direction q - p, for collinear points.
Int128 along(const EisensteinInt& p, const EisensteinInt& q, const EisensteinInt& r) {
  return static_cast<Int128>(r.a - p.a) * (q.a - p.a) + static_cast<Int128>(r.b - p.b) * (q.b - p.b);
}

// Returns true and sets kind if the edges meet other than at a shared endpoint.
bool classify(const EisensteinInt& p1, const EisensteinInt& p2, const EisensteinInt& q1,
              const EisensteinInt& q2, ContactKind& kind) {
  int d1 = sgn(orient(p1, p2, q1));
  int d2 = sgn(orient(p1, p2, q2));
  int d3 = sgn(orient(q1, q2, p1));
  int d4 = sgn(orient(q1, q2, p2));
  if (d1 == 0 && d2 == 0) {
    // Collinear: compare the parameter intervals along p.
    Int128 len = along(p1, p2, p2);
    Int128 s = along(p1, p2, q1);
    Int128 t = along(p1, p2, q2);
    Int128 lo = std::max<Int128>(0, std::min(s, t));
    Int128 hi = std::min(len, std::max(s, t));
    if (hi > lo) {
      kind = ContactKind::kCollinearOverlap;
      return true;
    }
    return false;  // disjoint, or a single shared endpoint
  }
  if (d1 * d2 < 0 && d3 * d4 < 0) {
    kind = ContactKind::kProperCrossing;
    return true;
  }
  auto touches = [](const EisensteinInt& x, const EisensteinInt& a, const EisensteinInt& b, int d) {
    return d == 0 && within(a, b, x) && x != a && x != b;
  };
  if (touches(q1, p1, p2, d1) || touches(q2, p1, p2, d2) || touches(p1, q1, q2, d3) ||
      touches(p2, q1, q2, d4)) {
    kind = ContactKind::kTouch;
    return true;
  }
  return false;
}

}  // namespace

std::string to_string(ContactKind kind) {
  switch (kind) {
    case ContactKind::kProperCrossing:
      return "proper crossing";
    case ContactKind::kTouch:
      return "touch";
    case ContactKind::kCollinearOverlap:
      return "collinear overlap";
  }
  return "unknown";
}

std::vector<EdgeContact> find_edge_contacts(const std::vector<EisensteinInt>& v, bool closed,
                                            std::size_t max_reports) {
  std::vector<EdgeContact> out;
  if (v.size() < 2) return out;
  std::size_t edges = v.size() - 1 + (closed ? 1 : 0);
  auto head = [&](std::size_t e) -> const EisensteinInt& { return v[e]; };
  auto tail = [&](std::size_t e) -> const EisensteinInt& { return v[(e + 1) % v.size()]; };

  // Sweep over a: edges sorted by their smallest a coordinate.
  std::vector<std::size_t> order(edges);
  for (std::size_t e = 0; e < edges; ++e) order[e] = e;
  auto amin = [&](std::size_t e) { return std::min(head(e).a, tail(e).a); };
  auto amax = [&](std::size_t e) { return std::max(head(e).a, tail(e).a); };
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return amin(x) != amin(y) ? amin(x) < amin(y) : x < y;
  });

  std::vector<std::size_t> active;
  for (std::size_t e : order) {
    const std::int64_t lo = amin(e);
    std::erase_if(active, [&](std::size_t f) { return amax(f) < lo; });
    const std::int64_t bmin = std::min(head(e).b, tail(e).b);
    const std::int64_t bmax = std::max(head(e).b, tail(e).b);
    for (std::size_t f : active) {
      if (std::max(head(f).b, tail(f).b) < bmin || std::min(head(f).b, tail(f).b) > bmax) continue;
      ContactKind kind;
      if (classify(head(e), tail(e), head(f), tail(f), kind)) {
        out.push_back({std::min(e, f), std::max(e, f), kind});
        if (out.size() >= max_reports) return out;
      }
    }
    active.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const EdgeContact& x, const EdgeContact& y) {
    return x.first != y.first ? x.first < y.first : x.second < y.second;
  });
  return out;
}

TriangularRaster::TriangularRaster(std::int64_t i0, std::int64_t j0, std::int64_t width,
                                   std::int64_t height)
    : i0_(i0), j0_(j0), w_(width), h_(height) {
  if (width <= 0 || height <= 0) throw PreconditionError("raster must be non-empty");
  if (width * height > (std::int64_t{1} << 27)) throw ResourceError("raster too large");
  cells_.assign(static_cast<std::size_t>(2 * width * height), 0);
}

std::size_t TriangularRaster::index(bool up, std::int64_t i, std::int64_t j) const {
  return static_cast<std::size_t>(((j - j0_) * w_ + (i - i0_)) * 2 + (up ? 0 : 1));
}

bool TriangularRaster::get(bool up, std::int64_t i, std::int64_t j) const {
  if (i < i0_ || j < j0_ || i >= i0_ + w_ || j >= j0_ + h_) return false;
  return cells_[index(up, i, j)] != 0;
}

void TriangularRaster::set(bool up, std::int64_t i, std::int64_t j, bool value) {
  if (i < i0_ || j < j0_ || i >= i0_ + w_ || j >= j0_ + h_) {
    throw PreconditionError("raster cell out of range");
  }
  cells_[index(up, i, j)] = value ? 1 : 0;
}

std::size_t TriangularRaster::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::size_t TriangularRaster::complement_components() const {
  // Cells of the complement plus one virtual cell standing for the outside.
  const std::size_t n = cells_.size();
  const std::size_t outside = n;
  std::vector<std::uint8_t> seen(n + 1, 0);
  std::size_t components = 0;

  auto corners = [](bool up, std::int64_t i, std::int64_t j) {
    std::array<std::pair<std::int64_t, std::int64_t>, 3> c;
    if (up) {
      c = {{{i, j}, {i + 1, j}, {i, j + 1}}};
    } else {
      c = {{{i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
    }
    return c;
  };

  std::vector<std::size_t> stack;
  auto visit_neighbors = [&](std::size_t cell) {
    const bool up = cell % 2 == 0;
    const std::int64_t flat = static_cast<std::int64_t>(cell / 2);
    const std::int64_t i = i0_ + flat % w_;
    const std::int64_t j = j0_ + flat / w_;
    for (auto [x, y] : corners(up, i, j)) {
      // Six cells around corner (x, y).
      const std::array<std::tuple<bool, std::int64_t, std::int64_t>, 6> around = {{
          {true, x, y}, {true, x - 1, y}, {true, x, y - 1},
          {false, x - 1, y - 1}, {false, x - 1, y}, {false, x, y - 1},
      }};
      for (auto [nu, ni, nj] : around) {
        std::size_t next;
        if (ni < i0_ || nj < j0_ || ni >= i0_ + w_ || nj >= j0_ + h_) {
          next = outside;
        } else {
          next = index(nu, ni, nj);
          if (cells_[next] != 0) continue;
        }
        if (!seen[next]) {
          seen[next] = 1;
          stack.push_back(next);
        }
      }
    }
  };

  auto flood = [&](std::size_t start) {
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      std::size_t c = stack.back();
      stack.pop_back();
      if (c == outside) {
        // The outside touches every border cell.
        for (std::int64_t i = i0_; i < i0_ + w_; ++i) {
          for (std::int64_t j : {j0_, j0_ + h_ - 1}) {
            for (bool up : {true, false}) {
              std::size_t k = index(up, i, j);
              if (cells_[k] == 0 && !seen[k]) {
                seen[k] = 1;
                stack.push_back(k);
              }
            }
          }
        }
        for (std::int64_t j = j0_; j < j0_ + h_; ++j) {
          for (std::int64_t i : {i0_, i0_ + w_ - 1}) {
            for (bool up : {true, false}) {
              std::size_t k = index(up, i, j);
              if (cells_[k] == 0 && !seen[k]) {
                seen[k] = 1;
                stack.push_back(k);
              }
            }
          }
        }
        continue;
      }
      visit_neighbors(c);
    }
  };

  flood(outside);
  ++components;
  for (std::size_t c = 0; c < n; ++c) {
    if (cells_[c] == 0 && !seen[c]) {
      flood(c);
      ++components;
    }
  }
  return components;
}

void fill_polygon_even_odd(TriangularRaster& raster, const std::vector<EisensteinInt>& polygon) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(polygon.size());
  for (const auto& z : polygon) pts.emplace_back(static_cast<double>(z.a), static_cast<double>(z.b));
  internal::scan_even_odd(pts, raster.j0(), raster.j0() + raster.height() - 1,
                          [&](bool up, std::int64_t j, std::int64_t from, std::int64_t to) {
                            from = std::max(from, raster.i0());
                            to = std::min(to, raster.i0() + raster.width() - 1);
                            for (std::int64_t i = from; i <= to; ++i) raster.set(up, i, j, true);
                          });
}

void fill_triangle(TriangularRaster& raster, const EisensteinInt& p, const EisensteinInt& q,
                   const EisensteinInt& r) {
  std::vector<EisensteinInt> tri = {p, q, r};
  fill_polygon_even_odd(raster, tri);
}

TriangularRaster raster_for(const std::vector<EisensteinInt>& points, std::int64_t margin) {
  if (points.empty()) throw PreconditionError("raster_for requires points");
  std::int64_t amin = points[0].a, amax = amin, bmin = points[0].b, bmax = bmin;
  for (const auto& z : points) {
    amin = std::min(amin, z.a);
    amax = std::max(amax, z.a);
    bmin = std::min(bmin, z.b);
    bmax = std::max(bmax, z.b);
  }
  return TriangularRaster(amin - margin, bmin - margin, amax - amin + 2 * margin,
                          bmax - bmin + 2 * margin);
}

}  // namespace kochawave
