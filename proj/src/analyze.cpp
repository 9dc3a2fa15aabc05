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

#include "kochawave/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "internal/scanline.hpp"
#include "kochawave/errors.hpp"
#include "kochawave/geometry.hpp"

namespace kochawave {

namespace {

Rational binomial(int n, int k) {
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
  return r;
}

SqrtThreeScalar scalar(const Rational& r) { return SqrtThreeScalar(r, Rational(0)); }

// Sum of |u|^2 over the depth-first expansion of t.
Int128 triangle_norm_sum(const Triangle& t, int depth) {
  if (depth == 0) return t.u.norm();
  Int128 s = 0;
  for (const Triangle& c : subdivide_triangle(t)) s = checked::add(s, triangle_norm_sum(c, depth - 1));
  return s;
}

// Exponent m with x == 3^m, or -1.
int log3_exact(Int128 x) {
  int m = 0;
  while (x > 1 && x % 3 == 0) {
    x /= 3;
    ++m;
  }
  return x == 1 ? m : -1;
}

const std::complex<double> kOmega(0.5, std::sqrt(3.0) / 2.0);

double point_segment_distance(std::complex<double> p, std::complex<double> a, std::complex<double> b) {
  std::complex<double> d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0) return std::abs(p - a);
  double t = ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double point_polyline_distance(std::complex<double> p, const std::vector<std::complex<double>>& y) {
  if (y.size() == 1) return std::abs(p - y[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < y.size(); ++i) best = std::min(best, point_segment_distance(p, y[i], y[i + 1]));
  return best;
}

// Largest distance from points sampled along x to the polyline y.
double directed_hausdorff(const std::vector<std::complex<double>>& x,
                          const std::vector<std::complex<double>>& y) {
  constexpr int kSamplesPerEdge = 8;
  double worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, point_polyline_distance(x[i], y));
    if (i + 1 == x.size()) break;
    for (int s = 1; s < kSamplesPerEdge; ++s) {
      double t = static_cast<double>(s) / kSamplesPerEdge;
      worst = std::max(worst, point_polyline_distance(x[i] + t * (x[i + 1] - x[i]), y));
    }
  }
  return worst;
}

std::vector<std::complex<double>> to_unit_plane(const std::vector<EisensteinInt>& v, int scale_exp) {
  const double s = std::pow(3.0, scale_exp);
  std::vector<std::complex<double>> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(z.to_complex() / s);
  return out;
}

}  // namespace

SqrtThreeScalar length_exact(int n) {
  if (n < 0) throw PreconditionError("length_exact requires n >= 0");
  // Steps with u ones among n base-4 digits: C(n,u) * 3^(n-u) of them, each
  // of length sqrt3^u at scale 3^n.
  SqrtThreeScalar total(0);
  for (int u = 0; u <= n; ++u) {
    Rational count = binomial(n, u) * pow(Rational(3), n - u);
    total += scalar(count) * SqrtThreeScalar::sqrt3_pow(u);
  }
  return total * scalar(pow(Rational(3), -n));
}

SqrtThreeScalar length_closed_form(int n) {
  return pow(SqrtThreeScalar(Rational(1), Rational(1, 3)), n);
}

SqrtThreeScalar tri_area_exact(int n, const GenerationLimits& limits) {
  if (n < 0) throw PreconditionError("tri_area_exact requires n >= 0");
  if (pow4(n) > limits.max_vertices) throw ResourceError("tri_area_exact: too many triangles");
  const Triangle root{EisensteinInt(0), EisensteinInt(checked::pow3(n))};
  const Int128 sum = triangle_norm_sum(root, n);
  // Each triangle contributes (sqrt3/4)|u|^2, normalized by 9^n.
  return SqrtThreeScalar(Rational(0), Rational(sum, 1) * Rational(1, 4) * pow(Rational(9), -n));
}

SqrtThreeScalar tri_area_closed_form(int n) {
  return SqrtThreeScalar(Rational(0), Rational(1, 4) * pow(Rational(2, 3), n));
}

SqrtThreeScalar curve_area_exact(int n) {
  if (n < 0) throw PreconditionError("curve_area_exact requires n >= 0");
  const SqrtThreeScalar full(Rational(0), Rational(1, 4));
  return (full - tri_area_closed_form(n)) * scalar(Rational(1, 3));
}

SqrtThreeScalar curve_area_limit() { return SqrtThreeScalar(Rational(0), Rational(1, 12)); }

double rasterized_polygon_area(const std::vector<EisensteinInt>& polygon, int scale_exp,
                               std::int64_t resolution) {
  if (resolution <= 0) throw PreconditionError("resolution must be positive");
  const double f = static_cast<double>(resolution) / std::pow(3.0, scale_exp);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(polygon.size());
  double ymin = 0, ymax = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    double x = static_cast<double>(polygon[i].a) * f;
    double y = static_cast<double>(polygon[i].b) * f;
    pts.emplace_back(x, y);
    ymin = i == 0 ? y : std::min(ymin, y);
    ymax = i == 0 ? y : std::max(ymax, y);
  }
  std::uint64_t cells = 0;
  internal::scan_even_odd(pts, static_cast<std::int64_t>(std::floor(ymin)) - 1,
                          static_cast<std::int64_t>(std::ceil(ymax)) + 1,
                          [&](bool, std::int64_t, std::int64_t from, std::int64_t to) {
                            cells += static_cast<std::uint64_t>(to - from + 1);
                          });
  const double r = static_cast<double>(resolution);
  return static_cast<double>(cells) * (std::sqrt(3.0) / 4.0) / (r * r);
}

double rasterized_area(int n, std::int64_t resolution) {
  if (n < 0 || n > 5) throw PreconditionError("rasterized_area requires 0 <= n <= 5");
  if (n == 0) return 0.0;
  if (resolution < checked::pow3(n)) {
    throw PreconditionError("resolution " + std::to_string(resolution) +
                            " undersamples iteration " + std::to_string(n));
  }
  return rasterized_polygon_area(generate_segments(n).vertices, n, resolution);
}

HeightResult height(int n) {
  if (n < 0) throw PreconditionError("height requires n >= 0");
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<EisensteinInt> argmax;
  for (const EisensteinInt& z : z_stream(pow4(n) + 1)) {
    if (z.b > best) {
      best = z.b;
      argmax.clear();
    }
    if (z.b == best && std::find(argmax.begin(), argmax.end(), z) == argmax.end()) argmax.push_back(z);
  }
  const Rational scale = pow(Rational(3), -n);
  HeightResult r;
  // Im = b * sqrt3/2 on the unit scale.
  r.height = SqrtThreeScalar(Rational(0), Rational(best) * scale * Rational(1, 2));
  for (const auto& z : argmax) r.maximizers.emplace_back(Rational(z.a) * scale, Rational(z.b) * scale);
  auto by_a = [](const EisensteinInt& x, const EisensteinInt& y) { return x.a < y.a; };
  auto lo = *std::min_element(argmax.begin(), argmax.end(), by_a);
  auto hi = *std::max_element(argmax.begin(), argmax.end(), by_a);
  r.leftmost = QOmega(Rational(lo.a) * scale, Rational(lo.b) * scale);
  r.rightmost = QOmega(Rational(hi.a) * scale, Rational(hi.b) * scale);
  return r;
}

ExtremePointCheck check_extreme_point_claim(int n) {
  if (n < 2) throw PreconditionError("extreme points are defined from the second iteration on");
  const HeightResult h = height(n);
  ExtremePointCheck c;
  c.n = n;
  c.claimed_left = QOmega(Rational(4, 9), Rational(4, 9));
  c.claimed_right = QOmega(Rational(5, 9), Rational(4, 9));
  c.observed_left = h.leftmost;
  c.observed_right = h.rightmost;
  c.left_matches = c.observed_left == c.claimed_left;
  c.right_matches = c.observed_right == c.claimed_right;
  auto has = [&](const QOmega& q) {
    return std::find(h.maximizers.begin(), h.maximizers.end(), q) != h.maximizers.end();
  };
  c.claimed_left_is_maximizer = has(c.claimed_left);
  c.claimed_right_is_maximizer = has(c.claimed_right);
  return c;
}

SqrtThreeScalar height_closed_form(int n) {
  if (n <= 0) return SqrtThreeScalar(0);
  // 1/(2 sqrt3) = sqrt3/6 and 2/(3 sqrt3) = 2 sqrt3/9.
  if (n == 1) return SqrtThreeScalar(Rational(0), Rational(1, 6));
  return SqrtThreeScalar(Rational(0), Rational(2, 9));
}

std::vector<DissectionPart> centroid_dissection() {
  const QOmega w(Rational(0), Rational(1));
  return {
      {Rational(1, 9), QOmega(0), QOmega(1)},
      {Rational(1, 3), QOmega(1), QOmega(1) + w},
      {Rational(1, 9), QOmega(2) + w, -w},
      {Rational(1, 9), QOmega(2), QOmega(1)},
      {Rational(1, 3), QOmega(Rational(5, 3), Rational(1, 3)), QOmega(0)},
  };
}

QOmega centroid_residual(const QOmega& m) {
  QOmega rhs(0);
  for (const auto& part : centroid_dissection()) {
    rhs = rhs + QOmega(part.weight / Rational(3)) * (part.offset + part.linear * m);
  }
  return rhs - m;
}

QOmega centroid_solve() {
  // m (1 - sum w l / 3) = sum w o / 3
  QOmega coeff(1);
  QOmega constant(0);
  Rational weight_sum(0);
  for (const auto& part : centroid_dissection()) {
    QOmega w3(part.weight / Rational(3));
    coeff = coeff - w3 * part.linear;
    constant = constant + w3 * part.offset;
    weight_sum += part.weight;
  }
  if (weight_sum != Rational(1)) throw InvariantError("dissection weights do not sum to 1");
  if (coeff.is_zero()) throw InvariantError("centroid equation is singular");
  return constant / coeff;
}

Rational revolution_volume(const QOmega& centroid) {
  // V = 2 pi Im(m) A with Im(m) = b sqrt3/2.
  const SqrtThreeScalar im(Rational(0), centroid.b * Rational(1, 2));
  const SqrtThreeScalar v = SqrtThreeScalar(2) * im * curve_area_limit();
  if (!v.q.is_zero()) throw InvariantError("volume coefficient is not rational");
  return v.p;
}

Rational revolution_volume() { return revolution_volume(centroid_solve()); }

double dimension_equation(double d) { return std::pow(3.0, 1.0 - d) + std::pow(3.0, -d / 2.0) - 1.0; }

double hausdorff_dimension(double tol) {
  if (!(tol > 0.0) || tol > 1e-6) throw PreconditionError("hausdorff_dimension requires 0 < tol <= 1e-6");
  double lo = 1.0, hi = 2.0;  // f(1) > 0 > f(2), f decreasing
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted at double precision
    if (dimension_equation(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double hausdorff_dimension_closed_form() {
  return 2.0 * std::log((1.0 + std::sqrt(13.0)) / 2.0) / std::log(3.0);
}

CantorIntervals cantor_remainder(const Polyline& p) {
  const std::int64_t end = checked::pow3(p.scale_exp);
  std::vector<std::pair<std::int64_t, std::int64_t>> pieces;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    const auto& x = p.vertices[i];
    const auto& y = p.vertices[i + 1];
    if (x.b != 0 || y.b != 0) continue;
    std::int64_t lo = std::max<std::int64_t>(0, std::min(x.a, y.a));
    std::int64_t hi = std::min(end, std::max(x.a, y.a));
    if (hi > lo) pieces.emplace_back(lo, hi);
  }
  std::sort(pieces.begin(), pieces.end());
  CantorIntervals out;
  out.n = p.scale_exp;
  for (const auto& piece : pieces) {
    if (!out.intervals.empty() && piece.first <= out.intervals.back().second) {
      out.intervals.back().second = std::max(out.intervals.back().second, piece.second);
    } else {
      out.intervals.push_back(piece);
    }
  }
  return out;
}

CantorIntervals cantor_remainder(int n) {
  if (n < 0) throw PreconditionError("cantor_remainder requires n >= 0");
  return cantor_remainder(numeric_polyline(n));
}

namespace {

struct LoopScan {
  std::vector<std::size_t> stack;  // original indices of kept vertices
  std::vector<std::pair<std::size_t, std::size_t>> loops;  // outermost [i, j]
};

LoopScan scan_loops(const std::vector<EisensteinInt>& v) {
  LoopScan s;
  std::unordered_map<EisensteinInt, std::size_t, EisensteinHash> position;  // vertex -> stack slot
  position.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = position.find(v[i]);
    if (it == position.end()) {
      position.emplace(v[i], s.stack.size());
      s.stack.push_back(i);
      continue;
    }
    // Revisit: collapse everything after the first visit.
    const std::size_t slot = it->second;
    for (std::size_t k = slot + 1; k < s.stack.size(); ++k) position.erase(v[s.stack[k]]);
    s.stack.resize(slot + 1);
    const std::size_t start = s.stack[slot];
    while (!s.loops.empty() && s.loops.back().first >= start) s.loops.pop_back();
    s.loops.emplace_back(start, i);
  }
  return s;
}

}  // namespace

std::vector<Loop> detect_loops(const Polyline& p) {
  if (p.scale_exp <= 6) {
    auto contacts = find_edge_contacts(p.vertices, false, 4);
    for (const auto& c : contacts) {
      if (c.kind != ContactKind::kCollinearOverlap) {
        throw InvariantError("edges " + std::to_string(c.first) + " and " + std::to_string(c.second) +
                             " meet without a shared vertex (" + to_string(c.kind) + ")");
      }
    }
  }
  const LoopScan s = scan_loops(p.vertices);
  std::vector<Loop> out;
  out.reserve(s.loops.size());
  for (auto [i, j] : s.loops) {
    out.push_back(Loop{i, std::vector<EisensteinInt>(p.vertices.begin() + static_cast<std::ptrdiff_t>(i),
                                                     p.vertices.begin() + static_cast<std::ptrdiff_t>(j) + 1)});
  }
  return out;
}

Polyline remove_loops(const Polyline& p) {
  const LoopScan s = scan_loops(p.vertices);
  Polyline out;
  out.scale_exp = p.scale_exp;
  out.vertices.reserve(s.stack.size());
  for (std::size_t i : s.stack) out.vertices.push_back(p.vertices[i]);
  return out;
}

ColoredPolyline curve_c_generate(int n) {
  if (n < 0) throw PreconditionError("curve_c_generate requires n >= 0");
  const EisensteinInt w(0, 1);
  const EisensteinInt one_w(1, 1);
  std::vector<EisensteinInt> pts = {EisensteinInt(0), EisensteinInt(checked::pow3(n))};
  std::vector<EdgeColor> colors = {EdgeColor::kBlack};
  for (int level = 0; level < n; ++level) {
    std::vector<EisensteinInt> next = {pts.front()};
    std::vector<EdgeColor> next_colors;
    auto emit = [&](const EisensteinInt& d, EdgeColor c) {
      next.push_back(next.back() + d);
      next_colors.push_back(c);
    };
    for (std::size_t e = 0; e < colors.size(); ++e) {
      const EisensteinInt d = pts[e + 1] - pts[e];
      if (colors[e] == EdgeColor::kBlack) {
        const EisensteinInt v = d.exact_div(3);
        emit(v, EdgeColor::kBlack);
        emit(one_w * v, EdgeColor::kBlack);
        emit(-(w * v), EdgeColor::kBlue);
        emit(v, EdgeColor::kRed);
        continue;
      }
      if (colors[e] != EdgeColor::kBlue || e + 1 >= colors.size() || colors[e + 1] != EdgeColor::kRed) {
        throw InvariantError("blue edge without a following red edge");
      }
      const EisensteinInt r = (pts[e + 2] - pts[e + 1]).exact_div(3);
      emit(-(w * r), EdgeColor::kBlack);
      emit(-(w * one_w * r), EdgeColor::kBlue);
      emit(one_w * r, EdgeColor::kRed);
      emit(-(w * r), EdgeColor::kBlue);
      emit(r, EdgeColor::kRed);
      ++e;  // the red edge was consumed with its blue partner
    }
    if (next.back() != pts.back()) throw InvariantError("substitution moved the end point");
    pts.swap(next);
    colors.swap(next_colors);
  }
  ColoredPolyline out;
  out.polyline.scale_exp = n;
  out.polyline.vertices = std::move(pts);
  out.colors = std::move(colors);
  SqrtThreeScalar total(0);
  for (std::size_t e = 0; e + 1 < out.polyline.vertices.size(); ++e) {
    const Int128 norm = (out.polyline.vertices[e + 1] - out.polyline.vertices[e]).norm();
    const int m = log3_exact(norm);
    if (m < 0) throw InvariantError("edge length is not a power of sqrt3");
    total += SqrtThreeScalar::sqrt3_pow(m);
  }
  out.total_length = total * scalar(pow(Rational(3), -n));
  return out;
}

double polyline_hausdorff(const std::vector<std::complex<double>>& x,
                          const std::vector<std::complex<double>>& y) {
  if (x.empty() || y.empty()) throw PreconditionError("polyline_hausdorff requires points");
  return std::max(directed_hausdorff(x, y), directed_hausdorff(y, x));
}

SymmetryReport curve_c_symmetry_check(int n, bool rotate_second_half) {
  if (n < 1) throw PreconditionError("curve_c_symmetry_check requires n >= 1");
  const Polyline curve = remove_loops(generate_segments(n));
  const std::int64_t s = checked::pow3(n);
  const EisensteinInt center = EisensteinInt(1, 1) * EisensteinInt(s / 3);
  SymmetryReport r;
  r.n = n;
  Int128 best = -1;
  for (std::size_t i = 0; i < curve.vertices.size(); ++i) {
    const Int128 d = (curve.vertices[i] - center).norm();
    if (best < 0 || d < best) {
      best = d;
      r.split_index = i;
    }
  }
  r.split_exact = best == 0;
  r.split_offset = std::sqrt(static_cast<double>(best)) / static_cast<double>(s);

  const auto& v = curve.vertices;
  std::vector<EisensteinInt> first(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r.split_index) + 1);
  std::vector<EisensteinInt> second(v.begin() + static_cast<std::ptrdiff_t>(r.split_index), v.end());
  // Rotation by +120 degrees about the center: z -> w^2 z + s.
  if (!rotate_second_half) {
    for (auto& z : first) z = omega_pow(2) * z + EisensteinInt(s);
  } else {
    for (auto& z : second) z = omega_pow(4) * (z - EisensteinInt(s));
  }
  r.distance = polyline_hausdorff(to_unit_plane(first, n), to_unit_plane(second, n));
  return r;
}

bool polygon_region_simply_connected(const std::vector<EisensteinInt>& polygon) {
  TriangularRaster raster = raster_for(polygon);
  fill_polygon_even_odd(raster, polygon);
  return raster.complement_components() == 1;
}

bool simply_connected_check(int n, Construction construction) {
  if (n < 1 || n > 5) throw PreconditionError("simply_connected_check requires 1 <= n <= 5");
  if (construction == Construction::kSegments) {
    return polygon_region_simply_connected(generate_segments(n).vertices);
  }
  const auto triangles = generate_triangles(n);
  std::vector<EisensteinInt> corners;
  corners.reserve(triangles.size() * 3);
  for (const auto& t : triangles) {
    for (const auto& c : t.corners()) corners.push_back(c);
  }
  TriangularRaster raster = raster_for(corners);
  for (const auto& t : triangles) {
    auto c = t.corners();
    fill_triangle(raster, c[0], c[1], c[2]);
  }
  return raster.complement_components() == 1;
}

PropertyReport compute_properties(int n) {
  PropertyReport r;
  r.n = n;
  r.length = length_exact(n);
  r.tri_area = tri_area_exact(n);
  r.curve_area = curve_area_exact(n);
  HeightResult h = height(n);
  r.height = h.height;
  r.height_argmax_points = h.maximizers;
  r.centroid = centroid_solve();
  r.volume_over_pi = revolution_volume(r.centroid);
  r.hausdorff_dim = hausdorff_dimension(1e-12);
  return r;
}

}  // namespace kochawave
