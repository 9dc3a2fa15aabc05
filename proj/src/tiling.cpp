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

#include "kochawave/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "kochawave/errors.hpp"
#include "kochawave/geometry.hpp"

namespace kochawave {

namespace {

using cplx = std::complex<double>;

const EisensteinInt kOmega(0, 1);
const EisensteinInt kOmega2(-1, 1);  // omega^2 = omega - 1

const cplx kW(0.5, std::numbers::sqrt3 / 2);

// z -> a * (conj ? conj(z) : z) + b in the plane.
struct Affine {
  cplx a;
  cplx b;
  bool conj = false;

  cplx operator()(cplx z) const { return a * (conj ? std::conj(z) : z) + b; }
};

// The four similarities whose images make up the unit curve.
const std::array<Affine, 4>& curve_maps() {
  static const std::array<Affine, 4> maps = {{
      {1.0 / 3.0, 0.0, false},
      {(1.0 + kW) / 3.0, 1.0 / 3.0, false},
      {-kW / 3.0, (2.0 + kW) / 3.0, false},
      {1.0 / 3.0, 2.0 / 3.0, false},
  }};
  return maps;
}

Affine compose(const Affine& g, const Affine& f) {
  const cplx fa = g.conj ? std::conj(f.a) : f.a;
  const cplx fb = g.conj ? std::conj(f.b) : f.b;
  return {g.a * fa, g.a * fb + g.b, g.conj != f.conj};
}

double bbox_distance(cplx q, double xmin, double xmax, double ymin, double ymax) {
  const double dx = std::max({xmin - q.real(), 0.0, q.real() - xmax});
  const double dy = std::max({ymin - q.imag(), 0.0, q.imag() - ymax});
  return std::hypot(dx, dy);
}

double segment_distance(cplx q, cplx p0, cplx p1) {
  const cplx d = p1 - p0;
  const double len2 = std::norm(d);
  double t = len2 == 0 ? 0 : ((q - p0) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(q - (p0 + t * d));
}

// Walks the curve hierarchy under g. Flips `parity` once per crossing of the
// rightward ray from q and sets `near` when q is within eps of an edge.
void walk(const Affine& g, int depth, cplx q, double eps, bool& parity, bool& near) {
  const cplx p0 = g.b;
  const cplx p1 = g.a + g.b;
  if (depth == 0) {
    if ((p0.imag() > q.imag()) != (p1.imag() > q.imag())) {
      const double x = p0.real() + (q.imag() - p0.imag()) * (p1.real() - p0.real()) / (p1.imag() - p0.imag());
      if (x > q.real()) parity = !parity;
    }
    if (eps > 0 && !near && segment_distance(q, p0, p1) <= eps) near = true;
    return;
  }
  // The piece lies in the image of the triangle 0, 1, omega.
  const cplx p2 = g(kW);
  const double xmin = std::min({p0.real(), p1.real(), p2.real()});
  const double xmax = std::max({p0.real(), p1.real(), p2.real()});
  const double ymin = std::min({p0.imag(), p1.imag(), p2.imag()});
  const double ymax = std::max({p0.imag(), p1.imag(), p2.imag()});
  const bool straddles = xmin <= q.real() && q.real() <= xmax && ymin <= q.imag() && q.imag() < ymax;
  const bool may_be_near = eps > 0 && !near && bbox_distance(q, xmin, xmax, ymin, ymax) <= eps;
  if (!straddles && !may_be_near) {
    // Wholly right of q: the crossings telescope to the endpoints.
    if (xmin > q.real() && (p0.imag() > q.imag()) != (p1.imag() > q.imag())) parity = !parity;
    return;
  }
  for (const Affine& f : curve_maps()) walk(compose(g, f), depth - 1, q, eps, parity, near);
}

cplx to_plane(const EisensteinInt& z) { return z.to_complex(); }

cplx placement_factor(const Placement& p) {
  return std::pow(3.0, p.scale_exp) * std::polar(1.0, std::numbers::pi * p.rot / 6.0);
}

// Curve copies of a tile composed with its placement.
std::vector<Affine> placed_curves(TileKind kind, const Placement& p) {
  const cplx m = placement_factor(p);
  const cplx t = p.translation.to_complex();
  std::vector<Affine> out;
  for (const CurveCopy& c : tile_curves(kind)) {
    const cplx s = to_plane(c.scale);
    const cplx o = to_plane(c.offset);
    if (p.mirrored) {
      out.push_back({m * std::conj(s), m * std::conj(o) + t, !c.conjugate});
    } else {
      out.push_back({m * s, m * o + t, c.conjugate});
    }
  }
  return out;
}

struct Disk {
  cplx center;
  double radius = 0;
};

// Disk around every curve triangle of the unplaced tile.
Disk tile_disk(TileKind kind) {
  std::vector<cplx> pts;
  for (const CurveCopy& c : tile_curves(kind)) {
    const Affine g{to_plane(c.scale), to_plane(c.offset), c.conjugate};
    pts.push_back(g(0.0));
    pts.push_back(g(1.0));
    pts.push_back(g(kW));
  }
  double xmin = pts[0].real(), xmax = xmin, ymin = pts[0].imag(), ymax = ymin;
  for (cplx z : pts) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  Disk d{cplx((xmin + xmax) / 2, (ymin + ymax) / 2), 0};
  for (cplx z : pts) d.radius = std::max(d.radius, std::abs(z - d.center));
  return d;
}

Disk placed_disk(TileKind kind, const Placement& p) {
  const Disk d = tile_disk(kind);
  return {apply(p, d.center), d.radius * std::pow(3.0, p.scale_exp)};
}

bool disk_meets_box(const Disk& d, std::pair<cplx, cplx> box) {
  return bbox_distance(d.center, box.first.real(), box.second.real(), box.first.imag(),
                       box.second.imag()) <= d.radius;
}

int cmp(const Rational& x, const Rational& y) {
  auto c = x <=> y;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

constexpr double kShiftS = 0.6180339887498949;  // (sqrt5 - 1) / 2
constexpr double kShiftT = 0.4142135623730950;  // sqrt2 - 1

double halton(std::size_t i, unsigned base) {
  double f = 1, r = 0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

std::string to_string(TileKind kind) {
  switch (kind) {
    case TileKind::kBifaceAntisym:
      return "biface_antisym";
    case TileKind::kBifaceSym:
      return "biface_sym";
    case TileKind::kTriangular:
      return "triangular";
    case TileKind::kRhomboidal:
      return "rhomboidal";
    case TileKind::kDart:
      return "dart";
  }
  return "unknown";
}

std::optional<TileKind> tile_kind_from_string(std::string_view name) {
  for (TileKind k : all_tile_kinds()) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

const std::vector<TileKind>& all_tile_kinds() {
  static const std::vector<TileKind> kinds = {TileKind::kBifaceAntisym, TileKind::kBifaceSym,
                                              TileKind::kTriangular, TileKind::kRhomboidal,
                                              TileKind::kDart};
  return kinds;
}

EisensteinInt CurveCopy::start() const { return reversed ? scale + offset : offset; }
EisensteinInt CurveCopy::end() const { return reversed ? offset : scale + offset; }

const std::vector<CurveCopy>& tile_curves(TileKind kind) {
  const EisensteinInt one(1);
  const EisensteinInt one_plus_omega(1, 1);
  static const std::vector<CurveCopy> antisym = {{one, 0, false, false}, {-one, one, false, false}};
  static const std::vector<CurveCopy> sym = {{one, 0, false, false}, {one, 0, true, true}};
  // Each edge of the triangle 0, 1, omega carries the curve bulging outward.
  static const std::vector<CurveCopy> triangular = {
      {-one, one, false, true},
      {-kOmega2, kOmega, false, true},
      {kOmega, 0, false, true},
  };
  // Parallelogram 0, 1+omega, 1, -omega.
  static const std::vector<CurveCopy> rhomboidal = {
      {one_plus_omega, 0, false, false},
      {-kOmega, one_plus_omega, false, false},
      {-one_plus_omega, one, false, false},
      {kOmega, -kOmega, false, false},
  };
  // Dart 0, 1+omega, 1, 2-omega, mirror symmetric about the real axis.
  static const std::vector<CurveCopy> dart = {
      {one_plus_omega, 0, false, false},
      {-kOmega, one_plus_omega, false, false},
      {-EisensteinInt(1, -1), EisensteinInt(2, -1), true, true},
      {EisensteinInt(2, -1), 0, true, true},
  };
  switch (kind) {
    case TileKind::kBifaceAntisym:
      return antisym;
    case TileKind::kBifaceSym:
      return sym;
    case TileKind::kTriangular:
      return triangular;
    case TileKind::kRhomboidal:
      return rhomboidal;
    case TileKind::kDart:
      return dart;
  }
  throw PreconditionError("unknown tile kind");
}

std::vector<EisensteinInt> tile_corners(TileKind kind) {
  std::vector<EisensteinInt> out;
  for (const CurveCopy& c : tile_curves(kind)) out.push_back(c.start());
  return out;
}

Tile build_tile(TileKind kind, int n, const GenerationLimits& limits) {
  if (n < 1) throw PreconditionError("build_tile requires n >= 1");
  const auto& curves = tile_curves(kind);
  if (pow4(n) * curves.size() > limits.max_vertices) throw ResourceError("tile boundary too large");
  const Polyline base = generate_segments(n, limits);
  const std::int64_t s = checked::pow3(n);

  Tile tile{kind, n, {n, {}}};
  auto& out = tile.boundary.vertices;
  out.reserve(base.vertices.size() * curves.size());
  for (const CurveCopy& c : curves) {
    std::vector<EisensteinInt> piece;
    piece.reserve(base.vertices.size());
    const EisensteinInt shift = c.offset * EisensteinInt(s);
    for (const EisensteinInt& z : base.vertices) piece.push_back(c.scale * (c.conjugate ? z.conj() : z) + shift);
    if (c.reversed) std::reverse(piece.begin(), piece.end());
    if (!out.empty()) {
      if (out.back() != piece.front()) {
        throw ConstructionError(to_string(kind) + ": curve copies do not join at " + to_string(out.back()));
      }
      out.insert(out.end(), piece.begin() + 1, piece.end());
    } else {
      out = std::move(piece);
    }
  }
  if (out.front() != out.back()) throw ConstructionError(to_string(kind) + ": boundary is not closed");

  for (const EdgeContact& e : find_edge_contacts(out, false, std::numeric_limits<std::size_t>::max())) {
    if (e.kind == ContactKind::kProperCrossing) {
      throw ConstructionError(to_string(kind) + ": boundary edges " + std::to_string(e.first) + " and " +
                              std::to_string(e.second) + " cross");
    }
  }
  return tile;
}

bool placement_less(const Placement& x, const Placement& y) {
  if (x.scale_exp != y.scale_exp) return x.scale_exp < y.scale_exp;
  if (x.rot != y.rot) return x.rot < y.rot;
  if (x.mirrored != y.mirrored) return !x.mirrored;
  if (int c = cmp(x.translation.b, y.translation.b)) return c < 0;
  return cmp(x.translation.a, y.translation.a) < 0;
}

QOmega apply(const Placement& p, const QOmega& z) {
  if (p.rot % 2 != 0) throw PreconditionError("odd rotations leave Q(omega)");
  const QOmega w = p.mirrored ? z.conj() : z;
  const QOmega factor = QOmega(omega_pow(p.rot / 2)) * QOmega(pow(Rational(3), p.scale_exp));
  return factor * w + p.translation;
}

cplx apply(const Placement& p, cplx z) {
  return placement_factor(p) * (p.mirrored ? std::conj(z) : z) + p.translation.to_complex();
}

bool Window::empty() const {
  // Zero area: e1 and e2 are parallel or one vanishes.
  return (e1 * e2.conj()).b.is_zero();
}

cplx Window::at(double s, double t) const {
  return origin.to_complex() + s * e1.to_complex() + t * e2.to_complex();
}

std::pair<cplx, cplx> Window::bounds() const {
  const std::array<cplx, 4> c = {at(0, 0), at(1, 0), at(0, 1), at(1, 1)};
  double xmin = c[0].real(), xmax = xmin, ymin = c[0].imag(), ymax = ymin;
  for (cplx z : c) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  return {cplx(xmin, ymin), cplx(xmax, ymax)};
}

Window lattice_window(const QOmega& origin, const Rational& width, const Rational& height) {
  return {origin, QOmega(width), QOmega(Rational(0), height)};
}

Covering cover_periodic(TileKind kind, const Window& window, int n) {
  if (n < 1) throw PreconditionError("cover_periodic requires n >= 1");
  if (kind != TileKind::kBifaceAntisym && kind != TileKind::kBifaceSym && kind != TileKind::kTriangular) {
    throw PreconditionError(to_string(kind) + " has no periodic covering");
  }
  Covering c;
  c.scheme = kind;
  c.n = n;
  c.window = window;
  c.unresolved_kind = kind;
  if (window.empty()) return c;

  const auto box = window.bounds();
  const double reach = tile_disk(kind).radius + std::abs(tile_disk(kind).center) + 1;
  const double h = std::numbers::sqrt3 / 2;
  const auto j_lo = static_cast<std::int64_t>(std::floor((box.first.imag() - reach) / h));
  const auto j_hi = static_cast<std::int64_t>(std::ceil((box.second.imag() + reach) / h));
  // Biface copies sit on the edges leaving each lattice point in the
  // directions 1, omega^2 and omega^4.
  const std::vector<int> rots =
      kind == TileKind::kTriangular ? std::vector<int>{0} : std::vector<int>{0, 4, 8};
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    const double shift = static_cast<double>(j) / 2;
    const auto i_lo = static_cast<std::int64_t>(std::floor(box.first.real() - reach - shift));
    const auto i_hi = static_cast<std::int64_t>(std::ceil(box.second.real() + reach - shift));
    for (std::int64_t i = i_lo; i <= i_hi; ++i) {
      for (int r : rots) {
        Placement p{r, 0, QOmega(EisensteinInt(i, j)), false};
        if (disk_meets_box(placed_disk(kind, p), box)) c.placements.push_back(p);
      }
    }
  }
  return c;
}

Window default_scale_invariant_window(int kmax) {
  const Rational h = pow(Rational(3), kmax + 1) * Rational(1, 4);
  const QOmega origin = QOmega(-h, -h);
  return {origin, QOmega(h * Rational(2)), QOmega(Rational(0), h * Rational(2))};
}

Covering cover_scale_invariant(TileKind kind, int n, int kmin, int kmax, std::optional<Window> window) {
  if (n < 1) throw PreconditionError("cover_scale_invariant requires n >= 1");
  if (kind != TileKind::kRhomboidal && kind != TileKind::kDart) {
    throw PreconditionError(to_string(kind) + " has no scale-invariant covering");
  }
  if (kmin > kmax) throw PreconditionError("empty k range");
  if (kmax - kmin > 12) throw ResourceError("k range too wide");

  Covering c;
  c.scheme = kind;
  c.n = n;
  c.window = window ? *window : default_scale_invariant_window(kmax);
  c.k_range = std::make_pair(kmin, kmax);
  // A biface splits into the tile on its middle third and two bifaces on
  // the outer thirds, all scaled by 1/3.
  c.unresolved_kind = kind == TileKind::kRhomboidal ? TileKind::kBifaceAntisym : TileKind::kBifaceSym;
  if (c.window.empty()) return c;
  const auto box = c.window.bounds();

  std::vector<Placement> stack;
  for (int r : {0, 4, 8}) {
    const QOmega dir(omega_pow(r / 2));
    stack.push_back({r, kmax + 1, QOmega(0), false});
    stack.push_back({r, kmax + 1, -(dir * QOmega(pow(Rational(3), kmax + 1))), false});
  }
  while (!stack.empty()) {
    const Placement b = stack.back();
    stack.pop_back();
    if (!disk_meets_box(placed_disk(c.unresolved_kind, b), box)) continue;
    if (b.scale_exp - 1 < kmin) {
      c.unresolved.push_back(b);
      continue;
    }
    const QOmega step = QOmega(omega_pow(b.rot / 2)) * QOmega(pow(Rational(3), b.scale_exp - 1));
    const Placement tile{b.rot, b.scale_exp - 1, b.translation + step, false};
    if (disk_meets_box(placed_disk(kind, tile), box)) c.placements.push_back(tile);
    stack.push_back({b.rot, b.scale_exp - 1, b.translation, false});
    stack.push_back({b.rot, b.scale_exp - 1, b.translation + step * QOmega(2), false});
  }
  std::sort(c.placements.begin(), c.placements.end(), placement_less);
  std::sort(c.unresolved.begin(), c.unresolved.end(), placement_less);
  return c;
}

Covering scale_covering(const Covering& c, int shift) {
  Covering out = c;
  const QOmega f(pow(Rational(3), shift));
  auto scale = [&](Placement p) {
    p.scale_exp += shift;
    p.translation = p.translation * f;
    return p;
  };
  for (auto& p : out.placements) p = scale(p);
  for (auto& p : out.unresolved) p = scale(p);
  out.window = {c.window.origin * f, c.window.e1 * f, c.window.e2 * f};
  if (out.k_range) out.k_range = std::make_pair(out.k_range->first + shift, out.k_range->second + shift);
  return out;
}

bool same_placements(const std::vector<Placement>& x, const std::vector<Placement>& y) {
  auto a = x, b = y;
  std::sort(a.begin(), a.end(), placement_less);
  std::sort(b.begin(), b.end(), placement_less);
  return a == b;
}

bool tile_contains(TileKind kind, const Placement& p, int n, cplx z) {
  bool parity = false, near = false;
  for (const Affine& g : placed_curves(kind, p)) walk(g, n, z, 0, parity, near);
  return parity;
}

CoveringCheck check_covering(const Covering& c, std::size_t samples, double epsilon, unsigned threads) {
  if (samples < 1000) throw PreconditionError("check_covering requires at least 1000 samples");
  if (epsilon < 0) throw PreconditionError("epsilon must be non-negative");
  CoveringCheck r;
  r.samples = samples;
  r.epsilon = epsilon;
  if (c.window.empty()) return r;

  struct Placed {
    Disk disk;
    std::vector<Affine> curves;
  };
  auto prepare = [&](TileKind kind, const std::vector<Placement>& ps) {
    std::vector<Placed> out;
    out.reserve(ps.size());
    for (const Placement& p : ps) out.push_back({placed_disk(kind, p), placed_curves(kind, p)});
    return out;
  };
  const auto tiles = prepare(c.scheme, c.placements);
  const auto holes = prepare(c.unresolved_kind, c.unresolved);

  // Per sample: multiplicity, or -1 when near a boundary; flag for holes.
  std::vector<int> mult(samples, 0);
  std::vector<std::uint8_t> in_hole(samples, 0);
  std::vector<cplx> points(samples);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      // Shifted by fixed irrationals so that no sample sits on the triadic
      // lattice lines the boundaries run along.
      const double u = std::fmod(halton(i + 1, 2) + kShiftS, 1.0);
      const double v = std::fmod(halton(i + 1, 3) + kShiftT, 1.0);
      const cplx q = c.window.at(u, v);
      points[i] = q;
      int m = 0;
      bool near = false;
      for (const Placed& t : tiles) {
        if (std::abs(q - t.disk.center) > t.disk.radius + epsilon) continue;
        bool parity = false;
        for (const Affine& g : t.curves) walk(g, c.n, q, epsilon, parity, near);
        if (near) break;
        m += parity ? 1 : 0;
      }
      if (near) {
        mult[i] = -1;
        continue;
      }
      mult[i] = m;
      for (const Placed& t : holes) {
        if (std::abs(q - t.disk.center) > t.disk.radius) continue;
        bool parity = false, unused = false;
        for (const Affine& g : t.curves) walk(g, c.n, q, 0, parity, unused);
        if (parity) {
          in_hole[i] = 1;
          break;
        }
      }
    }
  };
  const unsigned nt = std::max(1u, std::min<unsigned>(threads, 64));
  if (nt == 1) {
    work(0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (samples + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
      const std::size_t lo = std::min(samples, t * chunk), hi = std::min(samples, lo + chunk);
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < samples; ++i) {
    if (mult[i] < 0) {
      ++r.near_boundary;
      continue;
    }
    ++r.considered;
    ++r.histogram[mult[i]];
    if (in_hole[i]) ++r.unresolved;
    if (mult[i] == 1) {
      ++r.multiplicity_one;
    } else {
      bad.push_back(i);
    }
  }
  std::stable_sort(bad.begin(), bad.end(),
                   [&](std::size_t x, std::size_t y) { return std::abs(mult[x] - 1) > std::abs(mult[y] - 1); });
  for (std::size_t k = 0; k < std::min<std::size_t>(bad.size(), 10); ++k) {
    r.worst.push_back({points[bad[k]], mult[bad[k]]});
  }
  r.fraction_one = r.considered == 0 ? 0 : static_cast<double>(r.multiplicity_one) / static_cast<double>(r.considered);
  r.pass = r.considered > 0 && r.fraction_one >= 0.99;
  return r;
}

}  // namespace kochawave
