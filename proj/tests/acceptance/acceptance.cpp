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

// Acceptance criteria, one PASS/FAIL line each. With an argument, runs only
// that criterion. Exit status is zero only when every selected one passes.

#include <fcntl.h>
#include <spawn.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/golden.hpp"
#include "kochawave/analyze.hpp"
#include "kochawave/construct.hpp"
#include "kochawave/errors.hpp"
#include "kochawave/render.hpp"
#include "kochawave/tiling.hpp"

extern char** environ;

using namespace kochawave;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const SqrtThreeScalar kOnePlusInvSqrt3(Rational(1), Rational(1, 3));

Outcome construction_equivalence() {
  const auto t0 = Clock::now();
  for (int n = 0; n <= 8; ++n) {
    const Polyline s = generate_segments(n);
    if (s.vertices.size() != pow4(n) + 1) return {false, "vertex count at n=" + std::to_string(n)};
    if (numeric_polyline(n) != s) return {false, "numeric differs at n=" + std::to_string(n)};
    if (turtle_run(rewrite_lsystem(n)) != s) return {false, "lsystem differs at n=" + std::to_string(n)};
  }
  const double t = seconds_since(t0);
  return {t < 10.0, "n=0..8 identical, " + fmt("%.3f s", t)};
}

Outcome z_scaling() {
  const std::uint64_t kmax = pow4(6);
  const Polyline p = numeric_polyline(7);
  for (std::uint64_t k = 0; k <= kmax; ++k) {
    const EisensteinInt z = p.vertices[k];
    if (p.vertices[4 * k] != EisensteinInt(3 * z.a, 3 * z.b)) return {false, "fails at k=" + std::to_string(k)};
  }
  return {true, "z_4k = 3 z_k for k <= 4096"};
}

Outcome length() {
  for (int n = 0; n <= 10; ++n) {
    if (length_exact(n) != pow(kOnePlusInvSqrt3, n)) return {false, "differs at n=" + std::to_string(n)};
  }
  return {true, "L_10 = " + length_exact(10).to_string()};
}

Outcome triangle_area() {
  const SqrtThreeScalar quarter(Rational(0), Rational(1, 4));
  for (int n = 0; n <= 8; ++n) {
    if (tri_area_exact(n) != quarter * SqrtThreeScalar(pow(Rational(2, 3), n))) {
      return {false, "differs at n=" + std::to_string(n)};
    }
  }
  return {true, "T_8 = " + tri_area_exact(8).to_string() + " from 65536 triangles"};
}

Outcome curve_area() {
  const SqrtThreeScalar quarter(Rational(0), Rational(1, 4));
  for (int n = 0; n <= 8; ++n) {
    if (SqrtThreeScalar(3) * curve_area_exact(n) + tri_area_exact(n) != quarter) {
      return {false, "3A_n + T_n differs at n=" + std::to_string(n)};
    }
  }
  double worst = 0;
  for (int n = 1; n <= 4; ++n) {
    const double exact = curve_area_exact(n).to_double();
    const double raster = rasterized_area(n, 2187);
    worst = std::max(worst, std::abs(raster - exact) / exact);
  }
  return {worst <= 0.02, "identity exact for n<=8, raster rel err " + fmt("%.2e", worst)};
}

Outcome height_check() {
  for (int n = 0; n <= 8; ++n) {
    if (height(n).height != height_closed_form(n)) return {false, "differs at n=" + std::to_string(n)};
  }
  const HeightResult h = height(8);
  const ExtremePointCheck c = check_extreme_point_claim(8);
  std::cout << "  n=8 height " << h.height.to_string() << ", " << h.maximizers.size() << " maximizers, leftmost "
            << h.leftmost.to_string() << ", rightmost " << h.rightmost.to_string() << '\n';
  std::cout << "  stated extremes: leftmost " << c.claimed_left.to_string() << " ("
            << (c.left_matches ? "matches" : "DISCREPANCY") << ", "
            << (c.claimed_left_is_maximizer ? "is a maximizer" : "not a maximizer") << "), rightmost "
            << c.claimed_right.to_string() << " (" << (c.right_matches ? "matches" : "DISCREPANCY") << ", "
            << (c.claimed_right_is_maximizer ? "is a maximizer" : "not a maximizer") << ")\n";
  return {true, "closed form holds for n<=8; extreme-point discrepancy logged above"};
}

Outcome centroid_volume() {
  const QOmega m = centroid_solve();
  const bool centroid_ok = m == QOmega(Rational(59, 111), Rational(17, 111)) && centroid_residual(m).is_zero();
  const Rational v = revolution_volume(m);
  return {centroid_ok && v == Rational(17, 444), "centroid " + m.to_string() + ", volume " + v.to_string() + " pi"};
}

Outcome dimension() {
  const double d = hausdorff_dimension(1e-12);
  const double closed = 2 * std::log((1 + std::sqrt(13.0)) / 2) / std::log(3.0);
  const bool ok = std::abs(d - closed) <= 1e-10 && std::abs(d - 1.5187) <= 5e-4;
  return {ok, "d = " + fmt("%.15f", d) + ", closed form " + fmt("%.15f", closed)};
}

Outcome cantor() {
  for (int n = 0; n <= 6; ++n) {
    std::vector<std::int64_t> left = {0};
    for (int k = 0; k < n; ++k) {
      std::vector<std::int64_t> next;
      for (auto l : left) {
        next.push_back(3 * l);
        next.push_back(3 * l + 2);
      }
      left = next;
    }
    const auto got = cantor_remainder(n).intervals;
    if (got.size() != (std::size_t{1} << n)) return {false, "interval count at n=" + std::to_string(n)};
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].first != left[i] || got[i].second != left[i] + 1) {
        return {false, "interval mismatch at n=" + std::to_string(n)};
      }
    }
  }
  return {true, "middle-thirds iterate for n<=6"};
}

Outcome loops() {
  if (!detect_loops(generate_segments(0)).empty() || !detect_loops(generate_segments(1)).empty()) {
    return {false, "loops before n=2"};
  }
  if (detect_loops(generate_segments(2)).size() != 1) return {false, "n=2 does not have exactly one loop"};
  const auto golden_loops = golden::select(golden::load("loops_n4.txt"), "loop");
  const auto found = detect_loops(generate_segments(4));
  if (found.size() != golden_loops.size()) return {false, "n=4 loop count " + std::to_string(found.size())};
  const Scene fig = preset("fig14");
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].vertices != golden_loops[i].points) return {false, "n=4 loop " + std::to_string(i) + " differs"};
    if (fig.layers[1].shapes[i].points != to_plane(golden_loops[i].points, 4)) {
      return {false, "rendered loop " + std::to_string(i) + " differs"};
    }
  }
  for (int n = 0; n <= 6; ++n) {
    auto v = remove_loops(generate_segments(n)).vertices;
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return {false, "repeat after removal at n=" + std::to_string(n)};
  }
  return {true, "0,0,1 loops at n=0..2; " + std::to_string(found.size()) + " loops at n=4 match the overlay"};
}

Outcome curve_c() {
  const SqrtThreeScalar lower_step(Rational(1, 2), Rational(1, 3));
  bool bounds = true;
  for (int n = 0; n <= 8; ++n) {
    const SqrtThreeScalar c = curve_c_generate(n).total_length;
    bounds = bounds && pow(lower_step, n) <= c && c <= pow(kOnePlusInvSqrt3, n);
  }
  const SqrtThreeScalar stated(Rational(2, 3), Rational(1, 3));  // (2+sqrt3)/3
  const SqrtThreeScalar c1 = curve_c_generate(1).total_length;
  const double d3 = curve_c_symmetry_check(3).distance;
  const double d4 = curve_c_symmetry_check(4).distance;
  const double d5 = curve_c_symmetry_check(5).distance;
  const bool decreasing = d3 > d4 && d4 > d5;
  std::cout << "  bounds n<=8: " << (bounds ? "hold" : "VIOLATED") << "; c_1 = " << c1.to_string()
            << ", required " << stated.to_string() << "; symmetry distances " << fmt("%.6f", d3) << " "
            << fmt("%.6f", d4) << " " << fmt("%.6f", d5) << '\n';
  return {bounds && c1 == stated && decreasing,
          c1 == stated ? "c_1 matches" : "c_1 = (3+sqrt3)/3, not (2+sqrt3)/3"};
}

// The boundary, read as a cycle, maps onto itself under z -> omega^2 z + 3^n.
bool rotation_invariant(const Tile& t) {
  std::vector<EisensteinInt> v(t.boundary.vertices.begin(), t.boundary.vertices.end() - 1);
  const EisensteinInt w2(-1, 1), s(checked::pow3(t.n));
  std::vector<EisensteinInt> r;
  for (const auto& z : v) r.push_back(w2 * z + s);
  const auto it = std::find(v.begin(), v.end(), r.front());
  if (it == v.end()) return false;
  std::rotate(v.begin(), it, v.end());
  return v == r;
}

Outcome tilings() {
  for (TileKind k : all_tile_kinds()) {
    const Tile t = build_tile(k, 2);
    if (t.boundary.vertices.front() != t.boundary.vertices.back()) return {false, to_string(k) + " open"};
    if (k == TileKind::kTriangular && !rotation_invariant(t)) return {false, "triangular rotation"};
  }
  const unsigned threads = threads_from_env(8);
  const int check_n = 14;
  const double eps = std::pow(3.0, -check_n) / 10;
  bool ok = true;
  std::string detail;
  for (TileKind k : all_tile_kinds()) {
    const Covering c = (k == TileKind::kRhomboidal || k == TileKind::kDart)
                           ? cover_scale_invariant(k, check_n, -2, 1)
                           : cover_periodic(k, lattice_window(QOmega(0), Rational(3), Rational(3)), check_n);
    const CoveringCheck r = check_covering(c, 100000, eps, threads);
    ok = ok && r.pass;
    detail += to_string(k) + " " + fmt("%.4f", r.fraction_one) + (r.pass ? "" : " FAIL") + "; ";
  }
  return {ok, detail + "tiles closed, triangular rotation exact"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct SpawnResult {
  int status = -1;
  double seconds = 0;
  long maxrss_kb = 0;
};

SpawnResult spawn_cli(const std::vector<std::string>& args, const std::string& out_path) {
  std::vector<char*> argv;
  std::string exe = KOCHAWAVE_CLI_PATH;
  argv.push_back(exe.data());
  std::vector<std::string> copy = args;
  for (auto& a : copy) argv.push_back(a.data());
  argv.push_back(nullptr);
  posix_spawn_file_actions_t fa;
  posix_spawn_file_actions_init(&fa);
  posix_spawn_file_actions_addopen(&fa, 1, out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  SpawnResult r;
  pid_t pid = 0;
  const auto t0 = Clock::now();
  if (posix_spawn(&pid, exe.c_str(), &fa, nullptr, argv.data(), environ) != 0) {
    posix_spawn_file_actions_destroy(&fa);
    return r;
  }
  int status = 0;
  struct rusage ru {};
  wait4(pid, &status, 0, &ru);
  r.seconds = seconds_since(t0);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.maxrss_kb = ru.ru_maxrss;
  posix_spawn_file_actions_destroy(&fa);
  return r;
}

Outcome performance() {
  const std::vector<std::string> args = {"generate", "--construction", "numeric", "--n", "10", "--format", "csv"};
  char tmpl[] = "/tmp/kochawave-accept-XXXXXX";
  if (!mkdtemp(tmpl)) return {false, "cannot create temp dir"};
  const std::string dir = tmpl;
  const SpawnResult a = spawn_cli(args, dir + "/a.csv");
  const SpawnResult b = spawn_cli(args, dir + "/b.csv");
  const std::string sa = slurp(dir + "/a.csv"), sb = slurp(dir + "/b.csv");
  std::remove((dir + "/a.csv").c_str());
  std::remove((dir + "/b.csv").c_str());
  rmdir(dir.c_str());
  const std::size_t rows = static_cast<std::size_t>(std::count(sa.begin(), sa.end(), '\n'));
  const double secs = std::max(a.seconds, b.seconds);
  const double mb = std::max(a.maxrss_kb, b.maxrss_kb) / 1024.0;
  const bool ok = a.status == 0 && b.status == 0 && rows == pow4(10) + 2 && sa == sb && secs < 2.0 && mb < 100.0;
  return {ok, std::to_string(rows - 1) + " points, " + fmt("%.3f s", secs) + ", " + fmt("%.1f MB", mb) +
                  (sa == sb ? ", runs identical" : ", runs DIFFER")};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"construction equivalence", construction_equivalence},
      {"z scaling", z_scaling},
      {"length", length},
      {"triangle area", triangle_area},
      {"curve area", curve_area},
      {"height", height_check},
      {"centroid and volume", centroid_volume},
      {"dimension", dimension},
      {"cantor remainder", cantor},
      {"loops", loops},
      {"curve C", curve_c},
      {"tilings", tilings},
      {"performance", performance},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::cerr << "usage: kochawave_acceptance [1-" << criteria.size() << "]\n";
      return 2;
    }
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].name << ": " << o.detail
              << std::endl;
  }
  return all ? 0 : 1;
}
