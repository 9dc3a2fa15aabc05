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

#include "kochawave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "kochawave/analyze.hpp"
#include "kochawave/construct.hpp"
#include "kochawave/errors.hpp"
#include "kochawave/render.hpp"
#include "kochawave/report.hpp"
#include "kochawave/tiling.hpp"

namespace kochawave {

using nlohmann::json;

namespace {

// Raised for problems the user can fix by changing the command line.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  unsigned threads = 0;
  int max_n = 12;
  bool allow_large = false;
};

unsigned resolve_threads(const Common& c) {
  if (c.threads > 0) return c.threads;
  return threads_from_env(std::max(1u, std::thread::hardware_concurrency()));
}

void check_n(const Common& c, int n, const char* flag = "--n") {
  if (n < 0) throw UsageError(std::string(flag) + " must be non-negative");
  if (n > c.max_n && !c.allow_large) {
    throw UsageError(std::string(flag) + " " + std::to_string(n) + " exceeds --max-n " + std::to_string(c.max_n) +
                     "; pass --allow-large to override");
  }
}

// Writes to the file at `path`, or to `out` when the path is empty.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  body(f);
  f.flush();
  if (!f) throw UsageError("write to " + path + " failed");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateConfig {
  int n = 3;
  std::string construction = "segments";
  std::string format = "csv";
  std::string output;
};

Polyline build_polyline(const GenerateConfig& g, const GenerationLimits& limits) {
  if (g.construction == "segments") return generate_segments(g.n, limits);
  if (g.construction == "lsystem") return turtle_run(rewrite_lsystem(g.n));
  return numeric_polyline(g.n, limits.max_vertices);
}

int cmd_generate(const GenerateConfig& g, const Common& c, std::ostream& out) {
  check_n(c, g.n);
  GenerationLimits limits;
  limits.threads = resolve_threads(c);
  const std::string title = "iteration " + std::to_string(g.n);

  if (g.construction == "numeric" && g.format == "csv") {
    emit(g.output, out, [&](std::ostream& os) { stream_numeric_csv(os, g.n); });
    return kExitOk;
  }

  if (g.construction == "triangles") {
    const auto tris = generate_triangles(g.n, limits);
    if (g.format == "svg") {
      const std::string svg = render_svg(triangles_scene(tris, g.n, "triangles at " + title));
      emit(g.output, out, [&](std::ostream& os) { os << svg; });
    } else if (g.format == "json") {
      json rows = json::array();
      for (const auto& t : tris) rows.push_back(json::array({t.p.a, t.p.b, t.u.a, t.u.b}));
      json doc = {{"schema", kVerticesSchema},
                  {"config", {{"construction", g.construction}, {"n", g.n}, {"format", g.format}}},
                  {"scale_exp", g.n},
                  {"triangles", rows}};
      emit(g.output, out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
    } else {
      emit(g.output, out, [&](std::ostream& os) {
        os << "k,pa,pb,ua,ub\n";
        for (std::size_t k = 0; k < tris.size(); ++k) {
          const auto& t = tris[k];
          os << k << ',' << t.p.a << ',' << t.p.b << ',' << t.u.a << ',' << t.u.b << '\n';
        }
      });
    }
    return kExitOk;
  }

  const Polyline p = build_polyline(g, limits);
  if (g.format == "svg") {
    const std::string svg = render_svg(polyline_scene(p, title));
    emit(g.output, out, [&](std::ostream& os) { os << svg; });
  } else if (g.format == "json") {
    json rows = json::array();
    for (const auto& z : p.vertices) rows.push_back(json::array({z.a, z.b}));
    json doc = {{"schema", kVerticesSchema},
                {"config", {{"construction", g.construction}, {"n", g.n}, {"format", g.format}}},
                {"scale_exp", p.scale_exp},
                {"vertices", rows}};
    emit(g.output, out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
  } else {
    emit(g.output, out, [&](std::ostream& os) { write_vertices_csv(os, p.vertices); });
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyConfig {
  int n = 5;
  std::vector<std::string> only;
  double tol = 1e-12;
  std::string inject_fault;
  std::string format = "text";
  std::string output;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  bool informational = false;
  std::string expected;
  std::string actual;
};

struct Check {
  std::string name;
  bool informational;
  std::function<CheckResult(const VerifyConfig&)> run;
};

CheckResult result(bool pass, std::string expected, std::string actual) {
  return {"", pass, false, std::move(expected), std::move(actual)};
}

SqrtThreeScalar one_plus_inv_sqrt3() { return {Rational(1), Rational(1, 3)}; }

// Middle-thirds iterate at level n in units of 3^-n.
std::vector<std::pair<std::int64_t, std::int64_t>> middle_thirds(int n) {
  std::vector<std::int64_t> left = {0};
  for (int k = 0; k < n; ++k) {
    std::vector<std::int64_t> next;
    for (auto l : left) {
      next.push_back(3 * l);
      next.push_back(3 * l + 2);
    }
    left = std::move(next);
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto l : left) out.emplace_back(l, l + 1);
  return out;
}

const std::vector<Check>& verify_checks() {
  static const std::vector<Check> checks = {
      {"construction_equivalence", false,
       [](const VerifyConfig& v) {
         TurtleRules rules = TurtleRules::standard();
         if (v.inject_fault == "turtle-rule") rules.plus_dh = 2;
         for (int k = 0; k <= v.n; ++k) {
           const Polyline s = generate_segments(k);
           const Polyline z = numeric_polyline(k);
           if (s != z) return result(false, "segments == numeric", "differ at n=" + std::to_string(k));
           Polyline t;
           try {
             t = turtle_run(rewrite_lsystem(k), rules);
           } catch (const Error& e) {
             return result(false, "segments == lsystem", "lsystem failed at n=" + std::to_string(k) + ": " + e.what());
           }
           if (s != t) return result(false, "segments == lsystem", "differ at n=" + std::to_string(k));
           if (s.vertices.size() != pow4(k) + 1) return result(false, "4^n+1 vertices", "wrong count");
         }
         return result(true, "identical vertex lists for n<=" + std::to_string(v.n), "identical");
       }},
      {"z_scaling", false,
       [](const VerifyConfig& v) {
         const std::uint64_t kmax = pow4(v.n);
         const Polyline p = numeric_polyline(v.n + 1);
         for (std::uint64_t k = 0; k <= kmax; ++k) {
           const auto& zk = p.vertices[k];
           if (p.vertices[4 * k] != EisensteinInt(3 * zk.a, 3 * zk.b)) {
             return result(false, "z_4k = 3 z_k", "fails at k=" + std::to_string(k));
           }
         }
         return result(true, "z_4k = 3 z_k for k<=" + std::to_string(kmax), "holds");
       }},
      {"length", false,
       [](const VerifyConfig& v) {
         for (int k = 0; k <= v.n; ++k) {
           const SqrtThreeScalar want = pow(one_plus_inv_sqrt3(), k);
           const SqrtThreeScalar got = length_exact(k);
           if (got != want) return result(false, want.to_string(), got.to_string());
           const Polyline p = generate_segments(k);
           double sum = 0;
           for (std::size_t i = 1; i < p.vertices.size(); ++i) {
             sum += std::sqrt(static_cast<double>((p.vertices[i] - p.vertices[i - 1]).norm()));
           }
           sum /= std::pow(3.0, k);
           if (std::abs(sum - want.to_double()) > v.tol * std::max(1.0, want.to_double()) * 1e3) {
             return result(false, fmt(want.to_double()), "polyline length " + fmt(sum));
           }
         }
         return result(true, "(1+1/sqrt3)^n", length_exact(v.n).to_string());
       }},
      {"tri_area", false,
       [](const VerifyConfig& v) {
         for (int k = 0; k <= v.n; ++k) {
           const SqrtThreeScalar want =
               SqrtThreeScalar(Rational(0), Rational(1, 4)) * SqrtThreeScalar(pow(Rational(2, 3), k));
           const SqrtThreeScalar got = tri_area_exact(k);
           if (got != want) return result(false, want.to_string(), got.to_string());
         }
         return result(true, "(sqrt3/4)(2/3)^n", tri_area_exact(v.n).to_string());
       }},
      {"curve_area", false,
       [](const VerifyConfig& v) {
         const SqrtThreeScalar quarter(Rational(0), Rational(1, 4));
         for (int k = 0; k <= v.n; ++k) {
           const SqrtThreeScalar lhs = SqrtThreeScalar(3) * curve_area_exact(k) + tri_area_exact(k);
           if (lhs != quarter) return result(false, quarter.to_string(), lhs.to_string());
         }
         return result(true, "3A_n + T_n = sqrt3/4", curve_area_exact(v.n).to_string());
       }},
      {"rasterized_area", false,
       [](const VerifyConfig& v) {
         std::string worst;
         bool ok = true;
         for (int k = 1; k <= std::min(v.n, 4); ++k) {
           const double exact = curve_area_exact(k).to_double();
           const double raster = rasterized_area(k, 3 * static_cast<std::int64_t>(std::pow(3, k)) * 27);
           const double rel = std::abs(raster - exact) / exact;
           worst += "n=" + std::to_string(k) + ":" + fmt(rel) + " ";
           ok = ok && rel <= 0.02;
         }
         return result(ok, "relative error <= 0.02", worst);
       }},
      {"height", false,
       [](const VerifyConfig& v) {
         for (int k = 0; k <= v.n; ++k) {
           const SqrtThreeScalar got = height(k).height;
           const SqrtThreeScalar want = height_closed_form(k);
           if (got != want) {
             return result(false, want.to_string(), got.to_string() + " at n=" + std::to_string(k));
           }
         }
         return result(true, height_closed_form(v.n).to_string(), height(v.n).height.to_string());
       }},
      {"extreme_points", true,
       [](const VerifyConfig& v) {
         const auto c = check_extreme_point_claim(std::max(2, v.n));
         return result(c.left_matches && c.right_matches,
                       "leftmost " + c.claimed_left.to_string() + ", rightmost " + c.claimed_right.to_string(),
                       "leftmost " + c.observed_left.to_string() + ", rightmost " + c.observed_right.to_string());
       }},
      {"centroid", false,
       [](const VerifyConfig&) {
         const QOmega want(Rational(59, 111), Rational(17, 111));
         const QOmega got = centroid_solve();
         const bool ok = got == want && centroid_residual(got).is_zero();
         return result(ok, want.to_string(), got.to_string());
       }},
      {"volume", false,
       [](const VerifyConfig&) {
         const Rational got = revolution_volume();
         return result(got == Rational(17, 444), "17/444 pi", got.to_string() + " pi");
       }},
      {"dimension", false,
       [](const VerifyConfig& v) {
         const double d = hausdorff_dimension(v.tol);
         const double closed = hausdorff_dimension_closed_form();
         const bool ok = std::abs(d - closed) <= std::max(1e-10, 2 * v.tol) && std::abs(d - 1.5187) <= 5e-4;
         return result(ok, fmt(closed), fmt(d));
       }},
      {"cantor", false,
       [](const VerifyConfig& v) {
         for (int k = 0; k <= v.n; ++k) {
           if (cantor_remainder(k).intervals != middle_thirds(k)) {
             return result(false, "middle-thirds iterate", "differs at n=" + std::to_string(k));
           }
         }
         return result(true, "2^n intervals of length 3^-n",
                       std::to_string(cantor_remainder(v.n).intervals.size()) + " intervals");
       }},
      {"loops", false,
       [](const VerifyConfig& v) {
         std::string counts;
         bool ok = true;
         for (int k = 0; k <= v.n; ++k) {
           const Polyline p = generate_segments(k);
           const std::size_t count = detect_loops(p).size();
           counts += std::to_string(count) + (k < v.n ? "," : "");
           if (k <= 1) ok = ok && count == 0;
           if (k == 2) ok = ok && count == 1;
           auto vs = remove_loops(p).vertices;
           std::sort(vs.begin(), vs.end());
           ok = ok && std::adjacent_find(vs.begin(), vs.end()) == vs.end();
         }
         return result(ok, "0 loops at n<=1, 1 at n=2, loop-free remainder distinct", "loop counts " + counts);
       }},
      {"curve_c_bounds", false,
       [](const VerifyConfig& v) {
         const SqrtThreeScalar lo_step(Rational(1, 2), Rational(1, 3));
         const SqrtThreeScalar c1(Rational(1), Rational(1, 3));
         if (curve_c_generate(1).total_length != c1) {
           return result(false, "c_1 = " + c1.to_string(), curve_c_generate(1).total_length.to_string());
         }
         for (int k = 0; k <= v.n; ++k) {
           const SqrtThreeScalar c = curve_c_generate(k).total_length;
           if (c < pow(lo_step, k) || c > pow(one_plus_inv_sqrt3(), k)) {
             return result(false, "(1/2+1/sqrt3)^n <= c_n <= (1+1/sqrt3)^n", "violated at n=" + std::to_string(k));
           }
         }
         return result(true, "(1/2+1/sqrt3)^n <= c_n <= (1+1/sqrt3)^n",
                       "c_" + std::to_string(v.n) + " = " + curve_c_generate(v.n).total_length.to_string());
       }},
      {"symmetry", false,
       [](const VerifyConfig&) {
         std::vector<double> d;
         for (int k = 3; k <= 5; ++k) d.push_back(curve_c_symmetry_check(k).distance);
         const bool ok = d[0] > d[1] && d[1] > d[2];
         return result(ok, "strictly decreasing for n=3,4,5", fmt(d[0]) + " " + fmt(d[1]) + " " + fmt(d[2]));
       }},
      {"connectivity", false,
       [](const VerifyConfig& v) {
         for (int k = 1; k <= std::min(v.n, 5); ++k) {
           if (!simply_connected_check(k, Construction::kSegments) ||
               !simply_connected_check(k, Construction::kTriangles)) {
             return result(false, "simply connected", "fails at n=" + std::to_string(k));
           }
         }
         return result(true, "simply connected", "holds");
       }},
      {"tiles", false,
       [](const VerifyConfig&) {
         for (TileKind kind : all_tile_kinds()) {
           try {
             const Tile t = build_tile(kind, 2);
             if (t.boundary.vertices.front() != t.boundary.vertices.back()) {
               return result(false, "closed boundaries", to_string(kind) + " open");
             }
           } catch (const Error& e) {
             return result(false, "closed boundaries", to_string(kind) + ": " + e.what());
           }
         }
         return result(true, "all five tiles close at n=2", "closed");
       }},
  };
  return checks;
}

int cmd_verify(const VerifyConfig& v, const Common& c, std::ostream& out, std::ostream& err) {
  check_n(c, v.n);
  if (v.n > 8 && !c.allow_large) throw UsageError("verify runs exact sums over 4^n triangles; use --n <= 8");
  const auto& checks = verify_checks();
  std::set<std::string> known;
  for (const auto& ch : checks) known.insert(ch.name);
  for (const auto& name : v.only) {
    if (!known.count(name)) throw UsageError("unknown check " + name);
  }

  std::vector<CheckResult> results;
  for (const auto& ch : checks) {
    if (!v.only.empty() && std::find(v.only.begin(), v.only.end(), ch.name) == v.only.end()) continue;
    CheckResult r;
    try {
      r = ch.run(v);
    } catch (const Error& e) {
      r = result(false, "no error", std::string("error: ") + e.what());
    }
    r.name = ch.name;
    r.informational = ch.informational;
    results.push_back(std::move(r));
  }
  bool pass = true;
  for (const auto& r : results) pass = pass && (r.pass || r.informational);

  if (v.format == "json") {
    json list = json::array();
    for (const auto& r : results) {
      list.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"informational", r.informational},
                      {"expected", r.expected},
                      {"actual", r.actual}});
    }
    json only = v.only;
    json doc = {{"schema", kVerifySchema},
                {"config",
                 {{"n", v.n},
                  {"tol", v.tol},
                  {"only", only},
                  {"inject_fault", v.inject_fault.empty() ? json(nullptr) : json(v.inject_fault)},
                  {"max_n", c.max_n},
                  {"allow_large", c.allow_large}}},
                {"pass", pass},
                {"checks", list}};
    emit(v.output, out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
  } else {
    emit(v.output, out, [&](std::ostream& os) {
      for (const auto& r : results) {
        const char* tag = r.pass ? "PASS" : (r.informational ? "NOTE" : "FAIL");
        os << tag << "  " << r.name << "  actual: " << r.actual << "  expected: " << r.expected << '\n';
      }
      os << (pass ? "all checks passed" : "some checks failed") << '\n';
    });
  }
  for (const auto& r : results) {
    if (!r.pass && !r.informational) err << "check failed: " << r.name << '\n';
  }
  return pass ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// tessellate
// ---------------------------------------------------------------------------

struct TessellateConfig {
  std::string scheme;
  int n = 2;
  int check_n = 14;
  std::size_t samples = 100000;
  std::optional<double> epsilon;
  std::string k_range = "-2..1";
  std::string window = "3,3";
  std::string output;
  bool k_range_given = false;
  bool window_given = false;
};

std::pair<int, int> parse_k_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw UsageError("--k-range expects a..b");
  try {
    std::size_t used1 = 0, used2 = 0;
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const int lo = std::stoi(a, &used1), hi = std::stoi(b, &used2);
    if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument(s);
    if (lo > hi) throw UsageError("--k-range lower bound exceeds upper bound");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--k-range expects integers a..b, got " + s);
  }
}

std::pair<std::int64_t, std::int64_t> parse_window(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--window expects w,h");
  try {
    std::size_t used1 = 0, used2 = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const long long w = std::stoll(a, &used1), h = std::stoll(b, &used2);
    if (used1 != a.size() || used2 != b.size() || w < 1 || h < 1) throw std::invalid_argument(s);
    return {w, h};
  } catch (const std::logic_error&) {
    throw UsageError("--window expects positive integers w,h, got " + s);
  }
}

int cmd_tessellate(const TessellateConfig& t, const Common& c, std::ostream& out, std::ostream& err) {
  const auto kind = tile_kind_from_string(t.scheme);
  if (!kind) throw UsageError("unknown scheme " + t.scheme);
  if (t.n < 1) throw UsageError("--n must be at least 1");
  if (t.check_n < 1) throw UsageError("--check-n must be at least 1");
  check_n(c, t.n);
  if (t.samples < 1000) throw UsageError("--samples must be at least 1000");
  const bool scale_invariant = *kind == TileKind::kRhomboidal || *kind == TileKind::kDart;
  if (scale_invariant && t.window_given) throw UsageError("--window applies to periodic schemes only");
  if (!scale_invariant && t.k_range_given) throw UsageError("--k-range applies to rhomboidal and dart only");

  const double epsilon = t.epsilon.value_or(std::pow(3.0, -t.check_n) / 10);
  if (epsilon < 0) throw UsageError("--epsilon must be non-negative");
  const unsigned threads = resolve_threads(c);

  json config = {{"scheme", t.scheme}, {"n", t.n},         {"check_n", t.check_n},
                 {"samples", t.samples}, {"epsilon", epsilon}};
  Covering covering;
  if (scale_invariant) {
    const auto [lo, hi] = parse_k_range(t.k_range);
    covering = cover_scale_invariant(*kind, t.check_n, lo, hi);
    config["k_range"] = json::array({lo, hi});
  } else {
    const auto [w, h] = parse_window(t.window);
    covering = cover_periodic(*kind, lattice_window(QOmega(0), Rational(w), Rational(h)), t.check_n);
    config["window"] = json::array({w, h});
  }
  const CoveringCheck check = check_covering(covering, t.samples, epsilon, threads);

  json doc = to_json_value(covering);
  doc["config"] = config;
  doc["check"] = to_json_value(check);
  const std::string text = doc.dump(1) + "\n";
  if (t.output.empty()) {
    out << text;
  } else {
    emit(t.output + ".json", out, [&](std::ostream& os) { os << text; });
    const std::string svg = render_svg(covering_scene(covering, t.n));
    emit(t.output + ".svg", out, [&](std::ostream& os) { os << svg; });
  }

  if (!check.pass) {
    err << "covering check failed for " << t.scheme << ": " << check.multiplicity_one << " of " << check.considered
        << " points covered once (" << fmt(check.fraction_one) << ")\n";
    err << "multiplicity histogram:";
    for (const auto& [m, count] : check.histogram) err << ' ' << m << ':' << count;
    err << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// properties, render
// ---------------------------------------------------------------------------

struct PropertiesConfig {
  int n = 5;
  std::string format = "text";
  std::string output;
};

int cmd_properties(const PropertiesConfig& p, const Common& c, std::ostream& out) {
  check_n(c, p.n);
  if (p.n > 8 && !c.allow_large) throw UsageError("properties sums 4^n triangles; use --n <= 8");
  const PropertyReport r = compute_properties(p.n);
  if (p.format == "json") {
    json doc = to_json_value(r);
    emit(p.output, out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
    return kExitOk;
  }
  emit(p.output, out, [&](std::ostream& os) {
    auto row = [&](const std::string& name, const std::string& exact, double approx) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", approx);
      os << name << std::string(name.size() < 16 ? 16 - name.size() : 1, ' ') << exact << "  ~ " << buf << '\n';
    };
    os << "iteration       " << r.n << '\n';
    row("length", r.length.to_string(), r.length.to_double());
    row("triangle area", r.tri_area.to_string(), r.tri_area.to_double());
    row("curve area", r.curve_area.to_string(), r.curve_area.to_double());
    row("height", r.height.to_string(), r.height.to_double());
    os << "maximizers      ";
    for (std::size_t i = 0; i < r.height_argmax_points.size(); ++i) {
      os << (i ? ", " : "") << r.height_argmax_points[i].to_string();
    }
    os << '\n';
    {
      const auto z = r.centroid.to_complex();
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g, %.12g", z.real(), z.imag());
      os << "centroid        " << r.centroid.to_string() << "  ~ (" << buf << ")\n";
    }
    row("volume / pi", r.volume_over_pi.to_string(), r.volume_over_pi.to_double());
    row("dimension", "root of 3^(1-d) + 3^(-d/2) = 1", r.hausdorff_dim);
  });
  return kExitOk;
}

struct RenderConfig {
  std::string preset;
  int n = -1;
  std::string format = "svg";
  std::string output;
};

int cmd_render(const RenderConfig& r, const Common& c, std::ostream& out) {
  if (r.n >= 0) check_n(c, r.n);
  if (r.n > 8 && !c.allow_large) throw UsageError("render output grows as 4^n; use --n <= 8");
  const Scene scene = preset(r.preset, r.n);
  const std::string text = r.format == "json" ? scene_json(scene).dump(1) + "\n" : render_svg(scene);
  emit(r.output, out, [&](std::ostream& os) { os << text; });
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kochawave curve toolkit", "kochawave"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (default: KOCHAWAVE_THREADS or all cores)");
  app.add_option("--max-n", common.max_n, "Largest accepted iteration")->capture_default_str();
  app.add_flag("--allow-large", common.allow_large, "Accept iterations above --max-n");

  GenerateConfig gen;
  auto* generate = app.add_subcommand("generate", "Write the vertices of an iterate");
  generate->add_option("--n", gen.n, "Iteration")->capture_default_str();
  generate->add_option("--construction", gen.construction, "Construction")
      ->check(CLI::IsMember({"segments", "triangles", "lsystem", "numeric"}))
      ->capture_default_str();
  generate->add_option("--format", gen.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
  generate->add_option("-o,--output", gen.output, "Output file (default: stdout)");

  VerifyConfig ver;
  std::vector<std::string> check_names;
  for (const auto& ch : verify_checks()) check_names.push_back(ch.name);
  auto* verify = app.add_subcommand("verify", "Run the property checks");
  verify->add_option("--n", ver.n, "Largest iteration checked")->capture_default_str();
  verify->add_option("--only", ver.only, "Run only the named check (repeatable)")->check(CLI::IsMember(check_names));
  verify->add_option("--tol", ver.tol, "Numeric tolerance")->capture_default_str();
  verify->add_option("--inject-fault", ver.inject_fault, "Perturb a rule to test the harness")
      ->check(CLI::IsMember({"turtle-rule"}));
  verify->add_option("--format", ver.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify->add_option("-o,--output", ver.output, "Report file (default: stdout)");

  TessellateConfig tes;
  std::vector<std::string> schemes;
  for (TileKind k : all_tile_kinds()) schemes.push_back(to_string(k));
  double epsilon = 0;
  auto* tessellate = app.add_subcommand("tessellate", "Cover a window with tiles and check the covering");
  tessellate->add_option("--scheme", tes.scheme, "Tiling scheme")->required()->check(CLI::IsMember(schemes));
  tessellate->add_option("--n", tes.n, "Iteration drawn in the SVG")->capture_default_str();
  tessellate->add_option("--check-n", tes.check_n, "Iteration used by the checker")->capture_default_str();
  tessellate->add_option("--samples", tes.samples, "Checker sample count")->capture_default_str();
  auto* eps_opt = tessellate->add_option("--epsilon", epsilon, "Boundary exclusion distance (default 3^-check_n/10)");
  auto* k_opt = tessellate->add_option("--k-range", tes.k_range, "Scale exponents a..b")->capture_default_str();
  auto* w_opt = tessellate->add_option("--window", tes.window, "Periodic window w,h")->capture_default_str();
  tessellate->add_option("-o,--output", tes.output, "Output prefix for .json and .svg (default: JSON to stdout)");

  PropertiesConfig prop;
  auto* properties = app.add_subcommand("properties", "Print exact properties of an iterate");
  properties->add_option("--n", prop.n, "Iteration")->capture_default_str();
  properties->add_option("--format", prop.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  properties->add_option("-o,--output", prop.output, "Output file (default: stdout)");

  RenderConfig ren;
  auto* render = app.add_subcommand("render", "Draw a preset figure");
  render->add_option("--preset", ren.preset, "Preset name")->required()->check(CLI::IsMember(preset_names()));
  render->add_option("--n", ren.n, "Last iteration shown (default: preset's own)");
  render->add_option("--format", ren.format, "Output format")
      ->check(CLI::IsMember({"svg", "json"}))
      ->capture_default_str();
  render->add_option("-o,--output", ren.output, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, common, out);
    if (*verify) return cmd_verify(ver, common, out, err);
    if (*tessellate) {
      if (eps_opt->count() > 0) tes.epsilon = epsilon;
      tes.k_range_given = k_opt->count() > 0;
      tes.window_given = w_opt->count() > 0;
      return cmd_tessellate(tes, common, out, err);
    }
    if (*properties) return cmd_properties(prop, common, out);
    if (*render) return cmd_render(ren, common, out);
  } catch (const UsageError& e) {
    err << "kochawave: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "kochawave: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "kochawave: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "kochawave: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace kochawave
