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

#include "kochawave/report.hpp"

#include <limits>

#include "kochawave/errors.hpp"

namespace kochawave {

using nlohmann::json;

namespace {

void expect_schema(const json& j, const char* schema) {
  if (!j.is_object() || j.value("schema", "") != schema) {
    throw PreconditionError(std::string("expected a ") + schema + " document");
  }
}

json point(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json to_json_value(Int128 x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(x);
  }
  return to_string(x);
}

Int128 int128_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (!j.is_string()) throw PreconditionError("expected an integer");
  const std::string s = j.get<std::string>();
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
  if (i == s.size()) throw PreconditionError("empty integer string");
  Int128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw PreconditionError("bad integer string: " + s);
    v = checked::add(checked::mul(v, Int128{10}), Int128{s[i] - '0'});
  }
  return negative ? -v : v;
}

json to_json_value(const Rational& r) { return {{"num", to_json_value(r.num())}, {"den", to_json_value(r.den())}}; }

Rational rational_from_json(const json& j) {
  if (!j.is_object()) throw PreconditionError("expected {num, den}");
  return Rational(int128_from_json(j.at("num")), int128_from_json(j.at("den")));
}

json to_json_value(const SqrtThreeScalar& s) { return {{"p", to_json_value(s.p)}, {"q", to_json_value(s.q)}}; }

SqrtThreeScalar sqrt3_scalar_from_json(const json& j) {
  return SqrtThreeScalar(rational_from_json(j.at("p")), rational_from_json(j.at("q")));
}

json to_json_value(const QOmega& z) { return {{"a", to_json_value(z.a)}, {"b", to_json_value(z.b)}}; }

QOmega qomega_from_json(const json& j) { return QOmega(rational_from_json(j.at("a")), rational_from_json(j.at("b"))); }

json to_json_value(const PropertyReport& r) {
  json points = json::array();
  for (const auto& z : r.height_argmax_points) points.push_back(to_json_value(z));
  return {
      {"schema", kPropertiesSchema},
      {"n", r.n},
      {"length", to_json_value(r.length)},
      {"tri_area", to_json_value(r.tri_area)},
      {"curve_area", to_json_value(r.curve_area)},
      {"height", to_json_value(r.height)},
      {"height_argmax_points", points},
      {"centroid", to_json_value(r.centroid)},
      {"volume_over_pi", to_json_value(r.volume_over_pi)},
      {"hausdorff_dim", r.hausdorff_dim},
  };
}

PropertyReport property_report_from_json(const json& j) {
  expect_schema(j, kPropertiesSchema);
  PropertyReport r;
  r.n = j.at("n").get<int>();
  r.length = sqrt3_scalar_from_json(j.at("length"));
  r.tri_area = sqrt3_scalar_from_json(j.at("tri_area"));
  r.curve_area = sqrt3_scalar_from_json(j.at("curve_area"));
  r.height = sqrt3_scalar_from_json(j.at("height"));
  for (const auto& z : j.at("height_argmax_points")) r.height_argmax_points.push_back(qomega_from_json(z));
  r.centroid = qomega_from_json(j.at("centroid"));
  r.volume_over_pi = rational_from_json(j.at("volume_over_pi"));
  r.hausdorff_dim = j.at("hausdorff_dim").get<double>();
  return r;
}

json to_json_value(const Placement& p) {
  return {{"rot", p.rot}, {"scale_exp", p.scale_exp}, {"translation", to_json_value(p.translation)},
          {"mirrored", p.mirrored}};
}

Placement placement_from_json(const json& j) {
  return {j.at("rot").get<int>(), j.at("scale_exp").get<int>(), qomega_from_json(j.at("translation")),
          j.at("mirrored").get<bool>()};
}

json to_json_value(const Window& w) {
  return {{"origin", to_json_value(w.origin)}, {"e1", to_json_value(w.e1)}, {"e2", to_json_value(w.e2)}};
}

Window window_from_json(const json& j) {
  return {qomega_from_json(j.at("origin")), qomega_from_json(j.at("e1")), qomega_from_json(j.at("e2"))};
}

json to_json_value(const Covering& c) {
  json placements = json::array();
  for (const auto& p : c.placements) placements.push_back(to_json_value(p));
  json unresolved = json::array();
  for (const auto& p : c.unresolved) unresolved.push_back(to_json_value(p));
  json out = {
      {"schema", kCoveringSchema},
      {"scheme", to_string(c.scheme)},
      {"n", c.n},
      {"window", to_json_value(c.window)},
      {"placements", placements},
      {"unresolved_kind", to_string(c.unresolved_kind)},
      {"unresolved", unresolved},
  };
  if (c.k_range) out["k_range"] = json::array({c.k_range->first, c.k_range->second});
  return out;
}

Covering covering_from_json(const json& j) {
  expect_schema(j, kCoveringSchema);
  auto kind = [](const json& v) {
    auto k = tile_kind_from_string(v.get<std::string>());
    if (!k) throw PreconditionError("unknown tile kind " + v.get<std::string>());
    return *k;
  };
  Covering c;
  c.scheme = kind(j.at("scheme"));
  c.n = j.at("n").get<int>();
  c.window = window_from_json(j.at("window"));
  for (const auto& p : j.at("placements")) c.placements.push_back(placement_from_json(p));
  c.unresolved_kind = kind(j.at("unresolved_kind"));
  for (const auto& p : j.at("unresolved")) c.unresolved.push_back(placement_from_json(p));
  if (j.contains("k_range")) c.k_range = std::make_pair(j["k_range"][0].get<int>(), j["k_range"][1].get<int>());
  return c;
}

json to_json_value(const CoveringCheck& r) {
  json hist = json::object();
  for (const auto& [m, count] : r.histogram) hist[std::to_string(m)] = count;
  json worst = json::array();
  for (const auto& o : r.worst) worst.push_back({{"point", point(o.point)}, {"multiplicity", o.multiplicity}});
  return {
      {"pass", r.pass},
      {"samples", r.samples},
      {"epsilon", r.epsilon},
      {"near_boundary", r.near_boundary},
      {"considered", r.considered},
      {"multiplicity_one", r.multiplicity_one},
      {"fraction_one", r.fraction_one},
      {"unresolved", r.unresolved},
      {"histogram", hist},
      {"worst", worst},
  };
}

}  // namespace kochawave
