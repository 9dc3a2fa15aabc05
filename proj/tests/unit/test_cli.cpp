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

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kochawave/cli.hpp"
#include "kochawave/construct.hpp"

using namespace kochawave;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("numeric csv has one row per vertex") {
  const Run r = run({"generate", "--construction", "numeric", "--n", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 18);
  CHECK(rows[0] == "k,a,b");
  std::ostringstream expect;
  std::vector<EisensteinInt> zs;
  for (const auto& z : z_stream(17)) zs.push_back(z);
  write_vertices_csv(expect, zs);
  CHECK(r.out == expect.str());
}

TEST_CASE("iteration zero is the base segment") {
  const Run r = run({"generate", "--n", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "k,a,b\n0,0,0\n1,1,0\n");
}

TEST_CASE("svg does not depend on the construction") {
  const Run a = run({"generate", "--construction", "lsystem", "--n", "3", "--format", "svg"});
  const Run b = run({"generate", "--construction", "segments", "--n", "3", "--format", "svg"});
  const Run c = run({"generate", "--construction", "numeric", "--n", "3", "--format", "svg"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("generate json and triangles") {
  const Run j = run({"generate", "--n", "1", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["schema"] == kVerticesSchema);
  CHECK(doc["vertices"].size() == 5);
  CHECK(doc["config"]["construction"] == "segments");
  const Run t = run({"generate", "--construction", "triangles", "--n", "2"});
  CHECK(lines(t.out).size() == 17);
  CHECK(lines(t.out)[0] == "k,pa,pb,ua,ub");
}

TEST_CASE("iteration cap") {
  CHECK(run({"generate", "--n", "13"}).code == kExitUsage);
  CHECK(run({"--max-n", "1", "generate", "--n", "2"}).code == kExitUsage);
  CHECK(run({"--max-n", "1", "--allow-large", "generate", "--n", "2"}).code == 0);
  CHECK(run({"generate", "--n", "-1"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"generate", "--construction", "spiral"}).code == kExitUsage);
  CHECK(run({"tessellate", "--scheme", "penrose"}).code == kExitUsage);
  CHECK(run({"tessellate"}).code == kExitUsage);
  CHECK(run({"tessellate", "--scheme", "dart", "--k-range", "1..x"}).code == kExitUsage);
  CHECK(run({"tessellate", "--scheme", "triangular", "--k-range=-1..1"}).code == kExitUsage);
  CHECK(run({"generate", "-o", "/nonexistent/dir/out.csv"}).code == kExitUsage);
  CHECK(run({"verify", "--only", "nonsense"}).code == kExitUsage);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify passes by default") {
  const Run r = run({"verify", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == kVerifySchema);
  CHECK(doc["pass"] == true);
  CHECK(doc["config"]["n"] == 5);
  CHECK(doc["config"]["tol"] == 1e-12);
  CHECK(doc["checks"].size() == 17);
  for (const auto& c : doc["checks"]) {
    CAPTURE(c.dump());
    CHECK((c["pass"] == true || c["informational"] == true));
  }
}

TEST_CASE("injected fault names the failing check") {
  const Run r = run({"verify", "--inject-fault", "turtle-rule"});
  CHECK(r.code == kExitFailure);
  CHECK(r.err.find("construction_equivalence") != std::string::npos);
  CHECK(r.out.find("FAIL  construction_equivalence") != std::string::npos);
}

TEST_CASE("dimension only") {
  const Run r = run({"verify", "--only", "dimension", "--tol", "1e-12", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["checks"].size() == 1);
  CHECK(std::stod(doc["checks"][0]["actual"].get<std::string>()) == doctest::Approx(1.5187).epsilon(5e-4));
}

TEST_CASE("tessellate embeds the check") {
  const Run r = run({"--threads", "4", "tessellate", "--scheme", "triangular", "--n", "2", "--check-n", "10",
                     "--samples", "20000"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == "kochawave.covering/1");
  CHECK(doc["check"]["pass"] == true);
  CHECK(doc["config"]["window"] == nlohmann::json::array({3, 3}));
  CHECK(doc["config"]["epsilon"].get<double>() == doctest::Approx(std::pow(3.0, -10) / 10));

  const Run d = run({"tessellate", "--scheme", "dart", "--k-range=-2..1", "--check-n", "14", "--samples", "20000"});
  REQUIRE(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)["k_range"] == nlohmann::json::array({-2, 1}));
}

TEST_CASE("failed covering exits with a histogram") {
  const Run r = run({"tessellate", "--scheme", "biface_antisym", "--check-n", "2", "--samples", "5000"});
  CHECK(r.code == kExitFailure);
  CHECK(r.err.find("histogram") != std::string::npos);
}

TEST_CASE("outputs are deterministic") {
  const std::vector<std::string> args = {"tessellate", "--scheme", "rhomboidal", "--check-n", "8", "--samples", "5000"};
  CHECK(run(args).out == run(args).out);
  CHECK(run({"render", "--preset", "fig14"}).out == run({"render", "--preset", "fig14"}).out);
  CHECK(run({"properties", "--format", "json"}).out == run({"properties", "--format", "json"}).out);
}

TEST_CASE("render and properties") {
  const Run r = run({"render", "--preset", "fig13", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["schema"] == "kochawave.scene/1");
  CHECK(run({"render", "--preset", "fig2"}).code == kExitUsage);
  const Run p = run({"properties", "--n", "3"});
  CHECK(p.code == 0);
  CHECK(p.out.find("17/444") != std::string::npos);
}
