// Copyright 2026 The knotchar Authors.
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "knotchar/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "knotchar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = knotchar::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("strata", "[cli]") {
  const auto r = run({"strata", "3", "5"});
  REQUIRE(r.code == 0);
  const auto j = r.j();
  CHECK(j["command"] == "strata");
  CHECK(j["knot"] == json{{"n", 3}, {"m", 5}});
  CHECK(j["version"] == knotchar::cli::kVersion);
  CHECK(j["payload"]["grouped"]["Irr3a"] == 2);
  CHECK(j["payload"]["grouped"]["Irr3b"] == 16);
  CHECK(j["payload"]["ok"] == true);
}

TEST_CASE("invalid knots exit 2", "[cli]") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"strata", "4", "6"}, {"euler", "1", "5"}, {"strata", "x", "5"}, {}}) {
    const auto r = run(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    const auto e = json::parse(r.err);
    CHECK(e["error"].contains("code"));
  }
  CHECK(json::parse(run({"strata", "4", "6"}).err)["error"]["code"] == "InvalidKnot");
}

TEST_CASE("euler", "[cli]") {
  const auto r = run({"euler", "3", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.j()["payload"]["total"] == 27);
  CHECK(r.j()["payload"]["formula"] == 27);
}

TEST_CASE("homology", "[cli]") {
  const auto r = run({"homology", "5"});
  REQUIRE(r.code == 0);
  const auto p = r.j()["payload"];
  CHECK(p["betti"] == json::array({1, 0, 6}));
  CHECK(p["torsion"] == json::array({json::array(), json::array(), json::array()}));
  CHECK(p["f2_rank"] == 2);
  const auto bad = run({"homology", "4"});
  CHECK(bad.code == 3);
  CHECK(json::parse(bad.err)["error"]["code"] == "EvenM");
}

TEST_CASE("circle with svg", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "knotchar_test_a.svg", b = dir / "knotchar_test_b.svg";
  const auto r = run({"circle", "3", "5", "1", "--svg", a.string()});
  REQUIRE(r.code == 0);
  const auto p = r.j()["payload"];
  CHECK(p["rational_points"] == 45);
  CHECK(p["boundary_hits"].size() == 6);
  CHECK(p["census"]["Irr3a"] == 9);
  CHECK(p["census"]["Irr3b"] == 24);

  const auto svg = slurp(a);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count_of(svg, "class=\"boundary-hit\"") == 6);
  const auto marks = count_of(svg, "class=\"Irr3a\"") + count_of(svg, "class=\"Irr3b\"") + count_of(svg, "class=\"Reducible\"");
  CHECK(marks == 45);
  CHECK(count_of(svg, "class=\"Irr3a\"") == 9);

  REQUIRE(run({"circle", "3", "5", "1", "--svg", b.string()}).code == 0);
  CHECK(slurp(b) == svg);
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  CHECK(run({"circle", "3", "5", "5"}).code == 3);  // degenerate
}

TEST_CASE("incidence", "[cli]") {
  const auto r = run({"incidence", "3", "5"});
  // the 3b branch count is reported as a failure
  CHECK(r.code == 3);
  const auto p = r.j()["payload"];
  CHECK(p["ok"] == false);
  CHECK(p["euler_from_graph"] == 27);
  bool saw = false;
  for (const auto& c : p["checks"])
    if (c["name"] == "irr3b_points_on_3_circles") {
      saw = true;
      CHECK(c["pass"] == false);
    } else {
      CHECK(c["pass"] == true);
    }
  CHECK(saw);

  const auto dot = std::filesystem::temp_directory_path() / "knotchar_test.dot";
  run({"incidence", "2", "5", "--dot", dot.string()});
  CHECK(slurp(dot).rfind("graph incidence {", 0) == 0);
  std::filesystem::remove(dot);
  CHECK(run({"incidence", "2", "5", "--full"}).j()["payload"].contains("graph"));
}

TEST_CASE("verify", "[cli]") {
  const auto empty = run({"verify", "--max", "0"});
  CHECK(empty.code == 0);
  CHECK(empty.j()["payload"]["pairs"] == 0);
  CHECK(empty.j()["payload"]["all_pass"] == true);

  const auto r = run({"verify", "--max", "12"});
  CHECK(r.code == 3);
  const auto p = r.j()["payload"];
  CHECK(p["pairs"] == 34);
  std::vector<std::string> failing;
  for (const auto& c : p["checks"]) {
    CHECK(c["checked"].get<int>() > 0);
    if (!c["pass"].get<bool>()) {
      failing.push_back(c["name"]);
      CHECK(c.contains("counterexample"));
    }
  }
  CHECK(failing == std::vector<std::string>{"incidence.irr3b_points_on_3_circles"});

  CHECK(run({"verify", "--max", "101"}).code == 2);
  CHECK(run({"verify", "--max", "-1"}).code == 2);
}

TEST_CASE("output is deterministic", "[cli]") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"strata", "4", "7"}, {"incidence", "3", "4", "--full"}, {"euler", "5", "8"}})
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("pretty output", "[cli]") {
  const auto r = run({"euler", "2", "5", "--pretty"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("payload.total  7\n") != std::string::npos);
  CHECK(run({"--pretty", "euler", "2", "5"}).out == r.out);
}

TEST_CASE("KNOTCHAR_MAX_MN", "[cli]") {
  ::setenv("KNOTCHAR_MAX_MN", "10", 1);
  const auto r = run({"strata", "3", "5"});
  CHECK(r.code == 3);
  CHECK(json::parse(r.err)["error"]["code"] == "SweepTooLarge");
  CHECK(run({"euler", "3", "5"}).code == 0);  // closed forms are not capped
  ::setenv("KNOTCHAR_MAX_MN", "nope", 1);
  CHECK(run({"euler", "3", "5"}).code == 3);
  ::unsetenv("KNOTCHAR_MAX_MN");
  CHECK(run({"strata", "3", "5"}).code == 0);
}

#ifdef KNOTCHAR_CLI_PATH
TEST_CASE("binary exit codes", "[cli]") {
  const std::string bin = KNOTCHAR_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("euler 3 5") == 0);
  CHECK(status("strata 4 6") == 2);
  CHECK(status("verify --max 0") == 0);
  CHECK(status("--version") == 0);
}
#endif
