#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fatflow/json_io.hpp"

using nlohmann::json;

namespace {

std::string bin() {
  const char* b = std::getenv("FATFLOW_BIN");
  REQUIRE(b != nullptr);
  return b;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = bin() + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p))
    r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WEXITSTATUS(status);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("solve a rectangle end to end") {
  auto gen = run("gen rectangle --rows 2 --cols 3");
  REQUIRE(gen.code == 0);
  write_file("cli_rect.json", gen.out);

  auto solved = run("solve cli_rect.json");
  REQUIRE(solved.code == 0);
  json out = json::parse(solved.out);
  CHECK(std::abs(out["result"]["modulus"].get<double>() - 2.0 / 3) < 1e-9);
  CHECK(out["layout"]["valid"].get<bool>());
  std::remove("cli_rect.json");
}

TEST_CASE("malformed input exits 2") {
  write_file("cli_bad.json", "{not json");
  CHECK(run("solve cli_bad.json").code == 2);
  write_file("cli_bad.json", "{\"tiles\": [[0,0],[2,2]], \"corners\": [[0,1],[1,1],[1,0],[0,0]]}");
  CHECK(run("solve cli_bad.json").code == 2);
  std::remove("cli_bad.json");
}

TEST_CASE("verify-dumbbell passes on the classic shape") {
  auto gen = run("gen classic-dumbbell");
  REQUIRE(gen.code == 0);
  write_file("cli_dumb.json", gen.out);
  auto v = run("verify-dumbbell cli_dumb.json");
  CHECK(v.code == 0);
  json rep = json::parse(v.out);
  CHECK(rep["pass"].get<bool>());
  CHECK(rep["max_deviation"].get<double>() <= 1e-7 * rep["height"].get<double>());

  // bar weights constant across the whole bar (Example 2.2 behaviour)
  auto v1 = run("verify-dumbbell cli_dumb.json --level 1");
  CHECK(v1.code == 0);

  // an adversarial weight file must fail: bump one middle bar tile
  json bad = json::array();
  json dumb = json::parse(gen.out);
  for (int c = 0; c < 8; ++c)
    bad.push_back({{"tile", {c, 0}}, {"w", c == 4 ? 1.5 : 1.0}});
  for (const char* side : {"left_ball", "right_ball"})
    for (const auto& t : dumb[side])
      bad.push_back({{"tile", t}, {"w", 0.5}});
  write_file("cli_rho.json", bad.dump());
  auto vbad = run("verify-dumbbell cli_dumb.json --rho cli_rho.json");
  CHECK(vbad.code == 1);
  std::remove("cli_dumb.json");
  std::remove("cli_rho.json");
}

TEST_CASE("subdivide quadruples tiles") {
  auto gen = run("gen ell");
  write_file("cli_ell.json", gen.out);
  auto sub = run("subdivide cli_ell.json --level 3");
  REQUIRE(sub.code == 0);
  json out = json::parse(sub.out);
  CHECK(out["tiles"].size() == 192);  // 3 * 4^3
  auto id = run("subdivide cli_ell.json --level 0");
  CHECK(json::parse(id.out)["tiles"].size() == 3);
  std::remove("cli_ell.json");
}

TEST_CASE("phi subcommands") {
  auto a = run("phi apply '[\"1\",\"0\",\"0\"]'");
  REQUIRE(a.code == 0);
  json y = json::parse(a.out);
  CHECK(y["y"] == json::array({"1/2", "1/2", "0"}));

  auto m = run("phi mu '[\"0\",\"0\",\"1\"]'");
  CHECK(json::parse(m.out)["mu"].get<int>() == 2);

  auto p = run("phi preimage '[\"1\",\"0\"]'");
  CHECK(json::parse(p.out)["not_in_image"].get<bool>());

  auto it = run("phi iterate '[\"1\",\"0\",\"0\"]' --m 2");
  CHECK(json::parse(it.out)["y"] == json::array({"1/3", "1/3", "1/3"}));

  auto ex = run("phi extend '[\"1\",\"0\",\"0\"]' --m 3");
  json cols = json::parse(ex.out)["columns"];
  CHECK(cols[2] == json::array({"1/3", "1/3", "1/3"}));
}

TEST_CASE("figures gallery") {
  REQUIRE(system("mkdir -p cli_gallery") == 0);
  auto r = run("figures --out cli_gallery --levels 1");
  CHECK(r.code == 0);
  std::ifstream svg("cli_gallery/ell_level1_squares.svg");
  CHECK(svg.good());
  std::ifstream tiling("cli_gallery/dumbbell_level0_tiling.svg");
  CHECK(tiling.good());
  std::ifstream res("cli_gallery/tray_level1_result.json");
  CHECK(res.good());
  CHECK(system("rm -rf cli_gallery") == 0);
}

TEST_CASE("identical runs produce identical bytes") {
  auto g1 = run("gen random-dumbbell --bar-height 2 --bar-width 13 --max-ball 9 --seed 7");
  auto g2 = run("gen random-dumbbell --bar-height 2 --bar-width 13 --max-ball 9 --seed 7");
  REQUIRE(g1.code == 0);
  CHECK(g1.out == g2.out);
  write_file("cli_det.json", g1.out);
  auto s1 = run("solve cli_det.json --exact");
  auto s2 = run("solve cli_det.json --exact");
  REQUIRE(s1.code == 0);
  CHECK(s1.out == s2.out);
  std::remove("cli_det.json");
}
