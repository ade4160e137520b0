#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "latsep/error.hpp"
#include "latsep/instance.hpp"
#include "latsep/windows.hpp"
#include "svg.hpp"

using namespace latsep;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the tool from the instance directory; stderr is discarded.
Run run(const std::string& args) {
  const std::string cmd =
      std::string("cd '") + LATSEP_INSTANCES_DIR + "' && '" + LATSEP_CLI_PATH + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("condition checks exit 0 when they hold and 1 when they fail") {
    CHECK(run("check par --k 2 ex4.4.json").code == 1);
    CHECK(run("check ray ex4.4.json").code == 0);
    CHECK(run("check hole-free ex4.8.json").code == 0);
    CHECK(run("check integrally-convex ex4.4.json").code == 0);
    CHECK(run("check k-convex --k 1 --set A ex4.5.json").code == 0);
    CHECK(run("check k-convex --k 2 --set A ex4.5.json").code == 1);
  }

  TEST_CASE("separate reports flags and blocking flats") {
    const Run blocked = run("separate ex4.8.json");
    CHECK(blocked.code == 1);
    CHECK(blocked.out.find("blocking flat") != std::string::npos);
    const Run ok = run("separate separable.json");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("nested subspaces") != std::string::npos);
  }

  TEST_CASE("flags produced by separate verify through verify-flag") {
    const Run found = run("--json separate separable.json");
    REQUIRE(found.code == 0);
    const auto flag = temp_file("latsep-cli-flag.json", found.out);
    CHECK(run("verify-flag separable.json --flag '" + flag.string() + "'").code == 0);
    CHECK(run("verify-flag ex4.4.json --flag '" + flag.string() + "'").code == 1);
    CHECK(run("verify-flag window-lex.json --flag lex-flag.json").code == 0);
    std::filesystem::remove(flag);
  }

  TEST_CASE("hole table of the 13-7-4 vertices") {
    const Run r = run("holes simplex-13-7-4.json");
    CHECK(r.code == 0);
    CHECK(r.out.find("(4,3,1)\t2\n") != std::string::npos);
    CHECK(r.out.find("(6,2,1)\t3\n") != std::string::npos);
  }

  TEST_CASE("hull and lemma49 subcommands") {
    const Run hull = run("--json hull --k 1 simplex-5-4-3.json");
    CHECK(hull.code == 0);
    const Run t = run("lemma49 triangle.json");
    CHECK(t.code == 0);
    CHECK(t.out.find("(0,0) + (5,1) + (1,4) =") != std::string::npos);
  }

  TEST_CASE("catalog and explorer subcommands") {
    const Run cat = run("catalog run --id ex4.4");
    CHECK(cat.code == 0);
    CHECK(cat.out.find("claims passed") != std::string::npos);
    CHECK(run("catalog run --id no-such-entry").code == 2);
    const Run eq = run("explore equivalence --grid 3x3 --family integrally-convex --left P2 --right H");
    CHECK(eq.code == 0);
    CHECK(eq.out.find("\"violations\":0") != std::string::npos);
    CHECK(run("explore equivalence --grid 3x3 --family any --left P2 --right H").code == 1);
    CHECK(run("explore conjecture --budget 0").code == 0);
  }

  TEST_CASE("usage and input errors exit 2, unsupported dimensions exit 3") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("check par --k notanumber ex4.4.json").code == 2);
    CHECK(run("check ray no-such-file.json").code == 2);
    CHECK(run("check ray overlap-error.json").code == 2);
    const auto garbage = temp_file("latsep-cli-garbage.json", "{\"dim\": 2, \"A\": [[0, 0]");
    CHECK(run("check ray '" + garbage.string() + "'").code == 2);
    const auto four = temp_file("latsep-cli-4d.json", R"({"dim": 4, "S": [[0,0,0,0],[1,0,0,0]]})");
    CHECK(run("check integrally-convex '" + four.string() + "'").code == 3);
    CHECK(run("plot unit-cube.json -o -").code == 3);
    std::filesystem::remove(garbage);
    std::filesystem::remove(four);
  }

  TEST_CASE("output is byte-for-byte deterministic") {
    CHECK(run("--json separate ex4.5.json").out == run("--json separate ex4.5.json").out);
    CHECK(run("explore conjecture --budget 20 --seed 3").out == run("explore conjecture --budget 20 --seed 3").out);
  }

  TEST_CASE("plot draws one circle per point") {
    const Run r = run("plot ex4.4.json -o -");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("<?xml", 0) == 0);
    CHECK(r.out.find("<svg") != std::string::npos);
    CHECK(r.out.find("</svg>") != std::string::npos);
    CHECK(count(r.out, "<circle") == 4);
    CHECK(count(r.out, "fill=\"black\"") == 2);
  }
}

TEST_SUITE("svg") {
  TEST_CASE("flag overlays and dimension guard") {
    const Partition p = window_partition(WindowRule::LexHalfPlane, 3);
    const std::string svg = tools::render_svg(p.all(), p, lex_half_plane_flag(), {});
    CHECK(count(svg, "<circle") == 49);
    CHECK(count(svg, "class=\"level1\"") == 1);
    CHECK(count(svg, "class=\"level2\"") == 1);
    CHECK_THROWS_AS(tools::render_svg(PointSet(3, {{0, 0, 0}}), std::nullopt, std::nullopt, {}), UnsupportedDimension);
  }
}
