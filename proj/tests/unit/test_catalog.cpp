#include <set>

#include "doctest.h"
#include "latsep/catalog.hpp"
#include "latsep/error.hpp"
#include "latsep/instance.hpp"
#include "oracles.hpp"

using namespace latsep;

namespace {

Json one_entry(const Json& claims) {
  return Json{{"entries",
               Json::array({Json{{"id", "toy"},
                                 {"title", "toy"},
                                 {"instance", Json::parse(R"({"dim":1,"A":[[0]],"B":[[1]]})")},
                                 {"claims", claims}}})}};
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("the built-in catalog passes in full") {
    const CatalogReport report = run_catalog();
    for (const auto& r : report.results) {
      INFO(r.entry << " " << r.check << " " << r.detail.dump());
      CHECK(r.passed);
    }
    CHECK(report.all_passed());
    CHECK(report.failures() == 0);
    const std::set<std::string> ids(report.entries.begin(), report.entries.end());
    for (const char* id : {"ex2.4-window", "ex2.5-window", "ex4.4", "ex4.5", "ex4.6-holes", "ex4.7", "ex4.8"}) {
      CHECK(ids.count(id) == 1);
    }
  }

  TEST_CASE("patterns select entries and unknown ids are errors") {
    CHECK(id_matches("ex4.*", "ex4.5"));
    CHECK(id_matches("*", "anything"));
    CHECK(id_matches("fig2-?", "fig2-?"));
    CHECK_FALSE(id_matches("ex4.*", "ex2.4-window"));
    CHECK_FALSE(id_matches("ex4.4", "ex4.45"));
    const CatalogReport r = run_catalog(std::string("ex4.4"));
    CHECK(r.entries == std::vector<std::string>{"ex4.4"});
    CHECK_THROWS_AS(run_catalog(std::string("no-such-entry")), UnknownEntry);
  }

  TEST_CASE("malformed catalogs are rejected") {
    CHECK_THROWS_AS(load_catalog(one_entry(Json::array({Json{{"check", "ray"}, {"expect", true}}}))), ParseError);
    CHECK_THROWS_AS(load_catalog(one_entry(Json::array({Json{{"expect", true}, {"because", "x"}}}))), ParseError);
    CHECK_THROWS_AS(load_catalog(Json::object()), ParseError);
  }

  TEST_CASE("wrong expectations and broken claims fail without throwing") {
    const auto entries = load_catalog(one_entry(Json::array({
        Json{{"check", "ray"}, {"expect", true}, {"because", "two points"}},
        Json{{"check", "separation"}, {"expect", false}, {"because", "deliberately wrong"}},
        Json{{"check", "no-such-check"}, {"expect", true}, {"because", "unknown kind"}},
    })));
    const CatalogReport r = run_catalog(entries);
    REQUIRE(r.results.size() == 3);
    CHECK(r.results[0].passed);
    CHECK_FALSE(r.results[1].passed);
    CHECK(r.results[1].actual == Json(true));
    CHECK_FALSE(r.results[2].passed);
    CHECK(r.failures() == 2);
    const Json j = to_json(r);
    CHECK(j.contains("results"));
  }

  TEST_CASE("derived planar fixtures re-verify against independent oracles") {
    for (const auto& entry : load_catalog(builtin_catalog_json())) {
      if (!entry.derived) {
        continue;
      }
      const Instance inst = instance_from_json(entry.instance);
      REQUIRE(inst.partition);
      const Partition& p = *inst.partition;
      INFO(entry.id);
      CHECK(p.dim() == 2);
      CHECK(oracle::parallelogram_holds(p, 2));
      CHECK_FALSE(oracle::flag_exists_2d(p));
      CHECK(oracle::hulls_meet_2d(p.a().points(), p.b().points()));
    }
  }
}
