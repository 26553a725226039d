#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fluidcat/delta.hpp"
#include "testutil.hpp"

using namespace fluidcat;

TEST_CASE("level-0 points are bare atoms") {
  InfoSpace s = testutil::l5();
  ThickPoint tp = point_at_level0(s, 0);
  CHECK(tp.core == 0);
  CHECK(tp.level == 0);
  CHECK(tp.members == AtomSet{0});
  CHECK(tp.degrees == std::vector<int>{0});
  CHECK_THROWS_AS((void)point_at_level0(s, 9), Error);
}

TEST_CASE("the initial ball carries degree zero everywhere") {
  InfoSpace s = testutil::l5();
  ThickPoint tp = initial_ball(s, 1.5, 1);
  CHECK(tp.level == 1);
  CHECK(tp.members == testutil::ids(s, {"a", "b", "c"}));
  CHECK(tp.degrees == std::vector<int>(3, 0));
}

TEST_CASE("thickening grows by one hop and grades newcomers") {
  InfoSpace s = testutil::l5();
  ThickPoint p1 = initial_ball(s, 1.5, 0);  // {a,b}
  ThickPoint p2 = thicken(s, 1.5, p1);
  CHECK(p2.level == 2);
  CHECK(p2.members == testutil::ids(s, {"a", "b", "c"}));
  CHECK(p2.degrees == std::vector<int>{0, 0, 1});
  ThickPoint p3 = thicken(s, 1.5, p2);
  CHECK(p3.members == testutil::ids(s, {"a", "b", "c", "d"}));
  CHECK(p3.degrees == std::vector<int>{0, 0, 1, 2});
  ThickPoint p4 = thicken(s, 1.5, p3);  // stable from here on
  CHECK(p4.members == p3.members);
  CHECK(p4.degrees == p3.degrees);

  CHECK_THROWS_AS((void)thicken(s, 1.5, point_at_level0(s, 0)), Error);
  CHECK(delta_point(s, 1.5, point_at_level0(s, 0)).members == testutil::ids(s, {"a", "b"}));
}

TEST_CASE("delta on subsets is the union of member balls") {
  InfoSpace s = testutil::l5();
  CHECK(delta_set(s, 1.5, testutil::ids(s, {"a"})) == testutil::ids(s, {"a", "b"}));
  CHECK(delta_set(s, 1.5, testutil::ids(s, {"a", "d"})) ==
        testutil::ids(s, {"a", "b", "c", "d"}));
  CHECK(delta_set(s, 1.5, {}) == AtomSet{});
  CHECK(delta_set(s, 1.5, testutil::ids(s, {"e"})) == testutil::ids(s, {"e"}));
}

TEST_CASE("strata split members by degree") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 3);
  CHECK(strata(sys.point(0, 2)) ==
        std::vector<AtomSet>{testutil::ids(s, {"a", "b"}), testutil::ids(s, {"c"})});
  CHECK(strata(sys.point(0, 3)) ==
        std::vector<AtomSet>{testutil::ids(s, {"a", "b"}), testutil::ids(s, {"c"}),
                             testutil::ids(s, {"d"})});
  CHECK(strata(sys.point(4, 1)) == std::vector<AtomSet>{testutil::ids(s, {"e"})});
  CHECK_THROWS_AS((void)strata(sys.point(0, 0)), Error);
}

TEST_CASE("degrees equal hop distance minus one against the BFS oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    InfoSpace s = testutil::random_space(rng, 12);
    for (double eps : testutil::eps_grid()) {
      DirectedSystem sys = build_system(s, eps, 4);
      for (AtomId a = 0; a < s.size(); ++a) {
        std::vector<int> hops = testutil::bfs_hops(s, eps, a);
        for (int p = 1; p <= 4; ++p) {
          const ThickPoint& tp = sys.point(a, p);
          AtomSet expect;
          for (AtomId x = 0; x < s.size(); ++x)
            if (hops[x] >= 0 && hops[x] <= p) expect.push_back(x);
          REQUIRE(tp.members == expect);
          for (AtomId x : tp.members)
            REQUIRE(tp.degree_of(x) == std::max(0, hops[x] - 1));
        }
      }
    }
  }
}

TEST_CASE("level categories are codiscrete and shared along the system") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 2);
  for (int p = 0; p <= 2; ++p) {
    CHECK(validate_category(sys.levels[p].cat).empty());
    CHECK(is_codiscrete(sys.levels[p].cat));
    CHECK(sys.levels[p].cat.n_objects() == 5);
    CHECK(sys.levels[p].cat.n_mors() == 25);
  }
  CHECK(sys.levels[1].cat.mors[7].label == "pi(c).a(b)");
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) CHECK(is_micro_reversible(sys.levels[1].cat, a, b).reversible);
}

TEST_CASE("thickening is a functor between consecutive levels") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 3);
  for (int p = 0; p < 3; ++p) {
    const FinCategory& cur = sys.levels[p].cat;
    const FinCategory& nxt = sys.levels[p + 1].cat;
    for (int a = 0; a < 5; ++a)
      CHECK(delta_on_morphism(sys, p, cur.ident[a]) == nxt.ident[a]);
    for (int f = 0; f < cur.n_mors(); ++f)
      for (int g = 0; g < cur.n_mors(); ++g) {
        if (cur.mors[f].dst != cur.mors[g].src) continue;
        CHECK(delta_on_morphism(sys, p, cur.compose(g, f)) ==
              nxt.compose(delta_on_morphism(sys, p, g), delta_on_morphism(sys, p, f)));
      }
  }
  CHECK_THROWS_AS((void)delta_on_morphism(sys, 3, 0), Error);
}

TEST_CASE("stabilization levels on the line") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 1);
  CHECK(sys.stabilization == std::vector<int>{3, 2, 2, 3, 1});
}

TEST_CASE("stabilization is the eccentricity floored at one") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    InfoSpace s = testutil::random_space(rng, 12);
    for (double eps : testutil::eps_grid()) {
      DirectedSystem sys = build_system(s, eps, 1);
      for (AtomId a = 0; a < s.size(); ++a)
        REQUIRE(sys.stabilization[a] == std::max(1, testutil::eccentricity(s, eps, a)));
    }
  }
}

TEST_CASE("the colimit of iterated thickening is the component") {
  InfoSpace s = testutil::l5();
  CHECK(colimit(s, 1.5, 0) == testutil::ids(s, {"a", "b", "c", "d"}));
  CHECK(colimit(s, 1.5, 3) == testutil::ids(s, {"a", "b", "c", "d"}));
  CHECK(colimit(s, 1.5, 4) == testutil::ids(s, {"e"}));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    InfoSpace r = testutil::random_space(rng, 12);
    for (double eps : testutil::eps_grid())
      for (AtomId a = 0; a < r.size(); ++a) {
        std::vector<int> hops = testutil::bfs_hops(r, eps, a);
        AtomSet reach;
        for (AtomId x = 0; x < r.size(); ++x)
          if (hops[x] >= 0) reach.push_back(x);
        REQUIRE(colimit(r, eps, a) == reach);
      }
  }
}

TEST_CASE("system report serializes the graded structure") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 2);
  nlohmann::json j = system_report(s, sys);
  CHECK(j["max_level"] == 2);
  CHECK(j["levels"].size() == 3);
  CHECK(j["levels"][2]["points"][0]["members"] ==
        nlohmann::json::array({"a", "b", "c"}));
  CHECK(j["stabilization"][0]["level"] == 3);
  std::string dot = system_to_dot(s, sys);
  CHECK(dot.find("L0_0 -> L1_0") != std::string::npos);
}

TEST_CASE("system construction rejects bad arguments") {
  InfoSpace s = testutil::l5();
  CHECK_THROWS_AS((void)build_system(s, 0.0, 2), Error);
  CHECK_THROWS_AS((void)build_system(s, 1.5, -1), Error);
  DirectedSystem sys = build_system(s, 1.5, 2);
  CHECK_THROWS_AS((void)sys.point(0, 3), Error);
  CHECK_THROWS_AS((void)sys.point(9, 1), Error);
}
