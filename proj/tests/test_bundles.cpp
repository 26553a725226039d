#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fluidcat/bundles.hpp"
#include "testutil.hpp"

using namespace fluidcat;

namespace {

bool has_law(const std::vector<LawViolation>& vs, const std::string& law) {
  for (const auto& v : vs)
    if (v.law == law) return true;
  return false;
}

// two extra generator towers over a and one over b, all random but seeded
TowerGenerators sample_generators(const InfoSpace& s, const DirectedSystem& sys) {
  std::mt19937_64 rng(53);
  TowerGenerators gens;
  gens[0] = {random_tower(s, sys.point(0, 1), rng), random_tower(s, sys.point(0, 1), rng)};
  gens[1] = {random_tower(s, sys.point(1, 1), rng)};
  return gens;
}

}  // namespace

TEST_CASE("the level-1 bundle over the line") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 2);
  ChiData cd = build_chi_p(s, sys, 1);

  REQUIRE(cd.base.n_objects() == 5);
  REQUIRE(cd.fiber_towers.size() == 5);
  for (int t = 0; t < 5; ++t) {
    REQUIRE(cd.fiber_towers[t].size() == 1);
    CHECK(cd.fiber_towers[t][0] == canonical_tower(s, 1.5, sys.point(t, 1)));
  }

  ChiReport rep = validate_chi(cd.chi);
  CHECK(rep.violations.empty());
  CHECK(rep.strict_identities);  // singleton fibers make the collapse an identity
  CHECK(rep.strict_composites);

  TowerBundle b = build_bundle(cd);
  CHECK(b.elements.cat.n_objects() == 5);
  CHECK(b.elements.cat.n_mors() == 25);
  CHECK(validate_category(b.elements.cat).empty());
  CHECK(validate_projection(b.elements).empty());
  CHECK(check_cofibered(b.elements).empty());
  CHECK(kay_cover_check(s, b).empty());
  CHECK(duality_roundtrip(s, sys, b).empty());
}

TEST_CASE("generators enlarge the fibers and the laws still hold") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 2);
  ChiData cd = build_chi_p(s, sys, 1, sample_generators(s, sys));

  REQUIRE(cd.fiber_towers[0].size() == 3);
  REQUIRE(cd.fiber_towers[1].size() == 2);
  REQUIRE(cd.fiber_towers[2].size() == 1);

  ChiReport rep = validate_chi(cd.chi);
  CHECK(rep.violations.empty());
  CHECK(!rep.strict_identities);  // larger fibers collapse onto the canonical tower
  CHECK(rep.strict_composites);

  TowerBundle b = build_bundle(cd);
  CHECK(b.elements.cat.n_objects() == 8);
  CHECK(b.elements.cat.n_mors() == 64);  // (3+2+1+1+1)^2 over the codiscrete base
  CHECK(validate_category(b.elements.cat).empty());
  CHECK(check_cofibered(b.elements).empty());
  CHECK(duality_roundtrip(s, sys, b).empty());
  CHECK(kay_cover_check(s, b).empty());
}

TEST_CASE("arity-two bundles live over the product of the level category") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 2);
  ChiData cd = build_chi_pq(s, sys, 1, 2);

  REQUIRE(cd.base.n_objects() == 25);
  REQUIRE(cd.base.n_mors() == 625);
  CHECK(cd.base.objects[0 * 5 + 3] == "(a,d)");
  CHECK(validate_category(cd.base).empty());
  REQUIRE(cd.base_points[3].size() == 2);
  CHECK(cd.base_points[3][0] == sys.point(0, 1));
  CHECK(cd.base_points[3][1] == sys.point(3, 1));

  // singleton core fibers merge to a single tower over every pair
  for (int t = 0; t < 25; ++t) REQUIRE(cd.fiber_towers[t].size() == 1);
  CHECK(cd.fiber_towers[3][0] ==
        tensor(canonical_tower(s, 1.5, sys.point(0, 1)),
               canonical_tower(s, 1.5, sys.point(3, 1))));

  TowerBundle b = build_bundle(cd);
  CHECK(b.elements.cat.n_objects() == 25);
  CHECK(b.elements.cat.n_mors() == 625);
  CHECK(check_cofibered(b.elements).empty());
  CHECK(duality_roundtrip(s, sys, b).empty());
  CHECK(kay_cover_check(s, b).empty());
}

TEST_CASE("arity one is exactly the plain construction") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 1);
  ChiData via_q = build_chi_pq(s, sys, 1, 1, sample_generators(s, sys));
  ChiData direct = build_chi_p(s, sys, 1, sample_generators(s, sys));
  CHECK(via_q.base.objects == direct.base.objects);
  CHECK(via_q.fiber_towers == direct.fiber_towers);
  CHECK(via_q.base_points == direct.base_points);
}

TEST_CASE("bundle construction validates its arguments") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 1);
  CHECK_THROWS_AS((void)build_chi_pq(s, sys, 1, 0), Error);
  CHECK_THROWS_AS((void)build_chi_pq(s, sys, 1, 9), Error);  // 5^9 base objects
  CHECK_THROWS_AS((void)build_chi_p(s, sys, 3), Error);
  TowerGenerators stray;
  stray[99] = {};
  CHECK_THROWS_AS((void)build_chi_p(s, sys, 1, stray), Error);
}

TEST_CASE("thickening a bundle sends towers to their thickenings") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 3);
  TowerBundle b = build_bundle(build_chi_p(s, sys, 1, sample_generators(s, sys)));

  DeltaBundleResult d = delta_bundle(s, sys, b);
  CHECK(d.bundle.data.p == 2);
  REQUIRE(d.object_map.size() == b.elements.elem_objs.size());
  REQUIRE(d.morphism_map.size() == b.elements.elem_mors.size());

  for (size_t o = 0; o < d.object_map.size(); ++o) {
    const ElemObj& old_obj = b.elements.elem_objs[o];
    const ElemObj& new_obj = d.bundle.elements.elem_objs[d.object_map[o]];
    CHECK(new_obj.base_obj == old_obj.base_obj);  // the projection commutes
    CHECK(d.bundle.data.fiber_towers[new_obj.base_obj][new_obj.fiber_obj] ==
          delta_tower(s, 1.5, b.data.fiber_towers[old_obj.base_obj][old_obj.fiber_obj]));
  }
  for (size_t m = 0; m < d.morphism_map.size(); ++m) {
    const ElemMor& old_mor = b.elements.elem_mors[m];
    const ElemMor& new_mor = d.bundle.elements.elem_mors[d.morphism_map[m]];
    CHECK(new_mor.src == d.object_map[old_mor.src]);
    CHECK(new_mor.dst == d.object_map[old_mor.dst]);
  }

  // functoriality: identities and composites of the elements category descend
  const FinCategory& oc = b.elements.cat;
  const FinCategory& nc = d.bundle.elements.cat;
  for (size_t o = 0; o < d.object_map.size(); ++o)
    CHECK(d.morphism_map[oc.ident[o]] == nc.ident[d.object_map[o]]);
  for (int f = 0; f < oc.n_mors(); ++f)
    for (int g = 0; g < oc.n_mors(); ++g) {
      if (oc.mors[f].dst != oc.mors[g].src) continue;
      REQUIRE(d.morphism_map[oc.compose(g, f)] ==
              nc.compose(d.morphism_map[g], d.morphism_map[f]));
    }
}

TEST_CASE("thickening an arity-two bundle distributes over the merges") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 2);
  TowerBundle b = build_bundle(build_chi_pq(s, sys, 1, 2));
  DeltaBundleResult d = delta_bundle(s, sys, b);
  CHECK(d.bundle.data.q == 2);
  for (size_t o = 0; o < d.object_map.size(); ++o) {
    const ElemObj& old_obj = b.elements.elem_objs[o];
    const ElemObj& new_obj = d.bundle.elements.elem_objs[d.object_map[o]];
    CHECK(d.bundle.data.fiber_towers[new_obj.base_obj][new_obj.fiber_obj] ==
          delta_tower(s, 1.5, b.data.fiber_towers[old_obj.base_obj][old_obj.fiber_obj]));
  }
}

TEST_CASE("bundles at the top level cannot thicken") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 1);
  TowerBundle b = build_bundle(build_chi_p(s, sys, 1));
  CHECK_THROWS_AS((void)delta_bundle(s, sys, b), Error);
}

TEST_CASE("threads lift base paths through every fiber choice") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 1);
  TowerGenerators gens = sample_generators(s, sys);
  TowerBundle b = build_bundle(build_chi_p(s, sys, 1, gens));
  // fiber sizes: over a three towers, over b two

  SUBCASE("the empty path enumerates the fiber") {
    auto ts = threads(b, 0, {});
    CHECK(ts.size() == 3);
    for (const Thread& t : ts) CHECK(t.lift.empty());
  }
  SUBCASE("one step fans out over source and destination fibers") {
    int a_to_b = 0 * 5 + 1;
    auto ts = threads(b, 0, {a_to_b});
    CHECK(ts.size() == 6);  // 3 sources, 2 targets
    for (const Thread& t : ts) {
      REQUIRE(t.lift.size() == 1);
      CHECK(b.elements.proj_mor[t.lift[0]] == a_to_b);
    }
  }
  SUBCASE("two composable steps multiply the choices") {
    int a_to_b = 0 * 5 + 1, b_to_c = 1 * 5 + 2;
    auto ts = threads(b, 0, {a_to_b, b_to_c});
    CHECK(ts.size() == 3 * 2 * 1);
    for (const Thread& t : ts) {
      const Mor& first = b.elements.cat.mors[t.lift[0]];
      const Mor& second = b.elements.cat.mors[t.lift[1]];
      CHECK(first.dst == second.src);
    }
  }
  SUBCASE("non-composable paths are rejected") {
    CHECK_THROWS_AS((void)threads(b, 0, {0 * 5 + 1, 0 * 5 + 2}), Error);
    CHECK_THROWS_AS((void)threads(b, 9, {}), Error);
    CHECK_THROWS_AS((void)threads(b, 0, {99}), Error);
  }
}

TEST_CASE("the cover check reports atoms missed by every tower top") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 1);
  TowerBundle b = build_bundle(build_chi_p(s, sys, 1));
  CHECK(kay_cover_check(s, b).empty());

  TowerBundle truncated = b;
  for (auto& fiber : truncated.data.fiber_towers)
    for (Tower& t : fiber) {
      t.sections.back().members = testutil::ids(s, {"a", "b", "c", "d"});
      t.sections.back().intensity.assign(4, 1.0);
    }
  auto vs = kay_cover_check(s, truncated);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].law == "kay-cover");
  CHECK(vs[0].detail.find("'e'") != std::string::npos);
}

TEST_CASE("the duality roundtrip fails on doctored bundles") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 1);
  TowerBundle b = build_bundle(build_chi_p(s, sys, 1, sample_generators(s, sys)));
  CHECK(duality_roundtrip(s, sys, b).empty());

  SUBCASE("a fiber that lost a tower") {
    TowerBundle t = b;
    t.data.fiber_towers[0].pop_back();
    CHECK(has_law(duality_roundtrip(s, sys, t), "duality-fiber"));
  }
  SUBCASE("a projection that skips a base morphism") {
    TowerBundle t = b;
    for (int& pm : t.elements.proj_mor)
      if (pm == 1) pm = 2;
    auto vs = duality_roundtrip(s, sys, t);
    CHECK(!vs.empty());
  }
}

TEST_CASE("bundle reports expose fibers and projection tables") {
  InfoSpace s = testutil::l5();
  DirectedSystem sys = build_system(s, 1.5, 1);
  TowerBundle b = build_bundle(build_chi_p(s, sys, 1));
  nlohmann::json j = bundle_report(s, b);
  CHECK(j["p"] == 1);
  CHECK(j["q"] == 1);
  CHECK(j["base"]["objects"] == 5);
  CHECK(j["elements"]["morphisms"] == 25);
  CHECK(j["fibers"][0]["towers"][0]["id"] == "t0");
  CHECK(j["projection"]["objects"].size() == 5);
  std::string dot = bundle_to_dot(s, b);
  CHECK(dot.find("cluster_b0") != std::string::npos);
}
