#pragma once
// Groupoid-valued assignments of reshaping groupoids to thick points and the
// bundle categories they generate, with the cover, cofibration, thickening
// and duality checks that run on them.

#include <json.hpp>

#include "fluidcat/towers.hpp"

namespace fluidcat {

using TowerGenerators = std::map<AtomId, std::vector<Tower>>;

struct ChiData {
  int p = 1;
  int q = 1;
  double epsilon = 0.0;
  FinCategory base;                                  // q-fold product of the level-p category
  std::vector<std::vector<ThickPoint>> base_points;  // per base object: its q thick points
  std::vector<std::vector<Tower>> fiber_towers;      // per base object, fiber object order
  std::map<AtomId, std::vector<Tower>> core_fibers;  // single-foot fibers by core
  GroupoidValuedFunctor chi;
};

// Reshaping groupoids over every level-p thick point; morphisms act by
// sending every tower to the canonical tower over the target.
ChiData build_chi_p(const InfoSpace& space, const DirectedSystem& sys, int p,
                    const TowerGenerators& gens = {});

// q-fold version over tuples of thick points; fibers hold the pairwise merges
// and morphisms send everything to the merged canonical tower.  q = 1 gives
// exactly build_chi_p.
ChiData build_chi_pq(const InfoSpace& space, const DirectedSystem& sys, int p, int q,
                     const TowerGenerators& gens = {});

struct TowerBundle {
  ChiData data;
  ElementsCategory elements;
};

TowerBundle build_bundle(const ChiData& data);

struct DeltaBundleResult {
  TowerBundle bundle;              // one level up; fibers contain the thickened towers
  std::vector<int> object_map;     // old elements object -> new elements object
  std::vector<int> morphism_map;   // old elements morphism -> new elements morphism
};

DeltaBundleResult delta_bundle(const InfoSpace& space, const DirectedSystem& sys,
                               const TowerBundle& b);

struct Thread {
  int base_start = -1;
  std::vector<int> base_path;  // base morphism ids
  int elem_start = -1;
  std::vector<int> lift;       // elements morphism ids, one per path step
};

// All lifts of a composable base path; the empty path enumerates the fiber.
std::vector<Thread> threads(const TowerBundle& b, int base_start,
                            const std::vector<int>& base_path);

// The tower tops collected over the whole bundle must cover the atom set.
std::vector<LawViolation> kay_cover_check(const InfoSpace& space, const TowerBundle& b);

// Rebuild the base through the projection and compare it with the level-p
// thick-point category (or its q-fold product): same objects by core tuple,
// same hom sets, consistent composition, codiscrete fibers of the right size.
std::vector<LawViolation> duality_roundtrip(const InfoSpace& space, const DirectedSystem& sys,
                                            const TowerBundle& b);

nlohmann::json bundle_report(const InfoSpace& space, const TowerBundle& b);
std::string bundle_to_dot(const InfoSpace& space, const TowerBundle& b);

}  // namespace fluidcat
