#pragma once
// Towers over thick points: monotone chains of weighted cross sections ending
// at the full atom set, a merge product on them, reshaping groupoids, and the
// thickening functor acting on all of it.

#include <random>

#include <json.hpp>

#include "fluidcat/delta.hpp"

namespace fluidcat {

struct CrossSection {
  AtomSet members;
  std::vector<double> intensity;  // aligned with members, values in (0, 1]

  double intensity_of(AtomId a) const;
  bool operator==(const CrossSection&) const = default;
};

struct Tower {
  std::vector<ThickPoint> feet;        // distinct; empty only for the unit tower
  std::vector<CrossSection> sections;  // S0 = union of feet, top = full set

  bool is_empty() const { return feet.empty() && sections.empty(); }
  const CrossSection& top() const;
  bool operator==(const Tower&) const = default;
};

// The unit for the merge product: no feet, no sections.
Tower empty_tower();

// Chain of delta-iterates of U up to its fixed point, then the full-set top;
// every intensity is 1.
Tower canonical_tower(const InfoSpace& space, double epsilon, const ThickPoint& u);

// Structural audit of the chain invariants; empty report means valid.
std::vector<LawViolation> validate_tower(const InfoSpace& space, const Tower& t);

struct Reshaping {
  Tower src;
  Tower dst;
};

// The unique reshaping between two towers over identical feet.
Reshaping reshape(const Tower& t, const Tower& t2);
Reshaping reverse(const Reshaping& r);
Reshaping compose(const Reshaping& second, const Reshaping& first);

// Merge product: feet concatenated (duplicates collapsed), sections united
// index by index with the shorter chain padded by its top; intensities take
// the pointwise maximum where both sides are defined.
Tower tensor(const Tower& t, const Tower& t2);

// Thickening of a tower: feet are thickened, every non-top section is
// replaced by the union of its members' balls, the top stays.  A member
// inherits the largest intensity among the atoms that reach it, itself
// included.
Tower delta_tower(const InfoSpace& space, double epsilon, const Tower& t);

struct TowerGroupoid {
  std::vector<ThickPoint> feet;
  std::vector<Tower> towers;  // distinct, canonical tower first when present

  FinGroupoid to_groupoid() const;  // codiscrete on the towers
};

// Reshaping groupoid over U: the canonical tower plus the given generators.
TowerGroupoid kay(const InfoSpace& space, double epsilon, const ThickPoint& u,
                  const std::vector<Tower>& generators = {});

// Unit of the sum: the groupoid of the empty tower over no feet.
TowerGroupoid unit_groupoid();

// Merge of two reshaping groupoids: all pairwise tensor products.
TowerGroupoid kay_sum(const TowerGroupoid& ka, const TowerGroupoid& kb);

struct MultiTowerClass {
  Tower target;
  std::vector<std::vector<Tower>> representatives;  // tuples merging to target
};

// Randomized splittings of a merged tower into per-foot representative tuples.
MultiTowerClass representative_class(const Tower& target, int count, std::mt19937_64& rng);

// Random valid tower over u, for property suites; deterministic in the rng.
Tower random_tower(const InfoSpace& space, const ThickPoint& u, std::mt19937_64& rng);

nlohmann::json tower_to_json(const InfoSpace& space, const Tower& t);
std::string towers_to_dot(const InfoSpace& space, const std::vector<Tower>& ts);

}  // namespace fluidcat
