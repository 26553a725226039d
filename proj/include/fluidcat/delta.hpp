#pragma once
// One-hop thickening of points at resolution epsilon.  A thick point at level
// p collects everything reachable from its core within p hops of the
// eps-graph, graded by the hop count at which each member first appeared.

#include <json.hpp>

#include "fluidcat/fincat.hpp"
#include "fluidcat/info_space.hpp"

namespace fluidcat {

struct ThickPoint {
  AtomId core = -1;
  int level = 0;
  AtomSet members;           // sorted; always contains core
  std::vector<int> degrees;  // aligned with members; core has degree 0

  int degree_of(AtomId a) const;
  int max_degree() const;
  bool operator==(const ThickPoint&) const = default;
};

// level 0: the bare point {core}
ThickPoint point_at_level0(const InfoSpace& space, AtomId core);

// level 1: the open epsilon-ball, every member of degree 0
ThickPoint initial_ball(const InfoSpace& space, double epsilon, AtomId core);

// One thickening step at level p >= 1: union of member balls; surviving
// degrees are untouched, newcomers receive degree p.
ThickPoint thicken(const InfoSpace& space, double epsilon, const ThickPoint& tp);

// Thickening extended to level 0, where the step is taking the ball.
ThickPoint delta_point(const InfoSpace& space, double epsilon, const ThickPoint& tp);

// Set-level one-hop thickening: union of open balls of the members.
AtomSet delta_set(const InfoSpace& space, double epsilon, const AtomSet& s);

// Degree strata: entry k holds the members of degree exactly k.  Level-0
// points carry no stratification.
std::vector<AtomSet> strata(const ThickPoint& tp);

struct ThickCategory {
  int level = 0;
  std::vector<ThickPoint> points;  // one per core, core order
  FinCategory cat;                 // thin: one morphism per ordered pair

  int mor_index(int u, int v) const { return u * static_cast<int>(points.size()) + v; }
};

ThickCategory thick_category(const InfoSpace& space, double epsilon, int level);

struct DirectedSystem {
  double epsilon = 0.0;
  int max_level = 0;
  std::vector<ThickCategory> levels;  // indices 0..max_level
  std::vector<int> stabilization;     // per core: first level reaching its component

  const ThickPoint& point(AtomId core, int level) const;
};

DirectedSystem build_system(const InfoSpace& space, double epsilon, int max_level);

// Stabilized member set of the thickening chain started at core; computed by
// iterating delta to its fixed point, never through the component partition.
AtomSet colimit(const InfoSpace& space, double epsilon, AtomId core);

// Image of a level-p morphism one level up.  Thinness makes it unique.
int delta_on_morphism(const DirectedSystem& sys, int level, int mor);

nlohmann::json thick_point_to_json(const InfoSpace& space, const ThickPoint& tp);
nlohmann::json system_report(const InfoSpace& space, const DirectedSystem& sys);
std::string system_to_dot(const InfoSpace& space, const DirectedSystem& sys);

}  // namespace fluidcat
