#pragma once
// Finite categories with explicit object/morphism tables.  Composition is a
// total function of morphism pairs returning -1 when undefined, so large thin
// categories can compute composites instead of storing quadratic tables while
// corrupt fixtures can still present arbitrary table contents to the
// validators.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "fluidcat/errors.hpp"

namespace fluidcat {

struct Mor {
  int src = -1;
  int dst = -1;
  std::string label;
};

struct FinCategory {
  std::vector<std::string> objects;
  std::vector<Mor> mors;
  std::vector<int> ident;                 // object -> identity morphism
  std::function<int(int, int)> comp;      // (g, f) -> g after f, or -1

  int n_objects() const { return static_cast<int>(objects.size()); }
  int n_mors() const { return static_cast<int>(mors.size()); }
  int compose(int g, int f) const { return comp(g, f); }

  // morphism ids grouped by source / destination object
  std::vector<std::vector<int>> mors_by_src() const;
  std::vector<std::vector<int>> mors_by_dst() const;
  std::vector<int> hom(int a, int b) const;
};

struct FinGroupoid {
  FinCategory cat;
  std::vector<int> inverse;  // morphism -> inverse morphism
};

// Thin category with exactly one morphism per ordered object pair; morphism
// u -> v sits at index u * n + v.
FinCategory codiscrete_category(
    std::vector<std::string> object_labels,
    const std::function<std::string(int, int)>& mor_label = nullptr);
FinGroupoid codiscrete_groupoid(
    std::vector<std::string> object_labels,
    const std::function<std::string(int, int)>& mor_label = nullptr);

// Category backed by an explicit composition table, for fixtures.
FinCategory table_category(std::vector<std::string> objects, std::vector<Mor> mors,
                           std::vector<int> ident,
                           const std::vector<std::array<int, 3>>& comps);

struct LawViolation {
  std::string law;
  std::string detail;
};

// Exhaustive identity/associativity/endpoint audit over all composable pairs
// and triples.
std::vector<LawViolation> validate_category(const FinCategory& c);
std::vector<LawViolation> validate_groupoid(const FinGroupoid& g);

bool is_codiscrete(const FinCategory& c);

struct MicroRev {
  bool reversible = false;
  std::string reason;
};

// Micro-reversibility of the pair (a, b): every f: a -> b must act bijectively
// on Hom(c, a) -> Hom(c, b) by postcomposition, for every probe object c.
MicroRev is_micro_reversible(const FinCategory& c, int a, int b);

struct GroupoidFunctor {
  std::vector<int> obj_map;
  std::vector<int> mor_map;
};

std::vector<LawViolation> validate_groupoid_functor(const FinGroupoid& src,
                                                    const FinGroupoid& dst,
                                                    const GroupoidFunctor& f);

struct GroupoidValuedFunctor {
  FinCategory base;
  std::vector<FinGroupoid> fibers;       // per base object
  std::vector<GroupoidFunctor> on_mor;   // per base morphism
};

struct ChiReport {
  std::vector<LawViolation> violations;
  // strict functor laws hold on the nose; with codiscrete fibers the laws are
  // accepted up to the unique fiber isomorphism and strictness is reported
  bool strict_identities = true;
  bool strict_composites = true;
};

ChiReport validate_chi(const GroupoidValuedFunctor& chi);

struct ElemObj {
  int base_obj = -1;
  int fiber_obj = -1;
};

struct ElemMor {
  int base_mor = -1;
  int fiber_mor = -1;  // morphism of the destination fiber
  int src = -1;
  int dst = -1;
};

struct ElementsCategory {
  FinCategory cat;
  FinCategory base;
  std::vector<int> proj_obj;  // cat object -> base object
  std::vector<int> proj_mor;  // cat morphism -> base morphism
  std::vector<ElemObj> elem_objs;
  std::vector<ElemMor> elem_mors;
  std::vector<int> obj_offset;  // base object -> first elements object

  int obj_index(int base_obj, int fiber_obj) const {
    return obj_offset[base_obj] + fiber_obj;
  }
};

// Grothendieck construction.  Objects are pairs (c, x) with x in the fiber
// over c; a morphism (f, alpha) carries alpha: chi(f)(x) -> y in the fiber
// over the target.  Requires strict composition of chi; identity laws may
// hold only up to the unique isomorphism when fibers are codiscrete.
ElementsCategory category_of_elements(const GroupoidValuedFunctor& chi);

// The projection onto the base must be a functor: endpoints, identities and
// composites all descend.
std::vector<LawViolation> validate_projection(const ElementsCategory& e);

// Cofibered-in-groupoids audit: every fiber is a groupoid and every base
// morphism admits a cocartesian lift at every element, unique up to unique
// fiber isomorphism.  Empty report means the projection is a cofibration.
std::vector<LawViolation> check_cofibered(const ElementsCategory& e);

nlohmann::json category_to_json(const FinCategory& c);
std::string category_to_dot(const FinCategory& c, const std::string& graph_name = "category");

}  // namespace fluidcat
