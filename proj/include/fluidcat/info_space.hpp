#pragma once
// Finite information spaces: a list of atoms together with a symmetric
// distance.  No triangle inequality is assumed anywhere; proximity below a
// resolution epsilon is the only structure the rest of the library reads.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fluidcat/atom_set.hpp"
#include "fluidcat/errors.hpp"

namespace fluidcat {

struct InfoSpace {
  std::vector<std::string> atoms;  // ids, input order; this order is canonical
  std::vector<double> dmat;        // row-major size() x size()

  int size() const { return static_cast<int>(atoms.size()); }
  bool has(AtomId a) const { return a >= 0 && a < size(); }

  double dist(AtomId a, AtomId b) const;
  AtomId index_of(const std::string& id) const;
  const std::string& name(AtomId a) const;
  AtomSet all_atoms() const;
};

// Accepted documents:
//   {"atoms":["a",...], "metric":{"type":"matrix","d":[[...],...]}}
//   {"atoms":["a",...], "metric":{"type":"euclidean","coords":{"a":[...],...}}}
// Matrix rows follow the atoms list.  For euclidean documents the atoms list
// may be omitted, in which case coordinate keys in lexicographic order are
// used.
InfoSpace load_space(const nlohmann::json& doc);
InfoSpace load_space_text(const std::string& text);
InfoSpace load_space_file(const std::string& path);

struct EpsGraph {
  double epsilon = 0.0;
  int n = 0;
  std::vector<std::pair<AtomId, AtomId>> edges;  // u < v, strict dist < epsilon
  std::vector<std::vector<AtomId>> adj;
};

EpsGraph eps_graph(const InfoSpace& space, double epsilon);

// Open ball around a: every atom strictly closer than epsilon, plus a itself.
AtomSet ball(const InfoSpace& space, AtomId a, double epsilon);

// Partition into eps-graph connected components, cells ordered by their
// smallest atom.
std::vector<AtomSet> components(const InfoSpace& space, double epsilon);

// Cardinality content of a subset; rejects ids outside the space.
int info_content(const InfoSpace& space, const AtomSet& s);

}  // namespace fluidcat
