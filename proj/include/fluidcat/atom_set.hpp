#pragma once
// Atoms are indices into a space's atom list.  Sets of atoms are kept as
// sorted, duplicate-free vectors so every consumer sees one canonical order.

#include <algorithm>
#include <vector>

namespace fluidcat {

using AtomId = int;
using AtomSet = std::vector<AtomId>;

inline void set_normalize(AtomSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool set_contains(const AtomSet& s, AtomId a) {
  return std::binary_search(s.begin(), s.end(), a);
}

inline AtomSet set_union_of(const AtomSet& x, const AtomSet& y) {
  AtomSet out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

inline AtomSet set_difference_of(const AtomSet& x, const AtomSet& y) {
  AtomSet out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

inline bool set_is_subset(const AtomSet& x, const AtomSet& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

}  // namespace fluidcat
