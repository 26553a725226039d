#include "fluidcat/delta.hpp"

#include <sstream>

namespace fluidcat {

int ThickPoint::degree_of(AtomId a) const {
  auto it = std::lower_bound(members.begin(), members.end(), a);
  if (it == members.end() || *it != a) fail("UnknownAtom", "degree query for a non-member");
  return degrees[it - members.begin()];
}

int ThickPoint::max_degree() const {
  int m = 0;
  for (int d : degrees) m = std::max(m, d);
  return m;
}

ThickPoint point_at_level0(const InfoSpace& space, AtomId core) {
  if (!space.has(core)) fail("UnknownAtom", "core outside the space");
  return {core, 0, {core}, {0}};
}

ThickPoint initial_ball(const InfoSpace& space, double epsilon, AtomId core) {
  ThickPoint tp;
  tp.core = core;
  tp.level = 1;
  tp.members = ball(space, core, epsilon);
  tp.degrees.assign(tp.members.size(), 0);
  return tp;
}

ThickPoint thicken(const InfoSpace& space, double epsilon, const ThickPoint& tp) {
  if (tp.level < 1) fail("ZeroLevel", "thicken is only defined from level 1 upward");
  for (AtomId a : tp.members)
    if (!space.has(a)) fail("UnknownAtom", "thick point contains an atom outside the space");
  AtomSet grown = delta_set(space, epsilon, tp.members);
  ThickPoint out;
  out.core = tp.core;
  out.level = tp.level + 1;
  out.members = grown;
  out.degrees.reserve(grown.size());
  for (AtomId a : grown) {
    auto it = std::lower_bound(tp.members.begin(), tp.members.end(), a);
    if (it != tp.members.end() && *it == a)
      out.degrees.push_back(tp.degrees[it - tp.members.begin()]);
    else
      out.degrees.push_back(tp.level);
  }
  return out;
}

ThickPoint delta_point(const InfoSpace& space, double epsilon, const ThickPoint& tp) {
  if (tp.level == 0) return initial_ball(space, epsilon, tp.core);
  return thicken(space, epsilon, tp);
}

AtomSet delta_set(const InfoSpace& space, double epsilon, const AtomSet& s) {
  AtomSet out;
  for (AtomId a : s) out = set_union_of(out, ball(space, a, epsilon));
  return out;
}

std::vector<AtomSet> strata(const ThickPoint& tp) {
  if (tp.level < 1) fail("ZeroLevel", "level-0 points carry no stratification");
  std::vector<AtomSet> out(tp.max_degree() + 1);
  for (size_t i = 0; i < tp.members.size(); ++i) out[tp.degrees[i]].push_back(tp.members[i]);
  return out;
}

ThickCategory thick_category(const InfoSpace& space, double epsilon, int level) {
  ThickCategory tc;
  tc.level = level;
  for (int a = 0; a < space.size(); ++a) {
    if (level == 0)
      tc.points.push_back(point_at_level0(space, a));
    else {
      ThickPoint tp = initial_ball(space, epsilon, a);
      for (int p = 1; p < level; ++p) tp = thicken(space, epsilon, tp);
      tc.points.push_back(std::move(tp));
    }
  }
  std::vector<std::string> labels = space.atoms;
  tc.cat = codiscrete_category(labels, [&space](int u, int v) {
    return "pi(" + space.atoms[v] + ").a(" + space.atoms[u] + ")";
  });
  return tc;
}

const ThickPoint& DirectedSystem::point(AtomId core, int level) const {
  if (level < 0 || level > max_level) fail("LevelExceeded", "level outside the built system");
  if (core < 0 || core >= static_cast<int>(levels[level].points.size()))
    fail("UnknownAtom", "core outside the space");
  return levels[level].points[core];
}

DirectedSystem build_system(const InfoSpace& space, double epsilon, int max_level) {
  if (max_level < 0) fail("ZeroLevel", "system depth must be non-negative");
  eps_graph(space, epsilon);  // validates epsilon
  DirectedSystem sys;
  sys.epsilon = epsilon;
  sys.max_level = max_level;
  sys.levels.push_back(thick_category(space, epsilon, 0));
  for (int p = 1; p <= max_level; ++p) {
    ThickCategory tc;
    tc.level = p;
    const ThickCategory& prev = sys.levels.back();
    for (int a = 0; a < space.size(); ++a)
      tc.points.push_back(p == 1 ? initial_ball(space, epsilon, a)
                                 : thicken(space, epsilon, prev.points[a]));
    tc.cat = sys.levels[0].cat;
    sys.levels.push_back(std::move(tc));
  }
  sys.stabilization.resize(space.size());
  for (int a = 0; a < space.size(); ++a) {
    int p = 1;
    AtomSet cur = ball(space, a, epsilon);
    for (;;) {
      AtomSet next = delta_set(space, epsilon, cur);
      if (next == cur) break;
      cur = std::move(next);
      ++p;
    }
    sys.stabilization[a] = p;
  }
  return sys;
}

AtomSet colimit(const InfoSpace& space, double epsilon, AtomId core) {
  AtomSet cur = ball(space, core, epsilon);
  for (;;) {
    AtomSet next = delta_set(space, epsilon, cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

int delta_on_morphism(const DirectedSystem& sys, int level, int mor) {
  if (level < 0 || level > sys.max_level) fail("LevelExceeded", "level outside the built system");
  if (level + 1 > sys.max_level)
    fail("LevelExceeded", "no level above " + std::to_string(level) + " in this system");
  const FinCategory& cat = sys.levels[level].cat;
  if (mor < 0 || mor >= cat.n_mors()) fail("UnknownObject", "morphism index out of range");
  return sys.levels[level + 1].mor_index(cat.mors[mor].src, cat.mors[mor].dst);
}

nlohmann::json thick_point_to_json(const InfoSpace& space, const ThickPoint& tp) {
  nlohmann::json j;
  j["core"] = space.name(tp.core);
  j["level"] = tp.level;
  auto& mem = j["members"] = nlohmann::json::array();
  for (AtomId a : tp.members) mem.push_back(space.name(a));
  j["degrees"] = tp.degrees;
  return j;
}

nlohmann::json system_report(const InfoSpace& space, const DirectedSystem& sys) {
  nlohmann::json j;
  j["epsilon"] = sys.epsilon;
  j["max_level"] = sys.max_level;
  auto& levels = j["levels"] = nlohmann::json::array();
  for (const ThickCategory& tc : sys.levels) {
    nlohmann::json lj;
    lj["level"] = tc.level;
    auto& pts = lj["points"] = nlohmann::json::array();
    for (const ThickPoint& tp : tc.points) {
      nlohmann::json pj = thick_point_to_json(space, tp);
      if (tc.level >= 1) {
        auto& st = pj["strata"] = nlohmann::json::array();
        for (const AtomSet& cell : strata(tp)) {
          nlohmann::json cj = nlohmann::json::array();
          for (AtomId a : cell) cj.push_back(space.name(a));
          st.push_back(std::move(cj));
        }
      }
      pts.push_back(std::move(pj));
    }
    levels.push_back(std::move(lj));
  }
  auto& stab = j["stabilization"] = nlohmann::json::array();
  for (int a = 0; a < space.size(); ++a) {
    nlohmann::json sj;
    sj["core"] = space.name(a);
    sj["level"] = sys.stabilization[a];
    auto& mem = sj["members"] = nlohmann::json::array();
    for (AtomId b : colimit(space, sys.epsilon, a)) mem.push_back(space.name(b));
    stab.push_back(std::move(sj));
  }
  return j;
}

std::string system_to_dot(const InfoSpace& space, const DirectedSystem& sys) {
  std::ostringstream os;
  os << "digraph system {\n  rankdir=BT;\n";
  for (const ThickCategory& tc : sys.levels) {
    os << "  subgraph cluster_level" << tc.level << " {\n";
    os << "    label=\"level " << tc.level << "\";\n";
    for (size_t a = 0; a < tc.points.size(); ++a) {
      os << "    L" << tc.level << "_" << a << " [label=\"" << space.name(static_cast<int>(a))
         << " {";
      for (size_t i = 0; i < tc.points[a].members.size(); ++i)
        os << (i ? "," : "") << space.name(tc.points[a].members[i]);
      os << "}\"];\n";
    }
    os << "  }\n";
  }
  for (int p = 0; p < sys.max_level; ++p)
    for (size_t a = 0; a < sys.levels[p].points.size(); ++a)
      os << "  L" << p << "_" << a << " -> L" << p + 1 << "_" << a << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace fluidcat
