#include "fluidcat/towers.hpp"

#include <sstream>

namespace fluidcat {

double CrossSection::intensity_of(AtomId a) const {
  auto it = std::lower_bound(members.begin(), members.end(), a);
  if (it == members.end() || *it != a) fail("UnknownAtom", "intensity query for a non-member");
  return intensity[it - members.begin()];
}

const CrossSection& Tower::top() const {
  if (sections.empty()) fail("BaseMismatch", "the empty tower has no top section");
  return sections.back();
}

Tower empty_tower() { return {}; }

Tower canonical_tower(const InfoSpace& space, double epsilon, const ThickPoint& u) {
  Tower t;
  t.feet.push_back(u);
  AtomSet cur = u.members;
  for (;;) {
    t.sections.push_back({cur, std::vector<double>(cur.size(), 1.0)});
    AtomSet next = delta_set(space, epsilon, cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  AtomSet all = space.all_atoms();
  t.sections.push_back({all, std::vector<double>(all.size(), 1.0)});
  return t;
}

std::vector<LawViolation> validate_tower(const InfoSpace& space, const Tower& t) {
  std::vector<LawViolation> out;
  if (t.is_empty()) return out;
  if (t.feet.empty() || t.sections.empty()) {
    out.push_back({"tower-shape", "feet and sections must both be present or both be empty"});
    return out;
  }
  for (size_t i = 0; i < t.feet.size(); ++i)
    for (size_t j = i + 1; j < t.feet.size(); ++j)
      if (t.feet[i] == t.feet[j]) out.push_back({"tower-feet", "duplicate foot"});
  AtomSet feet_union;
  for (const ThickPoint& f : t.feet) {
    for (AtomId a : f.members)
      if (!space.has(a)) out.push_back({"tower-feet", "foot member outside the space"});
    feet_union = set_union_of(feet_union, f.members);
  }
  if (!out.empty()) return out;

  if (t.sections.front().members != feet_union)
    out.push_back({"tower-base", "lowest section differs from the union of the feet"});
  for (const CrossSection& s : t.sections) {
    if (s.intensity.size() != s.members.size()) {
      out.push_back({"tower-intensity", "intensity not aligned with members"});
      return out;
    }
    for (double v : s.intensity)
      if (!(v > 0.0) || v > 1.0) out.push_back({"tower-intensity", "intensity outside (0,1]"});
  }
  for (size_t i = 0; i + 1 < t.sections.size(); ++i) {
    const CrossSection& lo = t.sections[i];
    const CrossSection& hi = t.sections[i + 1];
    if (!set_is_subset(lo.members, hi.members))
      out.push_back({"tower-monotone", "section " + std::to_string(i + 1) + " loses members"});
    else
      for (size_t k = 0; k < lo.members.size(); ++k)
        if (lo.intensity[k] > hi.intensity_of(lo.members[k]))
          out.push_back({"tower-monotone", "intensity decreases along the chain"});
  }
  if (t.sections.back().members != space.all_atoms())
    out.push_back({"tower-top", "top section does not cover the space"});
  else
    for (double v : t.sections.back().intensity)
      if (v != 1.0) out.push_back({"tower-top", "top intensity below 1"});
  return out;
}

Reshaping reshape(const Tower& t, const Tower& t2) {
  if (t.feet != t2.feet) fail("BaseMismatch", "towers stand on different feet");
  return {t, t2};
}

Reshaping reverse(const Reshaping& r) { return {r.dst, r.src}; }

Reshaping compose(const Reshaping& second, const Reshaping& first) {
  if (first.dst != second.src) fail("BaseMismatch", "reshapings do not meet end to end");
  return {first.src, second.dst};
}

namespace {

CrossSection merge_sections(const CrossSection& x, const CrossSection& y) {
  CrossSection out;
  size_t i = 0, j = 0;
  while (i < x.members.size() || j < y.members.size()) {
    if (j >= y.members.size() || (i < x.members.size() && x.members[i] < y.members[j])) {
      out.members.push_back(x.members[i]);
      out.intensity.push_back(x.intensity[i]);
      ++i;
    } else if (i >= x.members.size() || y.members[j] < x.members[i]) {
      out.members.push_back(y.members[j]);
      out.intensity.push_back(y.intensity[j]);
      ++j;
    } else {
      out.members.push_back(x.members[i]);
      out.intensity.push_back(std::max(x.intensity[i], y.intensity[j]));
      ++i;
      ++j;
    }
  }
  return out;
}

void push_foot(std::vector<ThickPoint>& feet, const ThickPoint& f) {
  for (const ThickPoint& g : feet)
    if (g == f) return;
  feet.push_back(f);
}

}  // namespace

Tower tensor(const Tower& t, const Tower& t2) {
  if (t.is_empty()) return t2;
  if (t2.is_empty()) return t;
  Tower out;
  for (const ThickPoint& f : t.feet) push_foot(out.feet, f);
  for (const ThickPoint& f : t2.feet) push_foot(out.feet, f);
  size_t len = std::max(t.sections.size(), t2.sections.size());
  for (size_t i = 0; i < len; ++i) {
    const CrossSection& a = t.sections[std::min(i, t.sections.size() - 1)];
    const CrossSection& b = t2.sections[std::min(i, t2.sections.size() - 1)];
    out.sections.push_back(merge_sections(a, b));
  }
  return out;
}

Tower delta_tower(const InfoSpace& space, double epsilon, const Tower& t) {
  if (t.is_empty()) return t;
  Tower out;
  for (const ThickPoint& f : t.feet) push_foot(out.feet, delta_point(space, epsilon, f));
  for (size_t i = 0; i < t.sections.size(); ++i) {
    if (i + 1 == t.sections.size()) {
      out.sections.push_back(t.sections[i]);
      break;
    }
    const CrossSection& s = t.sections[i];
    CrossSection grown;
    grown.members = delta_set(space, epsilon, s.members);
    grown.intensity.assign(grown.members.size(), 0.0);
    for (size_t k = 0; k < s.members.size(); ++k)
      for (AtomId c : ball(space, s.members[k], epsilon)) {
        auto it = std::lower_bound(grown.members.begin(), grown.members.end(), c);
        size_t idx = it - grown.members.begin();
        grown.intensity[idx] = std::max(grown.intensity[idx], s.intensity[k]);
      }
    out.sections.push_back(std::move(grown));
  }
  return out;
}

FinGroupoid TowerGroupoid::to_groupoid() const {
  std::vector<std::string> labels;
  for (size_t i = 0; i < towers.size(); ++i) labels.push_back("t" + std::to_string(i));
  return codiscrete_groupoid(std::move(labels));
}

TowerGroupoid kay(const InfoSpace& space, double epsilon, const ThickPoint& u,
                  const std::vector<Tower>& generators) {
  TowerGroupoid k;
  k.feet.push_back(u);
  k.towers.push_back(canonical_tower(space, epsilon, u));
  for (const Tower& g : generators) {
    if (g.feet.size() != 1 || !(g.feet[0] == u))
      fail("BaseMismatch", "generator does not stand on the groupoid's foot");
    if (std::find(k.towers.begin(), k.towers.end(), g) == k.towers.end()) k.towers.push_back(g);
  }
  return k;
}

TowerGroupoid unit_groupoid() {
  TowerGroupoid k;
  k.towers.push_back(empty_tower());
  return k;
}

TowerGroupoid kay_sum(const TowerGroupoid& ka, const TowerGroupoid& kb) {
  TowerGroupoid out;
  for (const ThickPoint& f : ka.feet) push_foot(out.feet, f);
  for (const ThickPoint& f : kb.feet) push_foot(out.feet, f);
  for (const Tower& a : ka.towers)
    for (const Tower& b : kb.towers) {
      Tower m = tensor(a, b);
      if (std::find(out.towers.begin(), out.towers.end(), m) == out.towers.end())
        out.towers.push_back(std::move(m));
    }
  return out;
}

MultiTowerClass representative_class(const Tower& target, int count, std::mt19937_64& rng) {
  MultiTowerClass cls;
  cls.target = target;
  if (target.is_empty() || target.sections.size() < 2) return cls;
  int q = static_cast<int>(target.feet.size());
  int m = static_cast<int>(target.sections.size()) - 1;

  // first index at which each atom enters the chain
  std::map<AtomId, int> first_index;
  std::map<AtomId, std::vector<double>> profile;  // intensity per section once present
  for (int j = 0; j <= m; ++j)
    for (size_t k = 0; k < target.sections[j].members.size(); ++k) {
      AtomId x = target.sections[j].members[k];
      if (!first_index.count(x)) first_index[x] = j;
      profile[x].push_back(target.sections[j].intensity[k]);
    }

  for (int rep = 0; rep < count; ++rep) {
    // claims[i][x]: section index at which component i picks up x
    std::vector<std::map<AtomId, int>> claims(q);
    bool feasible = true;
    for (const auto& [x, fx] : first_index) {
      std::vector<int> eligible;
      for (int i = 0; i < q; ++i) {
        bool in_foot = set_contains(target.feet[i].members, x);
        if (in_foot) claims[i][x] = 0;
        if (fx == 0 ? in_foot : true) eligible.push_back(i);
      }
      if (eligible.empty()) {
        feasible = false;
        break;
      }
      int carrier = eligible[rng() % eligible.size()];
      if (!claims[carrier].count(x)) claims[carrier][x] = fx;
      // other components may optionally pick the atom up later
      for (int i = 0; i < q; ++i) {
        if (claims[i].count(x)) continue;
        if (rng() & 1)
          claims[i][x] = std::max(1, fx) + static_cast<int>(rng() % (m - std::max(1, fx) + 1));
        else
          claims[i][x] = m;  // only at the top, where every tower is full
      }
    }
    if (!feasible) continue;

    std::vector<Tower> tuple;
    for (int i = 0; i < q; ++i) {
      Tower ti;
      ti.feet.push_back(target.feet[i]);
      for (int j = 0; j <= m; ++j) {
        CrossSection s;
        for (const auto& [x, at] : claims[i]) {
          if (at > j) continue;
          s.members.push_back(x);
          s.intensity.push_back(profile[x][j - first_index[x]]);
        }
        ti.sections.push_back(std::move(s));
      }
      tuple.push_back(std::move(ti));
    }
    cls.representatives.push_back(std::move(tuple));
  }
  return cls;
}

Tower random_tower(const InfoSpace& space, const ThickPoint& u, std::mt19937_64& rng) {
  Tower t;
  t.feet.push_back(u);
  AtomSet cur = u.members;
  std::vector<AtomSet> chain{cur};
  int extra = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < extra; ++k) {
    AtomSet next = cur;
    for (AtomId a : set_difference_of(space.all_atoms(), cur))
      if (rng() & 1) next.push_back(a);
    set_normalize(next);
    chain.push_back(next);
    cur = next;
  }
  chain.push_back(space.all_atoms());
  int m = static_cast<int>(chain.size()) - 1;

  std::map<AtomId, int> first_index;
  for (int j = 0; j <= m; ++j)
    for (AtomId x : chain[j])
      if (!first_index.count(x)) first_index[x] = j;
  std::map<AtomId, double> start;
  for (const auto& [x, fx] : first_index)
    start[x] = (1.0 + static_cast<double>(rng() % 1000)) / 1000.0;

  for (int j = 0; j <= m; ++j) {
    CrossSection s;
    s.members = chain[j];
    for (AtomId x : chain[j]) {
      int fx = first_index[x];
      double v;
      if (j == m)
        v = 1.0;
      else if (fx == m)
        v = 1.0;
      else {
        double u0 = start[x];
        v = u0 + (1.0 - u0) * (static_cast<double>(j - fx) / static_cast<double>(m - fx));
      }
      s.intensity.push_back(v);
    }
    t.sections.push_back(std::move(s));
  }
  return t;
}

nlohmann::json tower_to_json(const InfoSpace& space, const Tower& t) {
  nlohmann::json j;
  auto& feet = j["feet"] = nlohmann::json::array();
  for (const ThickPoint& f : t.feet) feet.push_back(thick_point_to_json(space, f));
  auto& secs = j["sections"] = nlohmann::json::array();
  for (const CrossSection& s : t.sections) {
    nlohmann::json sj;
    auto& mem = sj["members"] = nlohmann::json::array();
    for (AtomId a : s.members) mem.push_back(space.name(a));
    auto& in = sj["intensity"] = nlohmann::json::object();
    for (size_t k = 0; k < s.members.size(); ++k) in[space.name(s.members[k])] = s.intensity[k];
    secs.push_back(std::move(sj));
  }
  return j;
}

namespace {

std::string section_label(const InfoSpace& space, const CrossSection& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.members.size(); ++i)
    out += (i ? "," : "") + space.name(s.members[i]);
  return out + "}";
}

}  // namespace

std::string towers_to_dot(const InfoSpace& space, const std::vector<Tower>& ts) {
  std::ostringstream os;
  os << "digraph towers {\n  rankdir=BT;\n";
  for (size_t t = 0; t < ts.size(); ++t) {
    os << "  subgraph cluster_t" << t << " {\n    label=\"t" << t << "\";\n";
    for (size_t s = 0; s < ts[t].sections.size(); ++s)
      os << "    t" << t << "_s" << s << " [label=\"" << section_label(space, ts[t].sections[s])
         << "\"];\n";
    os << "  }\n";
    for (size_t s = 0; s + 1 < ts[t].sections.size(); ++s)
      os << "  t" << t << "_s" << s << " -> t" << t << "_s" << s + 1 << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fluidcat
