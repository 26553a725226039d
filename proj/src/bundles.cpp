#include "fluidcat/bundles.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace fluidcat {

namespace {

std::vector<Tower> fiber_over(const InfoSpace& space, const DirectedSystem& sys, int p,
                              AtomId core, const TowerGenerators& gens) {
  const ThickPoint& u = sys.levels[p].points[core];
  auto it = gens.find(core);
  TowerGroupoid k = kay(space, sys.epsilon, u, it == gens.end() ? std::vector<Tower>{} : it->second);
  return k.towers;
}

std::vector<int> tuple_digits(int index, int n, int q) {
  std::vector<int> out(q);
  for (int i = q - 1; i >= 0; --i) {
    out[i] = index % n;
    index /= n;
  }
  return out;
}

FinCategory product_base(const InfoSpace& space, const DirectedSystem& sys, int p, int q) {
  const FinCategory& level = sys.levels[p].cat;
  if (q == 1) return level;
  int n = space.size();
  long long total = 1;
  for (int i = 0; i < q; ++i) {
    total *= n;
    // the codiscrete base stores the square of this many morphisms
    if (total > 1024) fail("MalformedDocument", "arity too large for this space");
  }
  int nq = static_cast<int>(total);
  std::vector<std::string> labels(nq);
  for (int t = 0; t < nq; ++t) {
    std::string lab = "(";
    auto digits = tuple_digits(t, n, q);
    for (int i = 0; i < q; ++i) lab += (i ? "," : "") + space.atoms[digits[i]];
    labels[t] = lab + ")";
  }
  return codiscrete_category(labels, [&level, n, q](int u, int v) {
    auto du = tuple_digits(u, n, q);
    auto dv = tuple_digits(v, n, q);
    std::string lab = "(";
    for (int i = 0; i < q; ++i) lab += (i ? "," : "") + level.mors[du[i] * n + dv[i]].label;
    return lab + ")";
  });
}

void finish_chi(ChiData& cd) {
  int n_obj = cd.base.n_objects();
  cd.chi.base = cd.base;
  cd.chi.fibers.clear();
  for (int t = 0; t < n_obj; ++t) {
    std::vector<std::string> labels;
    for (size_t i = 0; i < cd.fiber_towers[t].size(); ++i)
      labels.push_back("t" + std::to_string(i));
    cd.chi.fibers.push_back(codiscrete_groupoid(std::move(labels)));
  }
  cd.chi.on_mor.clear();
  for (int m = 0; m < cd.base.n_mors(); ++m) {
    // every tower is sent to the canonical (first) tower over the target
    const Mor& f = cd.base.mors[m];
    GroupoidFunctor gf;
    gf.obj_map.assign(cd.fiber_towers[f.src].size(), 0);
    gf.mor_map.assign(cd.fiber_towers[f.src].size() * cd.fiber_towers[f.src].size(), 0);
    cd.chi.on_mor.push_back(std::move(gf));
  }
}

}  // namespace

ChiData build_chi_p(const InfoSpace& space, const DirectedSystem& sys, int p,
                    const TowerGenerators& gens) {
  if (p < 0 || p > sys.max_level) fail("LevelExceeded", "level outside the built system");
  for (const auto& [core, _] : gens)
    if (!space.has(core)) fail("UnknownAtom", "generator core outside the space");
  ChiData cd;
  cd.p = p;
  cd.q = 1;
  cd.epsilon = sys.epsilon;
  cd.base = sys.levels[p].cat;
  for (int a = 0; a < space.size(); ++a) {
    cd.core_fibers[a] = fiber_over(space, sys, p, a, gens);
    cd.base_points.push_back({sys.levels[p].points[a]});
    cd.fiber_towers.push_back(cd.core_fibers[a]);
  }
  finish_chi(cd);
  return cd;
}

ChiData build_chi_pq(const InfoSpace& space, const DirectedSystem& sys, int p, int q,
                     const TowerGenerators& gens) {
  if (q < 1) fail("MalformedDocument", "arity must be at least 1");
  if (q == 1) return build_chi_p(space, sys, p, gens);
  if (p < 0 || p > sys.max_level) fail("LevelExceeded", "level outside the built system");
  ChiData cd;
  cd.p = p;
  cd.q = q;
  cd.epsilon = sys.epsilon;
  cd.base = product_base(space, sys, p, q);
  int n = space.size();
  for (int a = 0; a < n; ++a) cd.core_fibers[a] = fiber_over(space, sys, p, a, gens);
  for (int t = 0; t < cd.base.n_objects(); ++t) {
    auto digits = tuple_digits(t, n, q);
    std::vector<ThickPoint> pts;
    for (int d : digits) pts.push_back(sys.levels[p].points[d]);
    cd.base_points.push_back(std::move(pts));
    std::vector<Tower> merged{empty_tower()};
    for (int d : digits) {
      std::vector<Tower> next;
      for (const Tower& acc : merged)
        for (const Tower& comp : cd.core_fibers[d]) {
          Tower m = tensor(acc, comp);
          if (std::find(next.begin(), next.end(), m) == next.end()) next.push_back(std::move(m));
        }
      merged = std::move(next);
    }
    cd.fiber_towers.push_back(std::move(merged));
  }
  finish_chi(cd);
  return cd;
}

TowerBundle build_bundle(const ChiData& data) {
  TowerBundle b;
  b.data = data;
  b.elements = category_of_elements(data.chi);
  return b;
}

DeltaBundleResult delta_bundle(const InfoSpace& space, const DirectedSystem& sys,
                               const TowerBundle& b) {
  int p1 = b.data.p + 1;
  if (p1 > sys.max_level) fail("LevelExceeded", "no level above the bundle in this system");

  TowerGenerators gens;
  for (const auto& [core, towers] : b.data.core_fibers) {
    std::vector<Tower> thick;
    for (const Tower& t : towers) {
      Tower dt = delta_tower(space, sys.epsilon, t);
      if (std::find(thick.begin(), thick.end(), dt) == thick.end()) thick.push_back(std::move(dt));
    }
    gens[core] = std::move(thick);
  }

  DeltaBundleResult out;
  out.bundle = build_bundle(build_chi_pq(space, sys, p1, b.data.q, gens));
  const TowerBundle& nb = out.bundle;

  out.object_map.resize(b.elements.elem_objs.size());
  for (size_t o = 0; o < b.elements.elem_objs.size(); ++o) {
    int t = b.elements.elem_objs[o].base_obj;
    const Tower& old_tower = b.data.fiber_towers[t][b.elements.elem_objs[o].fiber_obj];
    Tower dt = delta_tower(space, sys.epsilon, old_tower);
    const auto& fib = nb.data.fiber_towers[t];
    auto it = std::find(fib.begin(), fib.end(), dt);
    if (it == fib.end())
      fail("FunctorLawViolation", "thickened tower missing from the fiber one level up");
    out.object_map[o] = nb.elements.obj_index(t, static_cast<int>(it - fib.begin()));
  }

  std::map<std::array<int, 3>, int> by_endpoints;
  for (size_t m = 0; m < nb.elements.elem_mors.size(); ++m)
    by_endpoints[{nb.elements.elem_mors[m].base_mor, nb.elements.elem_mors[m].src,
                  nb.elements.elem_mors[m].dst}] = static_cast<int>(m);

  out.morphism_map.resize(b.elements.elem_mors.size());
  for (size_t m = 0; m < b.elements.elem_mors.size(); ++m) {
    const ElemMor& em = b.elements.elem_mors[m];
    int src2 = out.object_map[em.src];
    int dst2 = out.object_map[em.dst];
    // the base is codiscrete, so the morphism index is determined by endpoints
    int base2 = nb.elements.proj_obj[src2] * nb.data.base.n_objects() + nb.elements.proj_obj[dst2];
    auto it = by_endpoints.find({base2, src2, dst2});
    if (it == by_endpoints.end())
      fail("FunctorLawViolation", "no morphism above the thickened pair");
    out.morphism_map[m] = it->second;
  }
  return out;
}

std::vector<Thread> threads(const TowerBundle& b, int base_start,
                            const std::vector<int>& base_path) {
  const FinCategory& base = b.elements.base;
  if (base_start < 0 || base_start >= base.n_objects())
    fail("UnknownObject", "path start outside the base");
  int at = base_start;
  for (int i = 0; i < static_cast<int>(base_path.size()); ++i) {
    int m = base_path[i];
    if (m < 0 || m >= base.n_mors()) fail("UnknownObject", "path morphism outside the base");
    if (base.mors[m].src != at)
      fail("NonComposablePath", "step " + std::to_string(i) + " does not start where the previous ended");
    at = base.mors[m].dst;
  }

  std::vector<Thread> out;
  for (int e0 = 0; e0 < b.elements.cat.n_objects(); ++e0) {
    if (b.elements.proj_obj[e0] != base_start) continue;
    std::vector<std::pair<int, std::vector<int>>> frontier{{e0, {}}};
    for (int step : base_path) {
      std::vector<std::pair<int, std::vector<int>>> next;
      for (const auto& [cur, lift] : frontier)
        for (int m = 0; m < b.elements.cat.n_mors(); ++m) {
          if (b.elements.proj_mor[m] != step || b.elements.cat.mors[m].src != cur) continue;
          auto extended = lift;
          extended.push_back(m);
          next.push_back({b.elements.cat.mors[m].dst, std::move(extended)});
        }
      frontier = std::move(next);
    }
    for (auto& fl : frontier) out.push_back({base_start, base_path, e0, std::move(fl.second)});
  }
  return out;
}

std::vector<LawViolation> kay_cover_check(const InfoSpace& space, const TowerBundle& b) {
  std::vector<LawViolation> out;
  AtomSet covered;
  for (const auto& fiber : b.data.fiber_towers)
    for (const Tower& t : fiber) {
      if (t.sections.empty()) continue;
      covered = set_union_of(covered, t.top().members);
    }
  for (AtomId a : set_difference_of(space.all_atoms(), covered))
    out.push_back({"kay-cover", "atom '" + space.name(a) + "' is not reached by any tower top"});
  return out;
}

std::vector<LawViolation> duality_roundtrip(const InfoSpace& space, const DirectedSystem& sys,
                                            const TowerBundle& b) {
  std::vector<LawViolation> out = validate_projection(b.elements);
  if (!out.empty()) return out;
  const FinCategory& base = b.elements.base;

  std::vector<char> obj_hit(base.n_objects(), 0);
  for (int po : b.elements.proj_obj) obj_hit[po] = 1;
  for (int o = 0; o < base.n_objects(); ++o)
    if (!obj_hit[o])
      out.push_back({"duality-projection", "base object '" + base.objects[o] + "' is not in the image"});
  std::vector<char> mor_hit(base.n_mors(), 0);
  for (int pm : b.elements.proj_mor) mor_hit[pm] = 1;
  for (int m = 0; m < base.n_mors(); ++m)
    if (!mor_hit[m])
      out.push_back({"duality-projection", "base morphism '" + base.mors[m].label + "' is not in the image"});

  FinCategory fresh = product_base(space, sys, b.data.p, b.data.q);
  if (fresh.n_objects() != base.n_objects() || fresh.n_mors() != base.n_mors()) {
    out.push_back({"duality-base", "recovered base has the wrong shape"});
    return out;
  }
  for (int o = 0; o < base.n_objects(); ++o)
    if (fresh.objects[o] != base.objects[o])
      out.push_back({"duality-base", "object '" + base.objects[o] + "' does not match the level category"});
  std::map<std::pair<int, int>, int> hom_base, hom_fresh;
  for (const Mor& m : base.mors) ++hom_base[{m.src, m.dst}];
  for (const Mor& m : fresh.mors) ++hom_fresh[{m.src, m.dst}];
  if (hom_base != hom_fresh) out.push_back({"duality-base", "hom sets differ from the level category"});
  for (int f = 0; f < base.n_mors(); ++f)
    if (base.mors[f].src != fresh.mors[f].src || base.mors[f].dst != fresh.mors[f].dst)
      out.push_back({"duality-base", "morphism order differs from the level category"});

  // fibers: codiscrete of the recorded size over every base object
  for (int o = 0; o < base.n_objects(); ++o) {
    int objs = 0;
    for (int eo = 0; eo < b.elements.cat.n_objects(); ++eo)
      if (b.elements.proj_obj[eo] == o) ++objs;
    if (objs != static_cast<int>(b.data.fiber_towers[o].size()))
      out.push_back({"duality-fiber", "fiber size mismatch over '" + base.objects[o] + "'"});
    int fmors = 0;
    for (int em = 0; em < b.elements.cat.n_mors(); ++em)
      if (b.elements.proj_mor[em] == base.ident[o]) ++fmors;
    if (fmors != objs * objs)
      out.push_back({"duality-fiber", "fiber over '" + base.objects[o] + "' is not codiscrete"});
  }
  return out;
}

nlohmann::json bundle_report(const InfoSpace& space, const TowerBundle& b) {
  nlohmann::json j;
  j["p"] = b.data.p;
  j["q"] = b.data.q;
  j["epsilon"] = b.data.epsilon;
  j["base"] = {{"objects", b.data.base.n_objects()}, {"morphisms", b.data.base.n_mors()}};
  j["elements"] = {{"objects", b.elements.cat.n_objects()}, {"morphisms", b.elements.cat.n_mors()}};
  auto& fibers = j["fibers"] = nlohmann::json::array();
  for (int t = 0; t < b.data.base.n_objects(); ++t) {
    nlohmann::json fj;
    fj["base"] = b.data.base.objects[t];
    auto& towers = fj["towers"] = nlohmann::json::array();
    for (size_t i = 0; i < b.data.fiber_towers[t].size(); ++i) {
      nlohmann::json tj = tower_to_json(space, b.data.fiber_towers[t][i]);
      tj["id"] = "t" + std::to_string(i);
      towers.push_back(std::move(tj));
    }
    fibers.push_back(std::move(fj));
  }
  j["projection"] = {{"objects", b.elements.proj_obj}, {"morphisms", b.elements.proj_mor}};
  return j;
}

std::string bundle_to_dot(const InfoSpace& space, const TowerBundle& b) {
  (void)space;
  std::ostringstream os;
  os << "digraph bundle {\n  rankdir=BT;\n";
  for (int t = 0; t < b.data.base.n_objects(); ++t) {
    os << "  subgraph cluster_b" << t << " {\n    label=\"" << b.data.base.objects[t] << "\";\n";
    os << "    b" << t << " [shape=box,label=\"" << b.data.base.objects[t] << "\"];\n";
    for (size_t i = 0; i < b.data.fiber_towers[t].size(); ++i) {
      os << "    b" << t << "_t" << i << " [label=\"t" << i << "\"];\n";
      os << "    b" << t << " -> b" << t << "_t" << i << " [style=dashed,dir=back];\n";
    }
    os << "  }\n";
  }
  for (int m = 0; m < b.data.base.n_mors(); ++m) {
    const Mor& mor = b.data.base.mors[m];
    if (mor.src == mor.dst) continue;
    os << "  b" << mor.src << " -> b" << mor.dst << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fluidcat
