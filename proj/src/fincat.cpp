#include "fluidcat/fincat.hpp"

#include <array>
#include <algorithm>
#include <sstream>

namespace fluidcat {

std::vector<std::vector<int>> FinCategory::mors_by_src() const {
  std::vector<std::vector<int>> out(objects.size());
  for (int m = 0; m < n_mors(); ++m) out[mors[m].src].push_back(m);
  return out;
}

std::vector<std::vector<int>> FinCategory::mors_by_dst() const {
  std::vector<std::vector<int>> out(objects.size());
  for (int m = 0; m < n_mors(); ++m) out[mors[m].dst].push_back(m);
  return out;
}

std::vector<int> FinCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int m = 0; m < n_mors(); ++m)
    if (mors[m].src == a && mors[m].dst == b) out.push_back(m);
  return out;
}

FinCategory codiscrete_category(std::vector<std::string> object_labels,
                                const std::function<std::string(int, int)>& mor_label) {
  FinCategory c;
  int n = static_cast<int>(object_labels.size());
  c.objects = std::move(object_labels);
  c.mors.reserve(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Mor m;
      m.src = u;
      m.dst = v;
      m.label = mor_label ? mor_label(u, v) : c.objects[u] + "->" + c.objects[v];
      c.mors.push_back(std::move(m));
    }
  c.ident.resize(n);
  for (int u = 0; u < n; ++u) c.ident[u] = u * n + u;
  auto mors = std::make_shared<std::vector<Mor>>(c.mors);
  c.comp = [mors, n](int g, int f) -> int {
    if (f < 0 || g < 0 || f >= static_cast<int>(mors->size()) ||
        g >= static_cast<int>(mors->size()))
      return -1;
    if ((*mors)[f].dst != (*mors)[g].src) return -1;
    return (*mors)[f].src * n + (*mors)[g].dst;
  };
  return c;
}

FinGroupoid codiscrete_groupoid(std::vector<std::string> object_labels,
                                const std::function<std::string(int, int)>& mor_label) {
  FinGroupoid g;
  g.cat = codiscrete_category(std::move(object_labels), mor_label);
  int n = g.cat.n_objects();
  g.inverse.resize(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) g.inverse[u * n + v] = v * n + u;
  return g;
}

FinCategory table_category(std::vector<std::string> objects, std::vector<Mor> mors,
                           std::vector<int> ident,
                           const std::vector<std::array<int, 3>>& comps) {
  FinCategory c;
  c.objects = std::move(objects);
  c.mors = std::move(mors);
  c.ident = std::move(ident);
  auto table = std::make_shared<std::map<std::pair<int, int>, int>>();
  for (const auto& t : comps) (*table)[{t[0], t[1]}] = t[2];
  c.comp = [table](int g, int f) -> int {
    auto it = table->find({g, f});
    return it == table->end() ? -1 : it->second;
  };
  return c;
}

namespace {

std::string mor_desc(const FinCategory& c, int m) {
  if (m < 0 || m >= c.n_mors()) return "#" + std::to_string(m);
  return "'" + c.mors[m].label + "'";
}

}  // namespace

std::vector<LawViolation> validate_category(const FinCategory& c) {
  std::vector<LawViolation> out;
  int n = c.n_objects();
  int m = c.n_mors();
  if (static_cast<int>(c.ident.size()) != n) {
    out.push_back({"identity-missing", "identity table size does not match objects"});
    return out;
  }
  for (int i = 0; i < m; ++i)
    if (c.mors[i].src < 0 || c.mors[i].src >= n || c.mors[i].dst < 0 || c.mors[i].dst >= n) {
      out.push_back({"morphism-endpoints", mor_desc(c, i) + " has endpoints outside the object set"});
      return out;
    }
  for (int o = 0; o < n; ++o) {
    int e = c.ident[o];
    if (e < 0 || e >= m || c.mors[e].src != o || c.mors[e].dst != o)
      out.push_back({"identity-missing", "object '" + c.objects[o] + "' lacks a valid identity"});
  }
  if (!out.empty()) return out;

  for (int f = 0; f < m; ++f) {
    int r = c.compose(f, c.ident[c.mors[f].src]);
    if (r != f)
      out.push_back({"identity-law", mor_desc(c, f) + " composed with source identity gives " + mor_desc(c, r)});
    int l = c.compose(c.ident[c.mors[f].dst], f);
    if (l != f)
      out.push_back({"identity-law", "destination identity composed with " + mor_desc(c, f) + " gives " + mor_desc(c, l)});
  }

  auto by_src = c.mors_by_src();
  for (int f = 0; f < m; ++f)
    for (int g : by_src[c.mors[f].dst]) {
      int h = c.compose(g, f);
      if (h < 0) {
        out.push_back({"composition-undefined", mor_desc(c, g) + " after " + mor_desc(c, f) + " is undefined"});
        continue;
      }
      if (h >= m || c.mors[h].src != c.mors[f].src || c.mors[h].dst != c.mors[g].dst)
        out.push_back({"composition-endpoints",
                       mor_desc(c, g) + " after " + mor_desc(c, f) + " = " + mor_desc(c, h) +
                           " has wrong endpoints"});
    }
  if (!out.empty()) return out;

  for (int f = 0; f < m; ++f)
    for (int g : by_src[c.mors[f].dst]) {
      int gf = c.compose(g, f);
      for (int h : by_src[c.mors[g].dst]) {
        int left = c.compose(h, gf);
        int right = c.compose(c.compose(h, g), f);
        if (left != right) {
          out.push_back({"associativity", mor_desc(c, h) + " after " + mor_desc(c, g) + " after " +
                                             mor_desc(c, f) + ": " + mor_desc(c, left) +
                                             " != " + mor_desc(c, right)});
        }
      }
    }
  return out;
}

std::vector<LawViolation> validate_groupoid(const FinGroupoid& g) {
  std::vector<LawViolation> out = validate_category(g.cat);
  if (!out.empty()) return out;
  if (g.inverse.size() != g.cat.mors.size()) {
    out.push_back({"inverse-missing", "inverse table size does not match morphisms"});
    return out;
  }
  for (int f = 0; f < g.cat.n_mors(); ++f) {
    int i = g.inverse[f];
    if (i < 0 || i >= g.cat.n_mors() || g.cat.mors[i].src != g.cat.mors[f].dst ||
        g.cat.mors[i].dst != g.cat.mors[f].src) {
      out.push_back({"inverse-missing", mor_desc(g.cat, f) + " lacks a well-typed inverse"});
      continue;
    }
    if (g.cat.compose(i, f) != g.cat.ident[g.cat.mors[f].src] ||
        g.cat.compose(f, i) != g.cat.ident[g.cat.mors[f].dst])
      out.push_back({"inverse-law", mor_desc(g.cat, f) + " does not cancel with its inverse"});
  }
  return out;
}

bool is_codiscrete(const FinCategory& c) {
  int n = c.n_objects();
  std::vector<int> counts(static_cast<size_t>(n) * n, 0);
  for (const Mor& m : c.mors) ++counts[static_cast<size_t>(m.src) * n + m.dst];
  return std::all_of(counts.begin(), counts.end(), [](int k) { return k == 1; });
}

MicroRev is_micro_reversible(const FinCategory& c, int a, int b) {
  if (a < 0 || a >= c.n_objects() || b < 0 || b >= c.n_objects())
    fail("UnknownObject", "micro-reversibility query outside the object set");
  std::vector<int> connecting = c.hom(a, b);
  if (connecting.empty()) return {false, "NoConnectingMorphism"};
  for (int probe = 0; probe < c.n_objects(); ++probe) {
    std::vector<int> in_a = c.hom(probe, a);
    std::vector<int> in_b = c.hom(probe, b);
    for (int f : connecting) {
      std::vector<int> image;
      for (int u : in_a) {
        int v = c.compose(f, u);
        if (std::find(in_b.begin(), in_b.end(), v) == in_b.end())
          return {false, "PostcompositionNotBijective at probe '" + c.objects[probe] +
                             "' along " + mor_desc(c, f)};
        image.push_back(v);
      }
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      if (image.size() != in_a.size() || image.size() != in_b.size())
        return {false, "PostcompositionNotBijective at probe '" + c.objects[probe] +
                           "' along " + mor_desc(c, f)};
    }
  }
  return {true, ""};
}

std::vector<LawViolation> validate_groupoid_functor(const FinGroupoid& src,
                                                    const FinGroupoid& dst,
                                                    const GroupoidFunctor& f) {
  std::vector<LawViolation> out;
  if (static_cast<int>(f.obj_map.size()) != src.cat.n_objects() ||
      static_cast<int>(f.mor_map.size()) != src.cat.n_mors()) {
    out.push_back({"functor-shape", "object or morphism map has wrong size"});
    return out;
  }
  for (int x : f.obj_map)
    if (x < 0 || x >= dst.cat.n_objects()) {
      out.push_back({"functor-shape", "object map leaves the target groupoid"});
      return out;
    }
  for (int m = 0; m < src.cat.n_mors(); ++m) {
    int fm = f.mor_map[m];
    if (fm < 0 || fm >= dst.cat.n_mors() ||
        dst.cat.mors[fm].src != f.obj_map[src.cat.mors[m].src] ||
        dst.cat.mors[fm].dst != f.obj_map[src.cat.mors[m].dst])
      out.push_back({"functor-endpoints", mor_desc(src.cat, m) + " is not mapped over its endpoints"});
  }
  if (!out.empty()) return out;
  for (int o = 0; o < src.cat.n_objects(); ++o)
    if (f.mor_map[src.cat.ident[o]] != dst.cat.ident[f.obj_map[o]])
      out.push_back({"functor-identity", "identity of '" + src.cat.objects[o] + "' is not preserved"});
  auto by_src = src.cat.mors_by_src();
  for (int m = 0; m < src.cat.n_mors(); ++m)
    for (int g : by_src[src.cat.mors[m].dst]) {
      int gm = src.cat.compose(g, m);
      if (gm < 0) continue;
      if (f.mor_map[gm] != dst.cat.compose(f.mor_map[g], f.mor_map[m]))
        out.push_back({"functor-composition",
                       mor_desc(src.cat, g) + " after " + mor_desc(src.cat, m) + " is not preserved"});
    }
  return out;
}

ChiReport validate_chi(const GroupoidValuedFunctor& chi) {
  ChiReport rep;
  auto& out = rep.violations;
  if (chi.fibers.size() != chi.base.objects.size() || chi.on_mor.size() != chi.base.mors.size()) {
    out.push_back({"functor-shape", "fiber or morphism assignment count does not match the base"});
    return rep;
  }
  for (size_t c = 0; c < chi.fibers.size(); ++c)
    for (auto& v : validate_groupoid(chi.fibers[c]))
      out.push_back({"fiber-" + v.law, "fiber over '" + chi.base.objects[c] + "': " + v.detail});
  if (!out.empty()) return rep;

  std::vector<char> codisc(chi.fibers.size());
  for (size_t c = 0; c < chi.fibers.size(); ++c) codisc[c] = is_codiscrete(chi.fibers[c].cat);

  for (int m = 0; m < chi.base.n_mors(); ++m) {
    const auto& f = chi.base.mors[m];
    for (auto& v :
         validate_groupoid_functor(chi.fibers[f.src], chi.fibers[f.dst], chi.on_mor[m]))
      out.push_back({v.law, "along " + mor_desc(chi.base, m) + ": " + v.detail});
  }
  if (!out.empty()) return rep;

  for (int o = 0; o < chi.base.n_objects(); ++o) {
    const GroupoidFunctor& f = chi.on_mor[chi.base.ident[o]];
    bool strict = true;
    for (int x = 0; x < chi.fibers[o].cat.n_objects(); ++x)
      if (f.obj_map[x] != x) strict = false;
    if (!strict) {
      rep.strict_identities = false;
      if (!codisc[o])
        out.push_back({"functor-identity-law",
                       "identity of '" + chi.base.objects[o] + "' does not act as the identity"});
    }
  }

  auto by_src = chi.base.mors_by_src();
  for (int f = 0; f < chi.base.n_mors(); ++f)
    for (int g : by_src[chi.base.mors[f].dst]) {
      int h = chi.base.compose(g, f);
      if (h < 0) continue;
      bool strict_obj = chi.on_mor[h].obj_map.size() == chi.on_mor[f].obj_map.size();
      if (strict_obj)
        for (size_t x = 0; x < chi.on_mor[f].obj_map.size(); ++x)
          if (chi.on_mor[h].obj_map[x] != chi.on_mor[g].obj_map[chi.on_mor[f].obj_map[x]])
            strict_obj = false;
      bool strict_mor = strict_obj;
      if (strict_mor)
        for (size_t x = 0; x < chi.on_mor[f].mor_map.size(); ++x)
          if (chi.on_mor[h].mor_map[x] != chi.on_mor[g].mor_map[chi.on_mor[f].mor_map[x]])
            strict_mor = false;
      if (!strict_obj || !strict_mor) {
        rep.strict_composites = false;
        if (!codisc[chi.base.mors[g].dst])
          out.push_back({"functor-composition-law",
                         mor_desc(chi.base, g) + " after " + mor_desc(chi.base, f) +
                             " is not assigned the composite functor"});
      }
    }
  return rep;
}

namespace {

struct ElementsImpl {
  GroupoidValuedFunctor chi;
  std::vector<ElemMor> mors;
  std::vector<int> proj_obj;
  std::vector<char> codisc;
  // (base_mor, src elem, dst elem) -> morphism, unique for codiscrete fibers
  std::map<std::array<int, 3>, int> by_endpoints;
  // (base_mor, src elem, dst elem, fiber mor) -> morphism
  std::map<std::array<int, 4>, int> by_full_key;
};

}  // namespace

ElementsCategory category_of_elements(const GroupoidValuedFunctor& chi) {
  ChiReport rep = validate_chi(chi);
  if (!rep.violations.empty())
    fail("FunctorLawViolation", rep.violations.front().law + ": " + rep.violations.front().detail);

  auto impl = std::make_shared<ElementsImpl>();
  impl->chi = chi;
  impl->codisc.resize(chi.fibers.size());
  for (size_t c = 0; c < chi.fibers.size(); ++c)
    impl->codisc[c] = is_codiscrete(chi.fibers[c].cat);

  ElementsCategory e;
  e.base = chi.base;
  e.obj_offset.resize(chi.base.n_objects());
  for (int c = 0; c < chi.base.n_objects(); ++c) {
    e.obj_offset[c] = static_cast<int>(e.elem_objs.size());
    for (int x = 0; x < chi.fibers[c].cat.n_objects(); ++x) {
      e.elem_objs.push_back({c, x});
      e.proj_obj.push_back(c);
      e.cat.objects.push_back("(" + chi.base.objects[c] + "," + chi.fibers[c].cat.objects[x] + ")");
    }
  }

  for (int f = 0; f < chi.base.n_mors(); ++f) {
    int c0 = chi.base.mors[f].src;
    int c1 = chi.base.mors[f].dst;
    const FinGroupoid& fib1 = chi.fibers[c1];
    for (int x = 0; x < chi.fibers[c0].cat.n_objects(); ++x) {
      int fx = chi.on_mor[f].obj_map[x];
      for (int a = 0; a < fib1.cat.n_mors(); ++a) {
        if (fib1.cat.mors[a].src != fx) continue;
        int y = fib1.cat.mors[a].dst;
        ElemMor m;
        m.base_mor = f;
        m.fiber_mor = a;
        m.src = e.obj_index(c0, x);
        m.dst = e.obj_index(c1, y);
        int id = static_cast<int>(e.elem_mors.size());
        e.elem_mors.push_back(m);
        e.proj_mor.push_back(f);
        e.cat.mors.push_back(
            {m.src, m.dst, "(" + chi.base.mors[f].label + "," + fib1.cat.mors[a].label + ")"});
        impl->by_endpoints[{f, m.src, m.dst}] = id;
        impl->by_full_key[{f, m.src, m.dst, a}] = id;
      }
    }
  }

  e.cat.ident.resize(e.elem_objs.size());
  for (size_t o = 0; o < e.elem_objs.size(); ++o) {
    int c = e.elem_objs[o].base_obj;
    int x = e.elem_objs[o].fiber_obj;
    int f0 = chi.base.ident[c];
    int fx = chi.on_mor[f0].obj_map[x];
    if (impl->codisc[c]) {
      e.cat.ident[o] = impl->by_endpoints.at({f0, static_cast<int>(o), static_cast<int>(o)});
    } else {
      if (fx != x) fail("FunctorLawViolation", "identity does not fix a non-codiscrete fiber");
      int alpha = chi.fibers[c].cat.ident[x];
      e.cat.ident[o] = impl->by_full_key.at({f0, static_cast<int>(o), static_cast<int>(o), alpha});
    }
  }

  impl->mors = e.elem_mors;
  impl->proj_obj = e.proj_obj;
  auto weak = impl;
  e.cat.comp = [weak](int g, int f) -> int {
    const auto& im = *weak;
    if (f < 0 || g < 0 || f >= static_cast<int>(im.mors.size()) ||
        g >= static_cast<int>(im.mors.size()))
      return -1;
    const ElemMor& mf = im.mors[f];
    const ElemMor& mg = im.mors[g];
    if (mf.dst != mg.src) return -1;
    int h = im.chi.base.compose(mg.base_mor, mf.base_mor);
    if (h < 0) return -1;
    int c2 = im.proj_obj[mg.dst];
    if (im.codisc[c2]) {
      auto it = im.by_endpoints.find({h, mf.src, mg.dst});
      return it == im.by_endpoints.end() ? -1 : it->second;
    }
    int pushed = im.chi.on_mor[mg.base_mor].mor_map[mf.fiber_mor];
    int gamma = im.chi.fibers[c2].cat.compose(mg.fiber_mor, pushed);
    if (gamma < 0) return -1;
    auto it = im.by_full_key.find({h, mf.src, mg.dst, gamma});
    return it == im.by_full_key.end() ? -1 : it->second;
  };
  return e;
}

std::vector<LawViolation> validate_projection(const ElementsCategory& e) {
  std::vector<LawViolation> out;
  const FinCategory& cat = e.cat;
  const FinCategory& base = e.base;
  if (static_cast<int>(e.proj_obj.size()) != cat.n_objects() ||
      static_cast<int>(e.proj_mor.size()) != cat.n_mors()) {
    out.push_back({"projection-functor", "projection tables do not cover the category"});
    return out;
  }
  for (int o = 0; o < cat.n_objects(); ++o)
    if (e.proj_obj[o] < 0 || e.proj_obj[o] >= base.n_objects())
      out.push_back({"projection-functor", "object projection out of range"});
  for (int m = 0; m < cat.n_mors(); ++m) {
    int pm = e.proj_mor[m];
    if (pm < 0 || pm >= base.n_mors()) {
      out.push_back({"projection-functor", mor_desc(cat, m) + " projects outside the base"});
      continue;
    }
    if (base.mors[pm].src != e.proj_obj[cat.mors[m].src] ||
        base.mors[pm].dst != e.proj_obj[cat.mors[m].dst])
      out.push_back({"projection-functor", mor_desc(cat, m) + " does not project over its endpoints"});
  }
  if (!out.empty()) return out;
  for (int o = 0; o < cat.n_objects(); ++o)
    if (e.proj_mor[cat.ident[o]] != base.ident[e.proj_obj[o]])
      out.push_back({"projection-functor", "identity of '" + cat.objects[o] + "' projects off the base identity"});
  auto by_src = cat.mors_by_src();
  for (int f = 0; f < cat.n_mors(); ++f)
    for (int g : by_src[cat.mors[f].dst]) {
      int h = cat.compose(g, f);
      if (h < 0) {
        out.push_back({"projection-functor", "composite missing above the base"});
        continue;
      }
      if (e.proj_mor[h] != base.compose(e.proj_mor[g], e.proj_mor[f]))
        out.push_back({"projection-functor",
                       mor_desc(cat, g) + " after " + mor_desc(cat, f) + " projects off the base composite"});
    }
  return out;
}

std::vector<LawViolation> check_cofibered(const ElementsCategory& e) {
  std::vector<LawViolation> out = validate_projection(e);
  const FinCategory& cat = e.cat;
  const FinCategory& base = e.base;
  if (!out.empty()) return out;

  // group element morphisms by (source element, base morphism)
  std::map<std::pair<int, int>, std::vector<int>> over;
  for (int m = 0; m < cat.n_mors(); ++m)
    over[{cat.mors[m].src, e.proj_mor[m]}].push_back(m);
  auto lifts_of = [&](int src_elem, int base_mor) -> const std::vector<int>& {
    static const std::vector<int> none;
    auto it = over.find({src_elem, base_mor});
    return it == over.end() ? none : it->second;
  };

  // fibers are groupoids: every morphism over an identity is invertible
  for (int c = 0; c < base.n_objects(); ++c) {
    std::vector<int> fiber_mors;
    for (int m = 0; m < cat.n_mors(); ++m)
      if (e.proj_mor[m] == base.ident[c]) fiber_mors.push_back(m);
    for (int m : fiber_mors) {
      bool invertible = false;
      for (int r : fiber_mors) {
        if (cat.mors[r].src != cat.mors[m].dst || cat.mors[r].dst != cat.mors[m].src) continue;
        if (cat.compose(r, m) == cat.ident[cat.mors[m].src] &&
            cat.compose(m, r) == cat.ident[cat.mors[m].dst]) {
          invertible = true;
          break;
        }
      }
      if (!invertible)
        out.push_back({"fiber-not-groupoid",
                       mor_desc(cat, m) + " over '" + base.objects[c] + "' has no inverse in its fiber"});
    }
  }
  if (!out.empty()) return out;

  // cocartesian lifts, unique up to unique fiber isomorphism
  auto base_by_src = base.mors_by_src();
  for (int f = 0; f < base.n_mors(); ++f) {
    int c0 = base.mors[f].src;
    int c1 = base.mors[f].dst;
    for (int el = 0; el < cat.n_objects(); ++el) {
      if (e.proj_obj[el] != c0) continue;
      const std::vector<int>& candidates = lifts_of(el, f);
      std::vector<int> cocartesian;
      for (int lam : candidates) {
        bool universal = true;
        for (int g : base_by_src[c1]) {
          int h = base.compose(g, f);
          for (int mu : lifts_of(el, h)) {
            int found = 0;
            for (int nu : lifts_of(cat.mors[lam].dst, g))
              if (cat.mors[nu].dst == cat.mors[mu].dst && cat.compose(nu, lam) == mu) ++found;
            if (found != 1) {
              universal = false;
              break;
            }
          }
          if (!universal) break;
        }
        if (universal) cocartesian.push_back(lam);
      }
      if (cocartesian.empty()) {
        out.push_back({"no-cocartesian-lift", "no cocartesian lift of " + mor_desc(base, f) +
                                                  " at element '" + cat.objects[el] + "'"});
        continue;
      }
      for (size_t i = 0; i < cocartesian.size(); ++i)
        for (size_t j = 0; j < cocartesian.size(); ++j) {
          if (i == j) continue;
          int l1 = cocartesian[i], l2 = cocartesian[j];
          int found = 0;
          for (int theta : lifts_of(cat.mors[l1].dst, base.ident[c1]))
            if (cat.mors[theta].dst == cat.mors[l2].dst && cat.compose(theta, l1) == l2) ++found;
          if (found != 1)
            out.push_back({"lift-comparison-not-unique",
                           "cocartesian lifts of " + mor_desc(base, f) + " at '" + cat.objects[el] +
                               "' are not linked by a unique fiber isomorphism"});
        }
    }
  }
  return out;
}

nlohmann::json category_to_json(const FinCategory& c) {
  nlohmann::json j;
  j["objects"] = c.objects;
  auto& ms = j["morphisms"] = nlohmann::json::array();
  for (int m = 0; m < c.n_mors(); ++m)
    ms.push_back({{"id", m}, {"src", c.mors[m].src}, {"dst", c.mors[m].dst}, {"label", c.mors[m].label}});
  j["identities"] = c.ident;
  auto& comp = j["composition"] = nlohmann::json::array();
  auto by_src = c.mors_by_src();
  for (int f = 0; f < c.n_mors(); ++f)
    for (int g : by_src[c.mors[f].dst]) comp.push_back({g, f, c.compose(g, f)});
  return j;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace

std::string category_to_dot(const FinCategory& c, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  for (int o = 0; o < c.n_objects(); ++o)
    os << "  o" << o << " [label=\"" << dot_escape(c.objects[o]) << "\"];\n";
  for (int m = 0; m < c.n_mors(); ++m) {
    if (m == c.ident[c.mors[m].src] && c.mors[m].src == c.mors[m].dst) continue;
    os << "  o" << c.mors[m].src << " -> o" << c.mors[m].dst << " [label=\""
       << dot_escape(c.mors[m].label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fluidcat
