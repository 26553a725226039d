#include "fluidcat/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

namespace fluidcat {

namespace {

void absorb(CheckSuite& suite, const std::vector<LawViolation>& vs, const std::string& where) {
  for (const LawViolation& v : vs)
    suite.failures.push_back({v.law, where.empty() ? v.detail : where + ": " + v.detail});
}

void seal(CheckReport& report, CheckSuite&& suite) {
  suite.passed = suite.failures.empty();
  report.suites.push_back(std::move(suite));
}

FinCategory corrupted_table_copy(const FinCategory& c) {
  std::vector<std::array<int, 3>> comps;
  for (int f = 0; f < c.n_mors(); ++f)
    for (int g = 0; g < c.n_mors(); ++g)
      if (c.mors[f].dst == c.mors[g].src) comps.push_back({g, f, c.compose(g, f)});
  for (auto& entry : comps)
    if (c.mors[entry[0]].src != c.mors[entry[0]].dst ||
        c.mors[entry[1]].src != c.mors[entry[1]].dst) {
      entry[2] = (entry[2] + 1) % c.n_mors();
      break;
    }
  return table_category(c.objects, c.mors, c.ident, comps);
}

std::string tower_tag(size_t i) { return "tower " + std::to_string(i); }

}  // namespace

CheckReport run_checks(const InfoSpace& space, const CheckOptions& opts) {
  if (opts.levels < 1) fail("ZeroLevel", "checks need at least one thickening level");
  if (!opts.inject_fault.empty() && opts.inject_fault != "category-table")
    fail("MalformedDocument", "unknown fault '" + opts.inject_fault + "'");

  CheckReport report;
  DirectedSystem sys = build_system(space, opts.epsilon, opts.levels);

  {
    CheckSuite suite;
    suite.name = "category-laws";
    for (int p = 0; p <= sys.max_level; ++p)
      absorb(suite, validate_category(sys.levels[p].cat), "level " + std::to_string(p));
    if (opts.inject_fault == "category-table")
      absorb(suite, validate_category(corrupted_table_copy(sys.levels[1].cat)), "injected table");
    seal(report, std::move(suite));
  }

  {
    CheckSuite suite;
    suite.name = "delta-functor-laws";
    for (int p = 0; p < sys.max_level; ++p) {
      const ThickCategory& cur = sys.levels[p];
      const ThickCategory& next = sys.levels[p + 1];
      std::string at = "level " + std::to_string(p);
      for (int a = 0; a < space.size(); ++a) {
        ThickPoint expect = delta_point(space, sys.epsilon, cur.points[a]);
        if (!(expect == next.points[a]))
          suite.failures.push_back(
              {"object-thickening", at + ": point '" + space.name(a) + "' does not thicken"});
        if (!set_is_subset(cur.points[a].members, next.points[a].members))
          suite.failures.push_back(
              {"monotone-members", at + ": point '" + space.name(a) + "' loses members"});
        if (delta_on_morphism(sys, p, cur.cat.ident[a]) != next.cat.ident[a])
          suite.failures.push_back(
              {"identity-preservation", at + ": identity of '" + space.name(a) + "'"});
      }
      for (int f = 0; f < cur.cat.n_mors(); ++f)
        for (int g = 0; g < cur.cat.n_mors(); ++g) {
          if (cur.cat.mors[f].dst != cur.cat.mors[g].src) continue;
          int gf = cur.cat.compose(g, f);
          int image = next.cat.compose(delta_on_morphism(sys, p, g), delta_on_morphism(sys, p, f));
          if (gf < 0 || delta_on_morphism(sys, p, gf) != image)
            suite.failures.push_back(
                {"composition-preservation",
                 at + ": '" + cur.cat.mors[g].label + "' after '" + cur.cat.mors[f].label + "'"});
        }
    }
    seal(report, std::move(suite));
  }

  {
    CheckSuite suite;
    suite.name = "strata-partition";
    for (int p = 1; p <= sys.max_level; ++p)
      for (int a = 0; a < space.size(); ++a) {
        const ThickPoint& tp = sys.levels[p].points[a];
        std::string at = "level " + std::to_string(p) + ", core '" + space.name(a) + "'";
        AtomSet seen;
        for (const AtomSet& cell : strata(tp)) {
          for (AtomId x : cell)
            if (set_contains(seen, x))
              suite.failures.push_back(
                  {"strata-disjoint", at + ": atom '" + space.name(x) + "' in two cells"});
          seen = set_union_of(seen, cell);
        }
        if (seen != tp.members)
          suite.failures.push_back({"strata-cover", at + ": cells do not exhaust the members"});
        auto cells = strata(tp);
        for (size_t i = 0; i < tp.members.size(); ++i) {
          int d = tp.degrees[i];
          if (d >= static_cast<int>(cells.size()) || !set_contains(cells[d], tp.members[i]))
            suite.failures.push_back(
                {"strata-degree", at + ": atom '" + space.name(tp.members[i]) +
                                      "' missing from its degree cell"});
        }
      }
    seal(report, std::move(suite));
  }

  {
    CheckSuite suite;
    suite.name = "colimit-oracle";
    std::vector<AtomSet> comps = components(space, opts.epsilon);
    for (int a = 0; a < space.size(); ++a) {
      AtomSet mine;
      for (const AtomSet& c : comps)
        if (set_contains(c, a)) mine = c;
      if (colimit(space, opts.epsilon, a) != mine)
        suite.failures.push_back(
            {"colimit-vs-component",
             "iterated thickening of '" + space.name(a) + "' misses its component"});
    }
    seal(report, std::move(suite));
  }

  std::mt19937_64 rng(opts.seed);
  std::vector<Tower> pool;
  for (int a = 0; a < std::min(space.size(), 4); ++a)
    pool.push_back(canonical_tower(space, opts.epsilon, sys.levels[1].points[a]));
  for (int k = 0; k < 2; ++k) {
    int a = static_cast<int>(rng() % space.size());
    pool.push_back(random_tower(space, sys.levels[1].points[a], rng));
  }

  {
    CheckSuite suite;
    suite.name = "monoidal-laws";
    Tower unit = empty_tower();
    for (size_t i = 0; i < pool.size(); ++i) {
      if (!(tensor(unit, pool[i]) == pool[i]))
        suite.failures.push_back({"unit-left", tower_tag(i)});
      if (!(tensor(pool[i], unit) == pool[i]))
        suite.failures.push_back({"unit-right", tower_tag(i)});
      if (!(tensor(pool[i], pool[i]) == pool[i]))
        suite.failures.push_back({"idempotence", tower_tag(i)});
      for (size_t j = 0; j < pool.size(); ++j) {
        Tower ij = tensor(pool[i], pool[j]);
        Tower ji = tensor(pool[j], pool[i]);
        if (ij.sections != ji.sections)
          suite.failures.push_back({"symmetry", tower_tag(i) + " with " + tower_tag(j)});
        std::vector<ThickPoint> fa = ij.feet, fb = ji.feet;
        auto by_core = [](const ThickPoint& x, const ThickPoint& y) {
          return std::tie(x.core, x.level, x.members) < std::tie(y.core, y.level, y.members);
        };
        std::sort(fa.begin(), fa.end(), by_core);
        std::sort(fb.begin(), fb.end(), by_core);
        if (!(fa == fb))
          suite.failures.push_back({"symmetry-feet", tower_tag(i) + " with " + tower_tag(j)});
        absorb(suite, validate_tower(space, ij), "merge of " + tower_tag(i) + "," + tower_tag(j));
        for (size_t k = 0; k < pool.size(); ++k)
          if (!(tensor(tensor(pool[i], pool[j]), pool[k]) ==
                tensor(pool[i], tensor(pool[j], pool[k]))))
            suite.failures.push_back(
                {"associativity", tower_tag(i) + "," + tower_tag(j) + "," + tower_tag(k)});
      }
    }
    seal(report, std::move(suite));
  }

  {
    CheckSuite suite;
    suite.name = "delta-tensor-distributivity";
    for (size_t i = 0; i < pool.size(); ++i)
      for (size_t j = 0; j < pool.size(); ++j)
        if (!(delta_tower(space, opts.epsilon, tensor(pool[i], pool[j])) ==
              tensor(delta_tower(space, opts.epsilon, pool[i]),
                     delta_tower(space, opts.epsilon, pool[j]))))
          suite.failures.push_back({"delta-tensor", tower_tag(i) + " with " + tower_tag(j)});
    seal(report, std::move(suite));
  }

  TowerBundle bundle = build_bundle(build_chi_pq(space, sys, 1, opts.arity));

  {
    CheckSuite suite;
    suite.name = "cofibration";
    ChiReport cr = validate_chi(bundle.data.chi);
    absorb(suite, cr.violations, "");
    absorb(suite, check_cofibered(bundle.elements), "");
    seal(report, std::move(suite));
  }

  {
    CheckSuite suite;
    suite.name = "duality-roundtrip";
    absorb(suite, duality_roundtrip(space, sys, bundle), "");
    seal(report, std::move(suite));
  }

  {
    CheckSuite suite;
    suite.name = "wavefn-normalization";
    for (int p = 1; p <= sys.max_level; ++p)
      for (int a = 0; a < space.size(); ++a) {
        const ThickPoint& tp = sys.levels[p].points[a];
        WaveFunction w = wavefn(tp, opts.lambda);
        std::string at = "level " + std::to_string(p) + ", core '" + space.name(a) + "'";
        double sum = 0.0;
        for (double v : w.prob) sum += v;
        if (std::abs(sum - 1.0) > 1e-12)
          suite.failures.push_back({"normalization", at + ": total " + std::to_string(sum)});
        for (double v : w.prob)
          if (!(v > 0.0)) suite.failures.push_back({"positivity", at});
        for (size_t i = 0; i < w.support.size(); ++i)
          for (size_t j = 0; j < w.support.size(); ++j) {
            int di = tp.degree_of(w.support[i]), dj = tp.degree_of(w.support[j]);
            if (di < dj && !(w.prob[i] > w.prob[j]))
              suite.failures.push_back({"degree-monotone", at});
            if (di == dj && w.prob[i] != w.prob[j])
              suite.failures.push_back({"degree-equal", at});
          }
      }
    seal(report, std::move(suite));
  }

  return report;
}

nlohmann::json check_report_to_json(const CheckReport& report) {
  nlohmann::json j;
  j["passed"] = report.all_passed();
  auto& suites = j["suites"] = nlohmann::json::array();
  for (const CheckSuite& s : report.suites) {
    nlohmann::json sj;
    sj["name"] = s.name;
    sj["passed"] = s.passed;
    auto& fs = sj["failures"] = nlohmann::json::array();
    for (const CheckFailure& f : s.failures)
      fs.push_back({{"law", f.law}, {"counterexample", f.counterexample}});
    suites.push_back(std::move(sj));
  }
  return j;
}

}  // namespace fluidcat
