#include "fluidcat/natural_delta.hpp"

#include <cmath>

namespace fluidcat {

Reconstruction identity_labeling(const InfoSpace& space) {
  return {space.atoms};
}

bool blob_fields_equal(const Blob& x, const Blob& y) {
  return x.core == y.core && x.level == y.level && x.labels == y.labels;
}

Blob rec_point(const InfoSpace& space, const ThickPoint& tp, const Reconstruction& r) {
  if (r.label.size() != space.atoms.size())
    fail("UnlabeledAtom", "labeling does not cover the space");
  Blob b;
  b.core = tp.core;
  b.level = tp.level;
  b.source = tp;
  for (size_t i = 0; i < tp.members.size(); ++i) {
    AtomId a = tp.members[i];
    if (!space.has(a)) fail("UnknownAtom", "thick point contains an atom outside the space");
    const std::string& lab = r.label[a];
    if (lab.empty()) fail("UnlabeledAtom", "atom '" + space.name(a) + "' has no label");
    auto [it, fresh] = b.labels.try_emplace(lab, LabelInfo{tp.degrees[i], 1});
    if (!fresh) {
      it->second.min_degree = std::min(it->second.min_degree, tp.degrees[i]);
      ++it->second.multiplicity;
    }
  }
  return b;
}

Blob blob_thicken(const InfoSpace& space, double epsilon, const Blob& b, const Reconstruction& r) {
  return rec_point(space, delta_point(space, epsilon, b.source), r);
}

namespace {

std::string describe_diff(const Blob& expect, const Blob& got) {
  for (const auto& [lab, info] : expect.labels) {
    auto it = got.labels.find(lab);
    if (it == got.labels.end()) return "label '" + lab + "' missing";
    if (!(it->second == info))
      return "label '" + lab + "': expected min_degree " + std::to_string(info.min_degree) +
             " multiplicity " + std::to_string(info.multiplicity) + ", got " +
             std::to_string(it->second.min_degree) + "/" + std::to_string(it->second.multiplicity);
  }
  for (const auto& [lab, info] : got.labels)
    if (!expect.labels.count(lab)) return "unexpected label '" + lab + "'";
  return "blob metadata differs";
}

}  // namespace

std::vector<RecMismatch> check_rec_square(const InfoSpace& space, const DirectedSystem& sys,
                                          const Reconstruction& r) {
  std::vector<RecMismatch> out;
  for (int a = 0; a < space.size(); ++a)
    for (int p = 1; p < sys.max_level; ++p) {
      Blob upper = rec_point(space, sys.point(a, p + 1), r);
      Blob lower = blob_thicken(space, sys.epsilon, rec_point(space, sys.point(a, p), r), r);
      if (!blob_fields_equal(upper, lower))
        out.push_back({space.name(a), p, describe_diff(upper, lower)});
    }
  return out;
}

std::vector<RecMismatch> check_blob_documents(const InfoSpace& space, const DirectedSystem& sys,
                                              const Reconstruction& r,
                                              const nlohmann::json& blob_docs) {
  std::vector<RecMismatch> out;
  if (!blob_docs.is_array()) fail("MalformedDocument", "blob documents must form an array");
  for (const auto& doc : blob_docs) {
    if (!doc.is_object() || !doc.contains("core") || !doc.contains("level") ||
        !doc.contains("labels"))
      fail("MalformedDocument", "blob document lacks core/level/labels");
    AtomId core = space.index_of(doc.at("core").get<std::string>());
    int level = doc.at("level").get<int>();
    Blob stored;
    stored.core = core;
    stored.level = level;
    for (auto it = doc.at("labels").begin(); it != doc.at("labels").end(); ++it)
      stored.labels[it.key()] = {it.value().at("min_degree").get<int>(),
                                 it.value().at("multiplicity").get<int>()};
    Blob expect = rec_point(space, sys.point(core, level), r);
    if (!blob_fields_equal(expect, stored))
      out.push_back({space.name(core), level, describe_diff(expect, stored)});
  }
  return out;
}

nlohmann::json blob_to_json(const InfoSpace& space, const Blob& b) {
  nlohmann::json j;
  j["core"] = space.name(b.core);
  j["level"] = b.level;
  auto& labels = j["labels"] = nlohmann::json::object();
  for (const auto& [lab, info] : b.labels)
    labels[lab] = {{"min_degree", info.min_degree}, {"multiplicity", info.multiplicity}};
  return j;
}

double WaveFunction::prob_of(AtomId a) const {
  auto it = std::lower_bound(support.begin(), support.end(), a);
  if (it == support.end() || *it != a) fail("UnknownAtom", "probability query for a non-member");
  return prob[it - support.begin()];
}

WaveFunction wavefn(const ThickPoint& tp, double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0))
    fail("LambdaOutOfRange", "decay parameter must lie strictly between 0 and 1");
  WaveFunction w;
  w.lambda = lambda;
  w.support = tp.members;
  double z = 0.0;
  w.prob.reserve(tp.members.size());
  for (int d : tp.degrees) {
    double weight = std::pow(lambda, d);
    w.prob.push_back(weight);
    z += weight;
  }
  for (double& p : w.prob) p /= z;
  return w;
}

nlohmann::json wavefn_to_json(const InfoSpace& space, const WaveFunction& w) {
  nlohmann::json j;
  j["lambda"] = w.lambda;
  auto& probs = j["prob"] = nlohmann::json::object();
  for (size_t i = 0; i < w.support.size(); ++i) probs[space.name(w.support[i])] = w.prob[i];
  return j;
}

}  // namespace fluidcat
