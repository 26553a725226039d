#pragma once
// Label-space reconstructions of thick points (blobs) and the geometric wave
// function a thick point induces over its members.

#include <map>

#include <json.hpp>

#include "fluidcat/delta.hpp"

namespace fluidcat {

struct Reconstruction {
  std::vector<std::string> label;  // per atom; empty string means unlabeled
};

Reconstruction identity_labeling(const InfoSpace& space);

struct LabelInfo {
  int min_degree = 0;
  int multiplicity = 0;
  bool operator==(const LabelInfo&) const = default;
};

struct Blob {
  AtomId core = -1;
  int level = 0;
  ThickPoint source;  // retained so blobs can be thickened through the space
  std::map<std::string, LabelInfo> labels;
};

bool blob_fields_equal(const Blob& x, const Blob& y);

Blob rec_point(const InfoSpace& space, const ThickPoint& tp, const Reconstruction& r);

// rec after delta on the retained source point.
Blob blob_thicken(const InfoSpace& space, double epsilon, const Blob& b, const Reconstruction& r);

struct RecMismatch {
  std::string core;
  int level = 0;
  std::string detail;
};

// Commuting square rec(delta(tp)) = blob_thicken(rec(tp)) across the system.
// Empty when blobs come straight from the construction.
std::vector<RecMismatch> check_rec_square(const InfoSpace& space, const DirectedSystem& sys,
                                          const Reconstruction& r);

// Same square, but the rec(tp) leg is replaced by externally stored blob
// documents; stale documents surface as mismatches.
std::vector<RecMismatch> check_blob_documents(const InfoSpace& space, const DirectedSystem& sys,
                                              const Reconstruction& r,
                                              const nlohmann::json& blob_docs);

nlohmann::json blob_to_json(const InfoSpace& space, const Blob& b);

struct WaveFunction {
  AtomSet support;
  std::vector<double> prob;  // aligned with support
  double lambda = 0.0;

  double prob_of(AtomId a) const;
};

// prob(b) proportional to lambda^degree(b); normalized over the members.
WaveFunction wavefn(const ThickPoint& tp, double lambda);

nlohmann::json wavefn_to_json(const InfoSpace& space, const WaveFunction& w);

}  // namespace fluidcat
