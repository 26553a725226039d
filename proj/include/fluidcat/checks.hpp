#pragma once
// Machine checks for the laws the constructions promise: category axioms,
// thickening functoriality, strata partitions, colimit agreement, monoidal
// laws, distributivity, cofibration, duality and wave normalization.

#include <json.hpp>

#include "fluidcat/bundles.hpp"
#include "fluidcat/natural_delta.hpp"

namespace fluidcat {

struct CheckFailure {
  std::string law;
  std::string counterexample;
};

struct CheckSuite {
  std::string name;
  bool passed = true;
  std::vector<CheckFailure> failures;
};

struct CheckReport {
  std::vector<CheckSuite> suites;

  bool all_passed() const {
    for (const CheckSuite& s : suites)
      if (!s.passed) return false;
    return true;
  }
};

struct CheckOptions {
  double epsilon = 1.0;
  int levels = 3;
  double lambda = 0.5;
  int arity = 1;
  unsigned long long seed = 1;
  std::string inject_fault;  // "category-table" corrupts one composite on purpose
};

CheckReport run_checks(const InfoSpace& space, const CheckOptions& opts);

nlohmann::json check_report_to_json(const CheckReport& report);

}  // namespace fluidcat
