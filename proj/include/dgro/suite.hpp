#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dgro/rational.hpp"

namespace dgro {

// Exact JSON encodings: rationals as "p/q" strings, complex values as
// [re, im].
nlohmann::ordered_json toJsonQ(const Q& q);
nlohmann::ordered_json toJsonGQ(const GQ& z);

struct CriterionResult {
  int id = 0;
  std::string name;
  long checks = 0;
  std::vector<std::string> failures;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool pass() const { return failures.empty(); }
  nlohmann::ordered_json toJson() const;
};

// Criteria 1..9 of the verification suite. Each run is deterministic: all
// random inputs come from fixed seeds.
CriterionResult runCriterion(int id);
std::vector<int> suiteCriteria();

}  // namespace dgro
