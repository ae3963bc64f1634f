#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "thermowiener/report.hpp"

namespace thermowiener {

inline constexpr int kCriterionCount = 12;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  Json data;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  std::vector<int> only;  // empty runs every criterion
};

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});
Json to_json(const CriterionResult& r);

// Domains used by the PDE checks: a wide slab (-10, 10) x (0, 1) with z0 at
// the origin of its bottom.
DomainSpec slab_domain();

}  // namespace thermowiener
