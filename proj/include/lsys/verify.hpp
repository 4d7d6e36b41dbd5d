#pragma once

// Built-in verification suite behind `lsys verify`: worked examples, Weyl
// oracles, V/W round trip, kernel positivity, angle identities, measure
// consistency and the classification table.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lsys::verify {

inline constexpr int kCriterionCount = 8;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured vs expected
};

struct Options {
  std::optional<int> only;  // run a single criterion
  std::uint64_t seed = 20041216;
};

const char* criterion_name(int id);
CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run(const Options& options);

}  // namespace lsys::verify
