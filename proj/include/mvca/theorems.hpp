#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvca/coordination.hpp"

namespace mvca {

struct VerificationReport {
  std::string name;
  bool passed = false;
  int cases_checked = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  std::string to_text() const;
};

// Independent oracle: brute-force enumeration of every per-row choice,
// feasibility checked directly against the constraint definitions.  Returns
// the optimal objective and all optimal assignments.
struct EnumerationResult {
  double objective = 0.0;
  std::vector<ControlLogic> optima;
};
EnumerationResult enumerate_optima(const MipInstance& instance);

// Three-vehicle guarantee of the plain coordination problem: across all 2^6
// conflict patterns, every optimal assignment keeps the cyclic top-priority
// pairs assigned (u_01 when pair (0,1) conflicts, u_12 when (1,2) conflicts,
// u_20 when (2,0) conflicts).
VerificationReport verify_theorem1();

// Same guarantee for the merged variant: enumerates conflict patterns times
// per-row merge choices, requires the mandate up to merge equivalence, and
// pins the published optimal objectives of the three canonical cases.
VerificationReport verify_theorem2();

// Randomized cross-check of the branch-and-bound solver against the
// enumeration oracle.
VerificationReport verify_mip_against_enumeration(int trials = 500,
                                                  std::uint64_t seed = 0x5eedu);

}  // namespace mvca
