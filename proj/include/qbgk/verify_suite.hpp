#pragma once

#include <string>
#include <vector>

namespace qbgk {

enum class VerifyLevel { quick, full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the cross-module invariant checks: oracle equivalence, monotonicity,
/// D-negativity, inverse consistency, coefficient round-trips, symmetry
/// reduction and H/conservation dynamics. `full` adds the grid-refinement
/// order estimate, the fermion-bound run and the complete round-trip matrix.
/// Setting QBGK_VERIFY_TAMPER in the environment injects an impossible
/// tolerance into the first check (failure-path testing).
std::vector<CheckResult> run_verify_suite(VerifyLevel level);

}  // namespace qbgk
