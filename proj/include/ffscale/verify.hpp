#ifndef FFSCALE_VERIFY_HPP
#define FFSCALE_VERIFY_HPP

#include <string>
#include <vector>

#include "ffscale/runner.hpp"

namespace ffscale::harness {

struct CheckRecord {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool evaluated = false;   // false when the run aborted before this check
    std::string worst_location;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    bool all_pass() const;
    std::string to_text() const;
};

// Runs the scenario once (plus a re-gauged twin) and evaluates the invariant
// suite: population matching, diagonal rule, element relation, route
// equivalence (route = both), Hermiticity, unitarity, gauge robustness.
// Numeric failures become failed report entries, not exceptions.
VerificationReport verify_scenario(const Scenario& sc);

}  // namespace ffscale::harness

#endif
