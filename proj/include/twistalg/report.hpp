#pragma once

#include <string>
#include <vector>

namespace twistalg {

// Outcome of a verification sweep: the check name, the ball radius the sweep
// ran over, and a human-readable list of violations (empty means the check
// passed).
struct Report {
    std::string check;
    int radius = 0;
    std::vector<std::string> violations;

    bool pass() const { return violations.empty(); }

    void flag(std::string what) { violations.push_back(std::move(what)); }
};

}  // namespace twistalg
