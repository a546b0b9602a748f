#pragma once

#include "eqalloc/scenario.hpp"
#include "eqalloc/value.hpp"

#include <optional>
#include <vector>

namespace eqalloc {

struct ShareVector {
    // Weighted maximin share of each agent.
    std::vector<Value> mu;
};

// Weighted maximin shares for a single item type.
ShareVector compute_wmms_shares(const Scenario& s);

struct WmmsDecision {
    bool exists = false;
    ShareVector shares;
    // Present when exists: every agent receives the fewest items reaching its
    // share, then surplus items go one at a time to agents in ascending order.
    std::optional<Allocation> allocation;
};

WmmsDecision decide_wmms(const Scenario& s);

// Bundle sizes differing by at most one, larger bundles to lower indices.
// Requires equal weights.
Allocation construct_balanced_efx(const Scenario& s);

// WEFX allocation for power utilities f_i(x) = c_i x^{a_i}. The result is
// checked before it is returned; throws VerificationFailed when the check fails.
Allocation construct_wefx(const Scenario& s);

} // namespace eqalloc
