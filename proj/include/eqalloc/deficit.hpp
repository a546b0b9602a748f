#pragma once

#include "eqalloc/scenario.hpp"
#include "eqalloc/value.hpp"

#include <cstddef>
#include <vector>

namespace eqalloc {

struct DeficitResult {
    std::size_t pivot = 0;
    Allocation allocation;
    // (sum_{i != p} w_i) u_p - w_p sum_{i != p} u_i.
    Value twd;
    // Items held by the pivot, summed over types.
    std::size_t pivot_items = 0;
    std::vector<Value> utilities;
};

// Minimum total weighted deficit over allocations in which agent p attains
// the largest utility-to-weight ratio (k = 1, concave utilities). The pivot
// receives at least one item; the smallest minimising item count wins ties.
DeficitResult psi_p(const Scenario& s, std::size_t p);

// Minimum over all pivots; lowest index wins ties.
DeficitResult psi(const Scenario& s);

struct CoinOptions {
    // Multiply utilities by the least common denominator of their values
    // before counting coins. When false, non-integer utilities are rejected.
    bool scale = true;
};

struct CoinPlan {
    std::size_t pivot = 0;
    // Value of one coin in the original utility units: 1 / (scale * w_pivot).
    Rational denomination;
    Integer scale;
    std::vector<Integer> transfers;
    Integer total_coins;
    Allocation allocation;
    std::vector<Value> utilities;
    // (u_i + transfers_i * denomination) / w_i, identical for every agent.
    std::vector<Rational> final_ratios;
};

// Fewest coins that turn some allocation into an equitable one (k = 1,
// positive integer weights, exact utilities).
CoinPlan coin_compensation(const Scenario& s, const CoinOptions& options = {});

struct MultitypeLimits {
    std::size_t max_types = 3;
    // Bound on max_i sum_j f_ij(m_j).
    long max_utility = 10000;
    // Bound on the estimated number of bundle evaluations.
    double max_work = 2e8;
};

// Exact minimum total weighted deficit for k item types with a single weight
// per agent and integer-valued utilities.
DeficitResult psi_multitype(const Scenario& s, const MultitypeLimits& limits = {});

struct PerTypeDeficit {
    // One single-type result per item type.
    std::vector<DeficitResult> per_type;
    // Column-wise concatenation of the per-type allocations.
    Allocation allocation;
    Value total_twd;
};

// Runs psi independently on every item type.
PerTypeDeficit psi_per_type(const Scenario& s);

} // namespace eqalloc
