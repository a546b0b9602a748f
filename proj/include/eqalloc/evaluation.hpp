#pragma once

#include "eqalloc/scenario.hpp"
#include "eqalloc/value.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace eqalloc {

struct WelfareReport {
    Allocation allocation;
    // u_i = sum_j f_ij(x_ij).
    std::vector<Value> utilities;
    // u_i / w_i; empty unless every agent has a single scalar weight.
    std::vector<Value> ratios;
    // sum_ij w_ij f_ij(x_ij).
    Value utilitarian;
    // min_i u_i / w_i, when ratios are defined.
    std::optional<Value> rawlsian;
    // Total weighted deficit, when ratios are defined.
    std::optional<Value> twd;

    // Solver annotations.
    // Maximin / leximin: items placed by the exact counter sweep.
    std::optional<std::size_t> counter_items;
    // Utilitarian: the marginal gain chosen at every step.
    std::vector<Value> gain_trace;
    // Nash: sum_i w_i ln x_i, and whether m < n forced a zero product.
    std::optional<double> log_nash;
    bool insufficient_items = false;
};

// Throws IncompleteAllocation unless x's column sums equal the scenario
// counts (or, with allow_partial, do not exceed them).
WelfareReport welfare_report(const Scenario& s, const Allocation& x, bool allow_partial = false);

// Per-agent utilities of x under s.
std::vector<Value> agent_utilities(const Scenario& s, const Allocation& x);

// Index of the pivot agent for twd: largest u_i / w_i, then smallest w_i,
// then lowest index.
std::size_t twd_pivot(std::span<const Value> utilities, std::span<const Rational> weights, double eps);

// sum_i (w_i u_p - w_p u_i) at the pivot p chosen by twd_pivot.
Value total_weighted_deficit(std::span<const Value> utilities, std::span<const Rational> weights, double eps);

enum class Property { wef, wef1, wefx, weq, weqx, wmms };

Property parse_property(std::string_view name);
std::string_view property_name(Property p);

struct FairnessResult {
    bool holds = true;
    // First violating pair (i, j) in row-major order, 0-based. For WMMS the
    // pair is (i, i).
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// Single-type check. WMMS requires the agents' shares.
FairnessResult check_fairness(const Scenario& s, const Allocation& x, Property property,
                              std::span<const Value> shares = {});

// Compares the ascending-sorted vectors lexicographically: negative when a is
// leximin-worse than b, zero when equivalent, positive when better.
int compare_leximin(std::vector<Value> a, std::vector<Value> b, double eps = kDefaultEpsilon);

} // namespace eqalloc
