#pragma once

#include "eqalloc/evaluation.hpp"
#include "eqalloc/scenario.hpp"
#include "eqalloc/value.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace eqalloc {

// Upper bounds l_i on each agent's utility.
using RestrictionVector = std::vector<Value>;

struct RestrictedResult {
    bool feasible = false;
    // Meaningful only when feasible.
    Allocation allocation;
    Value welfare;
};

struct RestrictedOptions {
    // Agent left out of the allocation entirely (its bound is ignored).
    std::optional<std::size_t> excluded;
    // Maximise sum_i f_i(x_i) instead of sum_i w_i f_i(x_i).
    bool unit_objective = false;
    bool check_concavity = true;
};

// Greedy utilitarian allocation over every agent and type. Requires concave
// utilities; throws NonConcaveUtility otherwise.
WelfareReport solve_utilitarian(const Scenario& s);

// Best allocation of `items` items (k = 1) subject to f_i(x_i) <= bounds[i].
RestrictedResult solve_restricted_utilitarian(const Scenario& s, const RestrictionVector& bounds, std::size_t items,
                                              const RestrictedOptions& options = {});

// Maximises prod_i x_i^{w_i} over item counts (k = 1). When m < n the result
// is flagged with insufficient_items and log_nash = -inf.
WelfareReport solve_nash(const Scenario& s);

// Weighted maximin allocation of t_items items (k = 1). Extra items in the
// non-exact case go to the minimum-ratio agents with the largest
// f_i(x_i+1)/w_i, lowest index first on ties.
WelfareReport solve_maximin(const Scenario& s, std::size_t t_items);

// Weighted leximin allocation of all m items (k = 1).
WelfareReport solve_leximin(const Scenario& s);

// Merged sweep over the per-agent increasing sequences value(i, 0) <
// value(i, 1) < ... . Entry (i, j) being swept means agent i holds j + 1 items.
// Whole groups of equal values are swept while the running count stays within
// `items`.
struct CounterSweep {
    std::vector<std::size_t> counts;
    // Items placed by complete groups; equals `items` in the exact case.
    std::size_t attained = 0;
    // Agents in the first group that did not fit, ascending.
    std::vector<std::size_t> frontier;
};

CounterSweep counter_sweep(std::size_t agents, std::size_t items,
                           const std::function<Value(std::size_t agent, std::size_t j)>& value, double eps);

} // namespace eqalloc
