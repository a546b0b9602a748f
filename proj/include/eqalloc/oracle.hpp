#pragma once

#include "eqalloc/evaluation.hpp"
#include "eqalloc/scenario.hpp"
#include "eqalloc/share_fairness.hpp"

#include <cstddef>
#include <random>
#include <string_view>
#include <vector>

namespace eqalloc {

struct OracleLimits {
    std::size_t max_total_items = 12;
    std::size_t max_agents = 4;
    std::size_t max_types = 2;
    double max_allocations = 1e6;
};

// Number of complete allocations: prod_j C(m_j + n - 1, n - 1).
double allocation_count(const Scenario& s);

// Every complete allocation exactly once. Within a column, bundles run from
// (m, 0, ..., 0) down to (0, ..., 0, m) in decreasing lexicographic order;
// the last column varies fastest.
class AllocationStream {
public:
    // Throws LimitsExceeded when the scenario is outside the limits.
    explicit AllocationStream(const Scenario& s, const OracleLimits& limits = {});

    // Writes the next allocation into x; false once exhausted.
    bool next(Allocation& x);

private:
    std::size_t agents_;
    std::vector<std::size_t> counts_;
    std::vector<std::vector<std::size_t>> columns_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<Allocation> enumerate_allocations(const Scenario& s, const OracleLimits& limits = {});

enum class Objective { utilitarian, rawlsian, leximin, nash, min_twd };

Objective parse_objective(std::string_view name);

// Best complete allocation under the objective by exhaustive search; the first
// allocation in stream order wins ties. Nash maximises prod_i x_i^{w_i}.
WelfareReport oracle_best(const Scenario& s, Objective objective, const OracleLimits& limits = {});

struct OracleWmms {
    ShareVector shares;
    bool exists = false;
};

OracleWmms oracle_wmms(const Scenario& s, const OracleLimits& limits = {});

// Fewest coins of value 1 / (L w_j) that make some allocation equitable, where
// L scales the utilities to integers and the coin-issuing agent j receives
// none.
Integer oracle_min_coins(const Scenario& s, const OracleLimits& limits = {});

struct RandomScenarioOptions {
    std::size_t min_agents = 1;
    std::size_t max_agents = 4;
    std::size_t min_items = 1;
    std::size_t max_items = 12;
    std::size_t types = 1;
    long max_weight = 5;
    long max_increment = 10;
    bool concave = true;
};

// Tabulated utilities from random positive increments (sorted in decreasing
// order when concave) and integer weights in {1..max_weight}. Each type holds
// between min_items and max_items items; every agent has one weight.
Scenario random_scenario(std::mt19937_64& rng, const RandomScenarioOptions& options = {});

} // namespace eqalloc
