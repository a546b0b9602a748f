#pragma once

#include "eqalloc/scenario.hpp"

#include <vector>

namespace fixtures {

inline eqalloc::Scenario linear(std::vector<long> rates, std::vector<long> weights, std::size_t m)
{
    std::vector<eqalloc::Rational> w;
    std::vector<eqalloc::UtilityFunction> f;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        w.emplace_back(weights[i]);
        f.push_back(eqalloc::UtilityFunction::linear(eqalloc::Rational(rates[i])));
    }
    return eqalloc::Scenario::single_type(std::move(w), std::move(f), m);
}

// Four agents with additive rates 2, 4, 7, 7, unit weights, seven items.
inline eqalloc::Scenario seats()
{
    return linear({2, 4, 7, 7}, {1, 1, 1, 1}, 7);
}

inline eqalloc::Scenario tables(std::vector<std::vector<std::int64_t>> rows, std::vector<long> weights)
{
    std::vector<eqalloc::Rational> w;
    std::vector<eqalloc::UtilityFunction> f;
    const std::size_t m = rows.front().size() - 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        w.emplace_back(weights[i]);
        f.push_back(eqalloc::UtilityFunction::tabulated(rows[i]));
    }
    return eqalloc::Scenario::single_type(std::move(w), std::move(f), m);
}

inline eqalloc::Allocation counts(std::vector<std::size_t> x)
{
    return eqalloc::Allocation::from_counts(x);
}

} // namespace fixtures
