#pragma once

#include "eqalloc/utility_function.hpp"
#include "eqalloc/value.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace eqalloc {

// n agents sharing m_1..m_k identical copies of k item types. Agent i has
// entitlement weights(i, j) and utility utilities(i, j) for type j.
struct Scenario {
    std::vector<std::string> agent_names;
    std::vector<std::string> type_names;
    std::vector<std::vector<Rational>> weights;
    std::vector<std::vector<UtilityFunction>> utilities;
    std::vector<std::size_t> counts;
    // Tolerance for comparisons that involve power or log utilities.
    double epsilon = kDefaultEpsilon;

    std::size_t agents() const noexcept { return agent_names.size(); }
    std::size_t types() const noexcept { return counts.size(); }
    std::size_t total_items() const noexcept;

    const Rational& weight(std::size_t agent, std::size_t type = 0) const { return weights[agent][type]; }
    const UtilityFunction& utility(std::size_t agent, std::size_t type = 0) const { return utilities[agent][type]; }

    // True when every utility is tabulated or linear.
    bool is_exact() const noexcept;

    // Per-agent weights when each agent's weight is the same across types.
    std::optional<std::vector<Rational>> scalar_weights() const;

    // Throws ValidationError naming the violated invariant.
    void validate() const;

    // Builds a single-type scenario; agents are named A1..An and the type "item".
    static Scenario single_type(std::vector<Rational> weights, std::vector<UtilityFunction> utilities,
                                std::size_t items);
};

// Integer matrix x(i, j): copies of type j held by agent i.
class Allocation {
public:
    Allocation() = default;
    Allocation(std::size_t agents, std::size_t types = 1) : agents_(agents), types_(types), cells_(agents * types, 0) {}

    // Single-type allocation from per-agent counts.
    static Allocation from_counts(const std::vector<std::size_t>& counts);

    std::size_t agents() const noexcept { return agents_; }
    std::size_t types() const noexcept { return types_; }

    std::size_t operator()(std::size_t agent, std::size_t type = 0) const { return cells_[agent * types_ + type]; }
    std::size_t& operator()(std::size_t agent, std::size_t type = 0) { return cells_[agent * types_ + type]; }

    std::size_t type_total(std::size_t type) const;
    std::vector<std::size_t> column(std::size_t type = 0) const;

    // Column sums equal the scenario's counts.
    bool is_complete_for(const Scenario& s) const;

    // Set while an allocation is being built or when it deliberately covers
    // fewer items than the scenario holds.
    bool partial = false;

    friend bool operator==(const Allocation& a, const Allocation& b)
    {
        return a.agents_ == b.agents_ && a.types_ == b.types_ && a.cells_ == b.cells_;
    }

private:
    std::size_t agents_ = 0;
    std::size_t types_ = 0;
    std::vector<std::size_t> cells_;
};

} // namespace eqalloc
