#include "eqalloc/scenario.hpp"

#include "eqalloc/errors.hpp"

#include <numeric>

namespace eqalloc {

std::size_t Scenario::total_items() const noexcept
{
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

bool Scenario::is_exact() const noexcept
{
    for (const auto& row : utilities)
        for (const auto& f : row)
            if (!f.is_exact())
                return false;
    return true;
}

std::optional<std::vector<Rational>> Scenario::scalar_weights() const
{
    std::vector<Rational> out;
    out.reserve(agents());
    for (const auto& row : weights) {
        if (row.empty())
            return std::nullopt;
        for (const auto& w : row)
            if (w != row.front())
                return std::nullopt;
        out.push_back(row.front());
    }
    return out;
}

void Scenario::validate() const
{
    const std::size_t n = agents();
    const std::size_t k = types();
    if (n == 0)
        throw ValidationError("scenario has no agents");
    if (k == 0)
        throw ValidationError("scenario has no item types");
    if (type_names.size() != k)
        throw ValidationError("type name count does not match type count");
    if (weights.size() != n || utilities.size() != n)
        throw ValidationError("weight/utility rows do not match agent count");
    if (!(epsilon > 0.0))
        throw ValidationError("epsilon must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& who = agent_names[i];
        if (weights[i].size() != k || utilities[i].size() != k)
            throw ValidationError("agent " + who + " must have one weight and one utility per type");
        for (std::size_t j = 0; j < k; ++j) {
            if (weights[i][j] <= 0)
                throw ValidationError("weight of agent " + who + " for type " + type_names[j] + " must be positive");
            const auto top = utilities[i][j].max_count();
            if (top && *top != counts[j])
                throw ValidationError("utility table of agent " + who + " for type " + type_names[j] + " has length "
                                      + std::to_string(*top + 1) + ", expected " + std::to_string(counts[j] + 1));
        }
    }
}

Scenario Scenario::single_type(std::vector<Rational> weights, std::vector<UtilityFunction> utilities,
                               std::size_t items)
{
    if (weights.size() != utilities.size())
        throw ValidationError("weights and utilities differ in length");
    Scenario s;
    s.type_names = {"item"};
    s.counts = {items};
    for (std::size_t i = 0; i < weights.size(); ++i) {
        s.agent_names.push_back("A" + std::to_string(i + 1));
        s.weights.push_back({std::move(weights[i])});
        s.utilities.push_back({std::move(utilities[i])});
    }
    return s;
}

Allocation Allocation::from_counts(const std::vector<std::size_t>& counts)
{
    Allocation x(counts.size(), 1);
    for (std::size_t i = 0; i < counts.size(); ++i)
        x(i) = counts[i];
    return x;
}

std::size_t Allocation::type_total(std::size_t type) const
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < agents_; ++i)
        total += (*this)(i, type);
    return total;
}

std::vector<std::size_t> Allocation::column(std::size_t type) const
{
    std::vector<std::size_t> out(agents_);
    for (std::size_t i = 0; i < agents_; ++i)
        out[i] = (*this)(i, type);
    return out;
}

bool Allocation::is_complete_for(const Scenario& s) const
{
    if (agents_ != s.agents() || types_ != s.types())
        return false;
    for (std::size_t j = 0; j < types_; ++j)
        if (type_total(j) != s.counts[j])
            return false;
    return true;
}

} // namespace eqalloc
