#include "eqalloc/evaluation.hpp"

#include "eqalloc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace eqalloc {

namespace {

void require_shape(const Scenario& s, const Allocation& x, bool allow_partial)
{
    if (x.agents() != s.agents() || x.types() != s.types())
        throw IncompleteAllocation("allocation shape does not match the scenario");
    for (std::size_t j = 0; j < s.types(); ++j) {
        const std::size_t total = x.type_total(j);
        if (total > s.counts[j] || (!allow_partial && total != s.counts[j]))
            throw IncompleteAllocation("allocation assigns " + std::to_string(total) + " of type " + s.type_names[j]
                                       + ", expected " + std::to_string(s.counts[j]));
    }
}

void require_single_type(const Scenario& s, const char* op)
{
    if (s.types() != 1)
        throw PreconditionError(std::string(op) + " requires a single item type");
}

} // namespace

std::vector<Value> agent_utilities(const Scenario& s, const Allocation& x)
{
    std::vector<Value> u(s.agents());
    for (std::size_t i = 0; i < s.agents(); ++i)
        for (std::size_t j = 0; j < s.types(); ++j)
            u[i] += s.utility(i, j)(x(i, j));
    return u;
}

std::size_t twd_pivot(std::span<const Value> utilities, std::span<const Rational> weights, double eps)
{
    std::size_t p = 0;
    Value best = utilities[0] / Value(weights[0]);
    for (std::size_t i = 1; i < utilities.size(); ++i) {
        const Value r = utilities[i] / Value(weights[i]);
        const int c = compare(r, best, eps);
        if (c > 0 || (c == 0 && weights[i] < weights[p])) {
            p = i;
            best = r;
        }
    }
    return p;
}

Value total_weighted_deficit(std::span<const Value> utilities, std::span<const Rational> weights, double eps)
{
    const std::size_t p = twd_pivot(utilities, weights, eps);
    Value total;
    for (std::size_t i = 0; i < utilities.size(); ++i)
        if (i != p)
            total += Value(weights[i]) * utilities[p] - Value(weights[p]) * utilities[i];
    return total;
}

WelfareReport welfare_report(const Scenario& s, const Allocation& x, bool allow_partial)
{
    require_shape(s, x, allow_partial);
    WelfareReport r;
    r.allocation = x;
    r.allocation.partial = allow_partial && !x.is_complete_for(s);
    r.utilities = agent_utilities(s, x);
    for (std::size_t i = 0; i < s.agents(); ++i)
        for (std::size_t j = 0; j < s.types(); ++j)
            r.utilitarian += Value(s.weight(i, j)) * s.utility(i, j)(x(i, j));
    if (const auto w = s.scalar_weights()) {
        for (std::size_t i = 0; i < s.agents(); ++i)
            r.ratios.push_back(r.utilities[i] / Value((*w)[i]));
        Value low = r.ratios[0];
        for (const auto& v : r.ratios)
            if (less(v, low, s.epsilon))
                low = v;
        r.rawlsian = low;
        r.twd = total_weighted_deficit(r.utilities, *w, s.epsilon);
    }
    return r;
}

Property parse_property(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "wef") return Property::wef;
    if (lower == "wef1") return Property::wef1;
    if (lower == "wefx") return Property::wefx;
    if (lower == "weq") return Property::weq;
    if (lower == "weqx") return Property::weqx;
    if (lower == "wmms") return Property::wmms;
    throw ValidationError("unknown property '" + std::string(name) + "'");
}

std::string_view property_name(Property p)
{
    switch (p) {
    case Property::wef: return "WEF";
    case Property::wef1: return "WEF1";
    case Property::wefx: return "WEFX";
    case Property::weq: return "WEQ";
    case Property::weqx: return "WEQX";
    case Property::wmms: return "WMMS";
    }
    return "";
}

FairnessResult check_fairness(const Scenario& s, const Allocation& x, Property property,
                              std::span<const Value> shares)
{
    require_single_type(s, "check_fairness");
    require_shape(s, x, false);
    const std::size_t n = s.agents();
    const double eps = s.epsilon;
    const auto w = [&](std::size_t i) { return Value(s.weight(i)); };
    const auto f = [&](std::size_t agent, std::size_t count) { return s.utility(agent)(count); };

    if (property == Property::wmms) {
        if (shares.size() != n)
            throw PreconditionError("WMMS check needs one share per agent");
        for (std::size_t i = 0; i < n; ++i)
            if (less(f(i, x(i)), shares[i], eps))
                return {false, std::make_pair(i, i)};
        return {};
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Value own = f(i, x(i)) / w(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            bool ok = true;
            switch (property) {
            case Property::wef:
                ok = !less(own, f(i, x(j)) / w(j), eps);
                break;
            case Property::wef1:
            case Property::wefx:
                ok = x(j) == 0 || !less(own, f(i, x(j) - 1) / w(j), eps);
                break;
            case Property::weq:
                ok = !less(own, f(j, x(j)) / w(j), eps);
                break;
            case Property::weqx:
                ok = x(j) == 0 || !less(own, f(j, x(j) - 1) / w(j), eps);
                break;
            case Property::wmms:
                break;
            }
            if (!ok)
                return {false, std::make_pair(i, j)};
        }
    }
    return {};
}

int compare_leximin(std::vector<Value> a, std::vector<Value> b, double eps)
{
    std::sort(a.begin(), a.end(), order_before);
    std::sort(b.begin(), b.end(), order_before);
    const std::size_t len = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i)
        if (const int c = compare(a[i], b[i], eps); c != 0)
            return c;
    return 0;
}

} // namespace eqalloc
