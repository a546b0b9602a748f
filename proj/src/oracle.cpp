#include "eqalloc/oracle.hpp"

#include "eqalloc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace eqalloc {

namespace {

double binomial(std::size_t n, std::size_t k)
{
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// Next composition in decreasing lexicographic order.
bool advance(std::vector<std::size_t>& c)
{
    if (c.size() < 2)
        return false;
    std::size_t i = c.size() - 1;
    while (i-- > 0)
        if (c[i] > 0)
            break;
    if (i == static_cast<std::size_t>(-1))
        return false;
    std::size_t tail = 1;
    for (std::size_t r = i + 1; r < c.size(); ++r) {
        tail += c[r];
        c[r] = 0;
    }
    --c[i];
    c[i + 1] = tail;
    return true;
}

std::vector<std::size_t> first_composition(std::size_t parts, std::size_t total)
{
    std::vector<std::size_t> c(parts, 0);
    c[0] = total;
    return c;
}

const std::vector<Rational>& require_scalar_weights(const std::optional<std::vector<Rational>>& w)
{
    if (!w)
        throw PreconditionError("objective requires one weight per agent");
    return *w;
}

Integer utility_scale(const Scenario& s)
{
    Integer scale = 1;
    for (std::size_t i = 0; i < s.agents(); ++i) {
        const UtilityFunction& f = s.utility(i);
        if (!f.is_exact())
            throw NonIntegerData("utility of agent " + s.agent_names[i] + " is not exact");
        for (std::size_t x = 0; x <= s.counts[0]; ++x) {
            const Rational v = f(x).exact();
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
        }
    }
    return scale;
}

} // namespace

double allocation_count(const Scenario& s)
{
    double total = 1.0;
    const std::size_t n = s.agents();
    for (const std::size_t m : s.counts)
        total *= binomial(m + n - 1, n - 1);
    return total;
}

AllocationStream::AllocationStream(const Scenario& s, const OracleLimits& limits)
    : agents_(s.agents()), counts_(s.counts)
{
    s.validate();
    if (s.agents() > limits.max_agents)
        throw LimitsExceeded("oracle supports at most " + std::to_string(limits.max_agents) + " agents");
    if (s.types() > limits.max_types)
        throw LimitsExceeded("oracle supports at most " + std::to_string(limits.max_types) + " item types");
    if (s.total_items() > limits.max_total_items)
        throw LimitsExceeded("oracle supports at most " + std::to_string(limits.max_total_items) + " items");
    if (allocation_count(s) > limits.max_allocations)
        throw LimitsExceeded("oracle enumeration too large");
}

bool AllocationStream::next(Allocation& x)
{
    if (done_)
        return false;
    const std::size_t k = counts_.size();
    if (!started_) {
        started_ = true;
        for (const std::size_t m : counts_)
            columns_.push_back(first_composition(agents_, m));
    } else {
        std::size_t j = k;
        while (j-- > 0) {
            if (advance(columns_[j]))
                break;
            columns_[j] = first_composition(agents_, counts_[j]);
        }
        if (j == static_cast<std::size_t>(-1)) {
            done_ = true;
            return false;
        }
    }
    x = Allocation(agents_, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < agents_; ++i)
            x(i, j) = columns_[j][i];
    return true;
}

std::vector<Allocation> enumerate_allocations(const Scenario& s, const OracleLimits& limits)
{
    AllocationStream stream(s, limits);
    std::vector<Allocation> out;
    Allocation x;
    while (stream.next(x))
        out.push_back(x);
    return out;
}

Objective parse_objective(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "utilitarian") return Objective::utilitarian;
    if (lower == "rawlsian" || lower == "maximin") return Objective::rawlsian;
    if (lower == "leximin") return Objective::leximin;
    if (lower == "nash") return Objective::nash;
    if (lower == "min_twd" || lower == "min-twd" || lower == "psi") return Objective::min_twd;
    throw ValidationError("unknown oracle objective '" + std::string(name) + "'");
}

WelfareReport oracle_best(const Scenario& s, Objective objective, const OracleLimits& limits)
{
    AllocationStream stream(s, limits);
    const double eps = s.epsilon;
    const auto weights = s.scalar_weights();
    if (objective == Objective::rawlsian || objective == Objective::min_twd || objective == Objective::leximin)
        require_scalar_weights(weights);
    if (objective == Objective::nash && s.types() != 1)
        throw PreconditionError("nash oracle requires a single item type");

    const auto log_nash = [&](const Allocation& x) {
        double total = 0.0;
        for (std::size_t i = 0; i < s.agents(); ++i) {
            if (x(i) == 0)
                return -std::numeric_limits<double>::infinity();
            total += s.weight(i).get_d() * std::log(static_cast<double>(x(i)));
        }
        return total;
    };
    // Positive when candidate is strictly better than incumbent.
    const auto better = [&](const WelfareReport& cand, const WelfareReport& inc) {
        switch (objective) {
        case Objective::utilitarian:
            return compare(cand.utilitarian, inc.utilitarian, eps) > 0;
        case Objective::rawlsian:
            return compare(*cand.rawlsian, *inc.rawlsian, eps) > 0;
        case Objective::leximin:
            return compare_leximin(cand.ratios, inc.ratios, eps) > 0;
        case Objective::nash: {
            const double a = *cand.log_nash;
            const double b = *inc.log_nash;
            if (std::isinf(a) || std::isinf(b))
                return a > b;
            return compare(Value(a), Value(b), eps) > 0;
        }
        case Objective::min_twd:
            return compare(*cand.twd, *inc.twd, eps) < 0;
        }
        return false;
    };

    std::optional<WelfareReport> best;
    Allocation x;
    while (stream.next(x)) {
        WelfareReport r = welfare_report(s, x);
        if (objective == Objective::nash)
            r.log_nash = log_nash(x);
        if (!best || better(r, *best))
            best = std::move(r);
    }
    if (best && objective == Objective::nash)
        best->insufficient_items = std::isinf(*best->log_nash);
    return *best;
}

OracleWmms oracle_wmms(const Scenario& s, const OracleLimits& limits)
{
    if (s.types() != 1)
        throw PreconditionError("oracle_wmms requires a single item type");
    const std::vector<Allocation> all = enumerate_allocations(s, limits);
    const std::size_t n = s.agents();
    const double eps = s.epsilon;
    OracleWmms out;
    out.shares.mu.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const UtilityFunction& f = s.utility(i);
        bool first = true;
        for (const Allocation& d : all) {
            Value low;
            for (std::size_t j = 0; j < n; ++j) {
                Value v = Value(s.weight(i)) / Value(s.weight(j)) * f(d(j));
                if (j == 0 || less(v, low, eps))
                    low = std::move(v);
            }
            if (first || less(out.shares.mu[i], low, eps))
                out.shares.mu[i] = std::move(low);
            first = false;
        }
    }
    for (const Allocation& x : all) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = !less(s.utility(i)(x(i)), out.shares.mu[i], eps);
        if (ok) {
            out.exists = true;
            break;
        }
    }
    return out;
}

Integer oracle_min_coins(const Scenario& s, const OracleLimits& limits)
{
    if (s.types() != 1)
        throw PreconditionError("oracle_min_coins requires a single item type");
    AllocationStream stream(s, limits);
    const std::size_t n = s.agents();
    for (std::size_t i = 0; i < n; ++i)
        if (!is_integer(s.weight(i)))
            throw NonIntegerData("weight of agent " + s.agent_names[i] + " is not an integer");
    const Rational scale(utility_scale(s));

    bool found = false;
    Integer best;
    Allocation x;
    while (stream.next(x)) {
        std::vector<Rational> u(n);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = scale * s.utility(i)(x(i)).exact();
        for (std::size_t j = 0; j < n; ++j) {
            Rational total = 0;
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                const Rational y = s.weight(i) * u[j] - s.weight(j) * u[i];
                ok = y >= 0 && is_integer(y);
                total += y;
            }
            if (ok && (!found || total < best)) {
                found = true;
                best = total.get_num();
            }
        }
    }
    return best;
}

Scenario random_scenario(std::mt19937_64& rng, const RandomScenarioOptions& options)
{
    using Int = std::uniform_int_distribution<long>;
    using Size = std::uniform_int_distribution<std::size_t>;
    const std::size_t n = Size(options.min_agents, options.max_agents)(rng);
    const std::size_t k = options.types;

    Scenario s;
    for (std::size_t j = 0; j < k; ++j) {
        s.type_names.push_back(k == 1 ? "item" : "T" + std::to_string(j + 1));
        s.counts.push_back(Size(options.min_items, options.max_items)(rng));
    }
    for (std::size_t i = 0; i < n; ++i) {
        s.agent_names.push_back("A" + std::to_string(i + 1));
        const Rational w(Int(1, options.max_weight)(rng));
        s.weights.emplace_back(k, w);
        std::vector<UtilityFunction> row;
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<long> inc(s.counts[j]);
            for (auto& v : inc)
                v = Int(1, options.max_increment)(rng);
            if (options.concave)
                std::sort(inc.begin(), inc.end(), std::greater<>());
            std::vector<std::int64_t> table(1, 0);
            for (const long v : inc)
                table.push_back(table.back() + v);
            row.push_back(UtilityFunction::tabulated(std::move(table)));
        }
        s.utilities.push_back(std::move(row));
    }
    return s;
}

} // namespace eqalloc
