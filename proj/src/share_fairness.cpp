#include "eqalloc/share_fairness.hpp"

#include "eqalloc/errors.hpp"
#include "eqalloc/evaluation.hpp"
#include "eqalloc/welfare_solvers.hpp"

#include <cmath>
#include <string>

namespace eqalloc {

namespace {

void require_single_type(const Scenario& s, const char* op)
{
    if (s.types() != 1)
        throw PreconditionError(std::string(op) + " requires a single item type");
}

// Can agent i split m items so that position j holds ell items and is the
// weighted minimum?
bool share_fits(const Scenario& s, std::size_t i, std::size_t j, std::size_t ell)
{
    const std::size_t m = s.counts[0];
    const UtilityFunction& f = s.utility(i);
    const Value level = f(ell) / Value(s.weight(j));
    std::size_t used = ell;
    for (std::size_t k = 0; k < s.agents(); ++k) {
        if (k == j)
            continue;
        try {
            used += ceil_inverse(f, Value(s.weight(k)) * level, s.epsilon);
        } catch (const UnreachableValue&) {
            return false;
        }
        if (used > m)
            return false;
    }
    return true;
}

} // namespace

ShareVector compute_wmms_shares(const Scenario& s)
{
    s.validate();
    require_single_type(s, "compute_wmms_shares");
    const std::size_t n = s.agents();
    const std::size_t m = s.counts[0];
    ShareVector out;
    out.mu.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool first = true;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t lo = 0;
            std::size_t hi = m;
            while (lo < hi) {
                const std::size_t mid = lo + (hi - lo + 1) / 2;
                if (share_fits(s, i, j, mid))
                    lo = mid;
                else
                    hi = mid - 1;
            }
            Value mu = Value(s.weight(i)) / Value(s.weight(j)) * s.utility(i)(lo);
            if (first || less(out.mu[i], mu, s.epsilon))
                out.mu[i] = std::move(mu);
            first = false;
        }
    }
    return out;
}

WmmsDecision decide_wmms(const Scenario& s)
{
    WmmsDecision d;
    d.shares = compute_wmms_shares(s);
    const std::size_t n = s.agents();
    const std::size_t m = s.counts[0];
    std::vector<std::size_t> need(n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        need[i] = ceil_inverse(s.utility(i), d.shares.mu[i], s.epsilon);
        total += need[i];
    }
    if (total > m)
        return d;
    d.exists = true;
    for (std::size_t r = 0; r < m - total; ++r)
        ++need[r % n];
    d.allocation = Allocation::from_counts(need);
    return d;
}

Allocation construct_balanced_efx(const Scenario& s)
{
    s.validate();
    require_single_type(s, "construct_balanced_efx");
    for (std::size_t i = 1; i < s.agents(); ++i)
        if (s.weight(i) != s.weight(0))
            throw UnequalWeights("balanced allocation requires equal weights");
    const std::size_t n = s.agents();
    const std::size_t m = s.counts[0];
    std::vector<std::size_t> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = m / n + (i < m % n ? 1 : 0);
    return Allocation::from_counts(x);
}

Allocation construct_wefx(const Scenario& s)
{
    s.validate();
    require_single_type(s, "construct_wefx");
    const std::size_t n = s.agents();
    const std::size_t m = s.counts[0];
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const UtilityFunction& f = s.utility(i);
        if (f.kind() != UtilityFunction::Kind::power)
            throw NonPowerUtility("utility of agent " + s.agent_names[i] + " is not a power function");
        t[i] = std::pow(s.weight(i).get_d() / f.coefficient(), 1.0 / f.exponent());
    }

    const auto point = [&](std::size_t i, std::size_t j) { return Value(static_cast<double>(j) / t[i]); };
    CounterSweep sweep = counter_sweep(n, m, point, s.epsilon);
    const std::size_t extra = m - sweep.attained;
    for (std::size_t r = 0; r < extra; ++r)
        ++sweep.counts[sweep.frontier[r]];

    Allocation x = Allocation::from_counts(sweep.counts);
    const FairnessResult check = check_fairness(s, x, Property::wefx);
    if (!check.holds)
        throw VerificationFailed("constructed allocation is not WEFX: agent " + s.agent_names[check.witness->first]
                                 + " against agent " + s.agent_names[check.witness->second]);
    return x;
}

} // namespace eqalloc
