#include "eqalloc/deficit.hpp"

#include "eqalloc/errors.hpp"
#include "eqalloc/evaluation.hpp"
#include "eqalloc/welfare_solvers.hpp"

#include <string>

namespace eqalloc {

namespace {

void require_single_type(const Scenario& s, const char* op)
{
    if (s.types() != 1)
        throw PreconditionError(std::string(op) + " requires a single item type");
}

void require_concave(const Scenario& s)
{
    for (std::size_t i = 0; i < s.agents(); ++i)
        if (!check_concave(s.utility(i), s.counts[0]))
            throw NonConcaveUtility("utility of agent " + s.agent_names[i] + " is not concave");
}

DeficitResult finish(const Scenario& s, std::size_t pivot, Allocation x, Value twd)
{
    DeficitResult r;
    r.pivot = pivot;
    r.pivot_items = 0;
    for (std::size_t j = 0; j < x.types(); ++j)
        r.pivot_items += x(pivot, j);
    r.utilities = agent_utilities(s, x);
    r.allocation = std::move(x);
    r.twd = std::move(twd);
    return r;
}

DeficitResult psi_p_unchecked(const Scenario& s, std::size_t p)
{
    const std::size_t n = s.agents();
    const std::size_t m = s.counts[0];
    if (p >= n)
        throw PreconditionError("pivot index out of range");
    if (m == 0)
        return finish(s, p, Allocation(n, 1), Value());

    const Value wp(s.weight(p));
    Value others;
    for (std::size_t i = 0; i < n; ++i)
        if (i != p)
            others += Value(s.weight(i));

    RestrictedOptions options;
    options.excluded = p;
    options.unit_objective = true;
    options.check_concavity = false;

    bool found = false;
    Value best;
    Allocation best_x;
    RestrictionVector bounds(n);
    for (std::size_t t = 1; t <= m; ++t) {
        const Value fp = s.utility(p)(t);
        for (std::size_t i = 0; i < n; ++i)
            bounds[i] = Value(s.weight(i)) / wp * fp;
        RestrictedResult sub = solve_restricted_utilitarian(s, bounds, m - t, options);
        if (!sub.feasible)
            continue;
        Value tau = others * fp - wp * sub.welfare;
        if (!found || less(tau, best, s.epsilon)) {
            found = true;
            best = std::move(tau);
            best_x = std::move(sub.allocation);
            best_x(p) = t;
            best_x.partial = false;
        }
    }
    return finish(s, p, std::move(best_x), std::move(best));
}

} // namespace

DeficitResult psi_p(const Scenario& s, std::size_t p)
{
    s.validate();
    require_single_type(s, "psi_p");
    require_concave(s);
    return psi_p_unchecked(s, p);
}

DeficitResult psi(const Scenario& s)
{
    s.validate();
    require_single_type(s, "psi");
    require_concave(s);
    DeficitResult best = psi_p_unchecked(s, 0);
    for (std::size_t p = 1; p < s.agents(); ++p) {
        DeficitResult r = psi_p_unchecked(s, p);
        if (less(r.twd, best.twd, s.epsilon))
            best = std::move(r);
    }
    return best;
}

CoinPlan coin_compensation(const Scenario& s, const CoinOptions& options)
{
    s.validate();
    require_single_type(s, "coin_compensation");
    const std::size_t n = s.agents();
    for (std::size_t i = 0; i < n; ++i)
        if (!is_integer(s.weight(i)))
            throw NonIntegerData("weight of agent " + s.agent_names[i] + " is not an integer");

    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const UtilityFunction& f = s.utility(i);
        if (!f.is_exact())
            throw NonIntegerData("utility of agent " + s.agent_names[i] + " is not exact");
        if (f.kind() == UtilityFunction::Kind::linear) {
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), f.rate().get_den_mpz_t());
        } else {
            for (const Rational& v : f.table())
                mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
        }
    }
    if (!options.scale && scale != 1)
        throw NonIntegerData("utilities are not integer valued and scaling is disabled");

    DeficitResult d = psi(s);
    const std::size_t k = d.pivot;
    const Rational& wk = s.weight(k);
    const Rational uk = d.utilities[k].exact();

    CoinPlan plan;
    plan.pivot = k;
    plan.scale = scale;
    plan.denomination = Rational(1) / (Rational(scale) * wk);
    plan.total_coins = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Rational y = Rational(scale) * (uk * s.weight(i) - d.utilities[i].exact() * wk);
        if (!is_integer(y) || y < 0)
            throw VerificationFailed("coin transfer for agent " + s.agent_names[i] + " is not a non-negative integer");
        plan.transfers.push_back(y.get_num());
        plan.total_coins += y.get_num();
    }
    for (std::size_t i = 0; i < n; ++i)
        plan.final_ratios.push_back((d.utilities[i].exact() + Rational(plan.transfers[i]) * plan.denomination)
                                    / s.weight(i));
    plan.allocation = std::move(d.allocation);
    plan.utilities = std::move(d.utilities);
    return plan;
}

DeficitResult psi_multitype(const Scenario& s, const MultitypeLimits& limits)
{
    s.validate();
    const std::size_t n = s.agents();
    const std::size_t k = s.types();
    if (k > limits.max_types)
        throw LimitsExceeded("psi_multitype supports at most " + std::to_string(limits.max_types) + " item types");
    const auto scalar = s.scalar_weights();
    if (!scalar)
        throw PreconditionError("psi_multitype requires one weight per agent");
    const std::vector<Rational>& w = *scalar;

    // Integer utility tables u[i][j][x].
    std::vector<std::vector<std::vector<long>>> u(n, std::vector<std::vector<long>>(k));
    for (std::size_t i = 0; i < n; ++i) {
        long top = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const UtilityFunction& f = s.utility(i, j);
            if (!f.is_exact() || !f.is_integer_valued(s.counts[j]))
                throw NonIntegerData("utility of agent " + s.agent_names[i] + " for type " + s.type_names[j]
                                     + " is not integer valued");
            const Rational last = f(s.counts[j]).exact();
            if (last > limits.max_utility)
                throw LimitsExceeded("utility bound exceeded for agent " + s.agent_names[i]);
            top += last.get_num().get_si();
            for (std::size_t x = 0; x <= s.counts[j]; ++x)
                u[i][j].push_back(f(x).exact().get_num().get_si());
        }
        if (top > limits.max_utility)
            throw LimitsExceeded("utility bound exceeded for agent " + s.agent_names[i]);
    }

    std::size_t states = 1;
    for (const std::size_t c : s.counts)
        states *= c + 1;
    const double work = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(states)
                        * static_cast<double>(states) * static_cast<double>(states);
    if (work > limits.max_work)
        throw LimitsExceeded("instance too large for psi_multitype");

    if (s.total_items() == 0)
        return finish(s, 0, Allocation(n, k), Value());

    Rational total_w = 0;
    for (const auto& wi : w)
        total_w += wi;

    // Decodes a mixed-radix index into per-type counts with radices limit_j + 1.
    const auto decode = [k](std::size_t idx, const std::vector<std::size_t>& limit) {
        std::vector<std::size_t> b(k);
        for (std::size_t j = k; j-- > 0;) {
            b[j] = idx % (limit[j] + 1);
            idx /= limit[j] + 1;
        }
        return b;
    };
    const auto encode = [k](const std::vector<std::size_t>& b, const std::vector<std::size_t>& limit) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < k; ++j)
            idx = idx * (limit[j] + 1) + b[j];
        return idx;
    };

    bool found = false;
    Rational best_twd;
    std::size_t best_pivot = 0;
    Allocation best_x;

    for (std::size_t p = 0; p < n; ++p) {
        const Rational others = total_w - w[p];
        for (std::size_t tuple = 1; tuple < states; ++tuple) {
            const std::vector<std::size_t> held = decode(tuple, s.counts);
            long up = 0;
            std::vector<std::size_t> rem(k);
            for (std::size_t j = 0; j < k; ++j) {
                up += u[p][j][held[j]];
                rem[j] = s.counts[j] - held[j];
            }
            std::size_t rem_states = 1;
            for (const std::size_t r : rem)
                rem_states *= r + 1;
            std::vector<std::vector<std::size_t>> cells(rem_states);
            for (std::size_t idx = 0; idx < rem_states; ++idx)
                cells[idx] = decode(idx, rem);

            std::vector<long> dp(rem_states, -1);
            dp[0] = 0;
            std::vector<std::size_t> order;
            std::vector<std::vector<std::size_t>> choice;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == p)
                    continue;
                // u_i / w_i <= u_p / w_p  <=>  u_i <= floor(w_i u_p / w_p).
                Rational bound = w[i] * Rational(up) / w[p];
                Integer cap;
                mpz_fdiv_q(cap.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
                const long cap_l = cap.get_si();

                std::vector<long> bundle_value(rem_states);
                for (std::size_t b = 0; b < rem_states; ++b) {
                    long v = 0;
                    for (std::size_t j = 0; j < k; ++j)
                        v += u[i][j][cells[b][j]];
                    bundle_value[b] = v;
                }
                std::vector<long> next(rem_states, -1);
                std::vector<std::size_t> pick(rem_states, 0);
                for (std::size_t from = 0; from < rem_states; ++from) {
                    if (dp[from] < 0)
                        continue;
                    for (std::size_t b = 0; b < rem_states; ++b) {
                        if (bundle_value[b] > cap_l)
                            continue;
                        std::vector<std::size_t> sum(k);
                        bool fits = true;
                        for (std::size_t j = 0; j < k && fits; ++j) {
                            sum[j] = cells[from][j] + cells[b][j];
                            fits = sum[j] <= rem[j];
                        }
                        if (!fits)
                            continue;
                        const std::size_t to = encode(sum, rem);
                        const long v = dp[from] + bundle_value[b];
                        if (v > next[to]) {
                            next[to] = v;
                            pick[to] = b;
                        }
                    }
                }
                dp = std::move(next);
                order.push_back(i);
                choice.push_back(std::move(pick));
            }

            const std::size_t full = rem_states - 1;
            if (dp[full] < 0)
                continue;
            const Rational twd = others * Rational(up) - w[p] * Rational(dp[full]);
            if (found && twd >= best_twd)
                continue;
            found = true;
            best_twd = twd;
            best_pivot = p;
            best_x = Allocation(n, k);
            for (std::size_t j = 0; j < k; ++j)
                best_x(p, j) = held[j];
            std::size_t state = full;
            for (std::size_t r = order.size(); r-- > 0;) {
                const std::size_t b = choice[r][state];
                std::vector<std::size_t> prev(k);
                for (std::size_t j = 0; j < k; ++j) {
                    best_x(order[r], j) = cells[b][j];
                    prev[j] = cells[state][j] - cells[b][j];
                }
                state = encode(prev, rem);
            }
        }
    }
    return finish(s, best_pivot, std::move(best_x), Value(best_twd));
}

PerTypeDeficit psi_per_type(const Scenario& s)
{
    s.validate();
    const std::size_t n = s.agents();
    PerTypeDeficit out;
    out.allocation = Allocation(n, s.types());
    for (std::size_t j = 0; j < s.types(); ++j) {
        Scenario sub;
        sub.agent_names = s.agent_names;
        sub.type_names = {s.type_names[j]};
        sub.counts = {s.counts[j]};
        sub.epsilon = s.epsilon;
        for (std::size_t i = 0; i < n; ++i) {
            sub.weights.push_back({s.weight(i, j)});
            sub.utilities.push_back({s.utility(i, j)});
        }
        DeficitResult r = psi(sub);
        for (std::size_t i = 0; i < n; ++i)
            out.allocation(i, j) = r.allocation(i);
        out.total_twd += r.twd;
        out.per_type.push_back(std::move(r));
    }
    return out;
}

} // namespace eqalloc
