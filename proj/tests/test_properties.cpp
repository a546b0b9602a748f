#include "eqalloc/deficit.hpp"
#include "eqalloc/evaluation.hpp"
#include "eqalloc/oracle.hpp"
#include "eqalloc/share_fairness.hpp"
#include "eqalloc/welfare_solvers.hpp"

#include <doctest.h>

#include <random>

using namespace eqalloc;

namespace {

constexpr int kInstances = 200;

std::vector<Scenario> family(std::uint64_t seed, RandomScenarioOptions options = {})
{
    std::mt19937_64 rng(seed);
    std::vector<Scenario> out;
    for (int r = 0; r < kInstances; ++r)
        out.push_back(random_scenario(rng, options));
    return out;
}

bool admits_weq(const Scenario& s)
{
    for (const Allocation& x : enumerate_allocations(s))
        if (check_fairness(s, x, Property::weq).holds)
            return true;
    return false;
}

} // namespace

TEST_CASE("utilitarian welfare matches exhaustive search")
{
    for (const Scenario& s : family(101)) {
        const WelfareReport greedy = solve_utilitarian(s);
        CHECK(greedy.utilitarian.exact() == oracle_best(s, Objective::utilitarian).utilitarian.exact());
    }
}

TEST_CASE("maximin and leximin match exhaustive search")
{
    for (const Scenario& s : family(102)) {
        const WelfareReport maximin = solve_maximin(s, s.counts[0]);
        CHECK(maximin.rawlsian->exact() == oracle_best(s, Objective::rawlsian).rawlsian->exact());
        const WelfareReport leximin = solve_leximin(s);
        for (const Allocation& x : enumerate_allocations(s))
            CHECK(compare_leximin(leximin.ratios, welfare_report(s, x).ratios) >= 0);
    }
}

TEST_CASE("maximin outputs are WEQX and satisfy the strict exchange bound")
{
    for (const Scenario& s : family(103)) {
        CHECK(check_fairness(s, solve_leximin(s).allocation, Property::weqx).holds);
        for (std::size_t t = 0; t <= s.counts[0]; ++t) {
            const WelfareReport r = solve_maximin(s, t);
            if (t == s.counts[0])
                CHECK(check_fairness(s, r.allocation, Property::weqx).holds);
            if (*r.counter_items != t)
                continue;
            const Allocation& x = r.allocation;
            for (std::size_t i = 0; i < s.agents(); ++i)
                for (std::size_t j = 0; j < s.agents(); ++j)
                    if (i != j && x(j) > 0)
                        CHECK(s.utility(i)(x(i)).exact() / s.weight(i)
                              > s.utility(j)(x(j) - 1).exact() / s.weight(j));
        }
    }
}

TEST_CASE("psi matches the exhaustive minimum deficit")
{
    for (const Scenario& s : family(104)) {
        const DeficitResult d = psi(s);
        const Rational best = oracle_best(s, Objective::min_twd).twd->exact();
        CHECK(d.twd.exact() == best);
        CHECK((d.twd.exact() == 0) == admits_weq(s));
        Rational low = psi_p(s, 0).twd.exact();
        for (std::size_t p = 1; p < s.agents(); ++p)
            low = std::min(low, psi_p(s, p).twd.exact());
        CHECK(low == d.twd.exact());
        CHECK(welfare_report(s, d.allocation).twd->exact() == d.twd.exact());
    }
}

TEST_CASE("coin plans are equitable and minimal")
{
    for (const Scenario& s : family(105)) {
        const CoinPlan plan = coin_compensation(s);
        for (const auto& r : plan.final_ratios)
            CHECK(r == plan.final_ratios.front());
        CHECK(plan.total_coins == oracle_min_coins(s));
        CHECK(plan.transfers[plan.pivot] == 0);
    }
}

TEST_CASE("WMMS shares and existence match exhaustive search")
{
    for (const Scenario& s : family(106)) {
        const WmmsDecision d = decide_wmms(s);
        const OracleWmms o = oracle_wmms(s);
        for (std::size_t i = 0; i < s.agents(); ++i)
            CHECK(d.shares.mu[i].exact() == o.shares.mu[i].exact());
        CHECK(d.exists == o.exists);
        if (d.exists)
            CHECK(check_fairness(s, *d.allocation, Property::wmms, d.shares.mu).holds);
    }
}

TEST_CASE("WMMS agrees with exhaustive search on non-concave utilities")
{
    RandomScenarioOptions options;
    options.concave = false;
    for (const Scenario& s : family(107, options)) {
        const WmmsDecision d = decide_wmms(s);
        const OracleWmms o = oracle_wmms(s);
        for (std::size_t i = 0; i < s.agents(); ++i)
            CHECK(d.shares.mu[i].exact() == o.shares.mu[i].exact());
        CHECK(d.exists == o.exists);
    }
}

TEST_CASE("restricted utilitarian is infeasible exactly when no allocation respects the caps")
{
    std::mt19937_64 rng(108);
    for (const Scenario& s : family(108)) {
        RestrictionVector bounds;
        for (std::size_t i = 0; i < s.agents(); ++i) {
            const std::size_t cap = std::uniform_int_distribution<std::size_t>(0, s.counts[0])(rng);
            bounds.push_back(s.utility(i)(cap));
        }
        const RestrictedResult r = solve_restricted_utilitarian(s, bounds, s.counts[0]);
        std::optional<Rational> best;
        for (const Allocation& x : enumerate_allocations(s)) {
            bool ok = true;
            for (std::size_t i = 0; i < s.agents() && ok; ++i)
                ok = s.utility(i)(x(i)).exact() <= bounds[i].exact();
            if (ok) {
                const Rational w = welfare_report(s, x).utilitarian.exact();
                if (!best || w > *best)
                    best = w;
            }
        }
        CHECK(r.feasible == best.has_value());
        if (r.feasible)
            CHECK(r.welfare.exact() == *best);
    }
}

TEST_CASE("nash matches exhaustive search")
{
    for (const Scenario& s : family(109)) {
        const WelfareReport greedy = solve_nash(s);
        const WelfareReport exhaustive = oracle_best(s, Objective::nash);
        if (greedy.insufficient_items) {
            CHECK(exhaustive.insufficient_items);
            continue;
        }
        CHECK(*greedy.log_nash == doctest::Approx(*exhaustive.log_nash).epsilon(1e-12));
    }
}

TEST_CASE("fairness checker implications")
{
    for (const Scenario& s : family(110)) {
        for (const Allocation& x : enumerate_allocations(s)) {
            const bool wef = check_fairness(s, x, Property::wef).holds;
            const bool wefx = check_fairness(s, x, Property::wefx).holds;
            const bool wef1 = check_fairness(s, x, Property::wef1).holds;
            const bool weq = check_fairness(s, x, Property::weq).holds;
            const bool weqx = check_fairness(s, x, Property::weqx).holds;
            CHECK((!wef || wefx));
            CHECK((!wefx || wef1));
            CHECK((!weq || weqx));
            CHECK((welfare_report(s, x).twd->exact() == 0) == weq);
        }
    }
}

TEST_CASE("every complete allocation is Pareto optimal")
{
    RandomScenarioOptions options;
    options.max_items = 6;
    for (const Scenario& s : family(111, options)) {
        const auto all = enumerate_allocations(s);
        for (const Allocation& x : all) {
            const auto ux = agent_utilities(s, x);
            for (const Allocation& y : all) {
                const auto uy = agent_utilities(s, y);
                bool weakly = true;
                bool strictly = false;
                for (std::size_t i = 0; i < s.agents(); ++i) {
                    weakly = weakly && uy[i].exact() >= ux[i].exact();
                    strictly = strictly || uy[i].exact() > ux[i].exact();
                }
                CHECK_FALSE((weakly && strictly));
            }
        }
    }
}

TEST_CASE("ceil_inverse inverts random tables")
{
    for (const Scenario& s : family(112))
        for (std::size_t i = 0; i < s.agents(); ++i)
            for (std::size_t x = 0; x <= s.counts[0]; ++x)
                CHECK(ceil_inverse(s.utility(i), s.utility(i)(x)) == x);
}

TEST_CASE("multitype deficit matches exhaustive search")
{
    RandomScenarioOptions options;
    options.types = 2;
    options.max_agents = 3;
    options.min_items = 0;
    options.max_items = 4;
    for (const Scenario& s : family(113, options)) {
        const DeficitResult d = psi_multitype(s);
        CHECK(d.twd.exact() == oracle_best(s, Objective::min_twd).twd->exact());
        CHECK(welfare_report(s, d.allocation).twd->exact() == d.twd.exact());
    }
}

TEST_CASE("multitype deficit with an empty second type equals psi")
{
    for (const Scenario& s : family(114)) {
        Scenario padded = s;
        padded.type_names.push_back("empty");
        padded.counts.push_back(0);
        for (std::size_t i = 0; i < s.agents(); ++i) {
            padded.weights[i].push_back(s.weight(i));
            padded.utilities[i].push_back(UtilityFunction::tabulated(std::vector<std::int64_t>{0}));
        }
        CHECK(psi_multitype(padded).twd.exact() == psi(s).twd.exact());
    }
}
