#include "fixtures.hpp"

#include "eqalloc/errors.hpp"
#include "eqalloc/evaluation.hpp"
#include "eqalloc/utility_function.hpp"
#include "eqalloc/value.hpp"

#include <doctest.h>

#include <cmath>

using namespace eqalloc;

TEST_CASE("parse_rational accepts integers, fractions and decimals")
{
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
    CHECK_THROWS_AS(parse_rational(""), ValidationError);
    CHECK(format_rational(Rational(4)) == "4");
    CHECK(format_rational(Rational(3, 6)) == "1/2");
}

TEST_CASE("value arithmetic stays exact until a float enters")
{
    Value a(Rational(1, 3));
    Value b(Rational(2, 3));
    CHECK((a + b).is_exact());
    CHECK((a + b).exact() == 1);
    Value c = a * Value(3.0);
    CHECK_FALSE(c.is_exact());
    CHECK(equal(c, Value::of(1)));
    CHECK(compare(Value(1.0), Value(1.0 + 1e-12)) == 0);
    CHECK(compare(Value(Rational(1)), Value(Rational(1) + parse_rational("1/1000000000000"))) < 0);
    CHECK_THROWS_AS(c.exact(), std::logic_error);
}

TEST_CASE("eval_utility")
{
    const auto table = UtilityFunction::tabulated(std::vector<std::int64_t>{0, 2, 4, 6, 8, 10, 12, 14});
    CHECK(eval_utility(table, 3).exact() == 6);
    CHECK(eval_utility(table, 0).exact() == 0);
    CHECK_THROWS_AS(eval_utility(table, 8), DomainError);

    const auto identity = UtilityFunction::power(1.0, 1.0);
    CHECK(eval_utility(identity, 5).approx() == doctest::Approx(5.0));
    CHECK(eval_utility(identity, 0).approx() == 0.0);
    CHECK(eval_utility(UtilityFunction::log(), 0).approx() == 0.0);
    CHECK(eval_utility(UtilityFunction::log(), 2).approx() == doctest::Approx(std::log(3.0)));
    CHECK(eval_utility(UtilityFunction::linear(Rational(3, 2)), 4).exact() == 6);
}

TEST_CASE("tabulated utilities are validated")
{
    CHECK_THROWS_AS(UtilityFunction::tabulated(std::vector<std::int64_t>{1, 2}), ValidationError);
    CHECK_THROWS_WITH(UtilityFunction::tabulated(std::vector<std::int64_t>{0, 1, 2, 2}),
                      "utility not strictly increasing at x=3");
    CHECK_THROWS_AS(UtilityFunction::linear(Rational(0)), ValidationError);
    CHECK_THROWS_AS(UtilityFunction::power(1.0, 0.0), ValidationError);

    const std::vector<Rational> fractional{Rational(0), Rational(1, 3), Rational(1, 2)};
    const auto f = UtilityFunction::tabulated(fractional);
    CHECK(f(2).exact() == Rational(1, 2));
    CHECK(f.table() == fractional);
    CHECK_FALSE(f.is_integer_valued(2));
}

TEST_CASE("ceil_inverse")
{
    const auto f = UtilityFunction::tabulated(std::vector<std::int64_t>{0, 2, 4, 6});
    CHECK(ceil_inverse(f, Value::of(3)) == 2);
    CHECK(ceil_inverse(f, Value::of(4)) == 2);
    CHECK(ceil_inverse(f, Value::of(0)) == 0);
    CHECK_THROWS_AS(ceil_inverse(f, Value::of(7)), UnreachableValue);

    const auto lin = UtilityFunction::linear(Rational(3));
    CHECK(ceil_inverse(lin, Value(Rational(7))) == 3);
    CHECK(ceil_inverse(lin, Value(Rational(6))) == 2);

    const auto root = UtilityFunction::power(1.0, 0.5);
    CHECK(ceil_inverse(root, Value(2.0)) == 4);
    CHECK(ceil_inverse(root, Value(2.0000001)) == 5);
    CHECK(ceil_inverse(UtilityFunction::log(), Value(std::log(5.0))) == 4);
}

TEST_CASE("ceil_inverse inverts every variant on its domain")
{
    const std::vector<UtilityFunction> fs{
        UtilityFunction::tabulated(std::vector<std::int64_t>{0, 5, 9, 12, 14, 15}),
        UtilityFunction::linear(Rational(7, 3)),
        UtilityFunction::power(2.5, 0.5),
        UtilityFunction::power(0.3, 1.7),
        UtilityFunction::log(),
    };
    for (const auto& f : fs)
        for (std::size_t x = 0; x <= 5; ++x)
            CHECK(ceil_inverse(f, f(x)) == x);
}

TEST_CASE("check_concave")
{
    CHECK(check_concave(UtilityFunction::tabulated(std::vector<std::int64_t>{0, 3, 5, 6}), 3));
    CHECK_FALSE(check_concave(UtilityFunction::tabulated(std::vector<std::int64_t>{0, 1, 3, 6}), 3));
    CHECK(check_concave(UtilityFunction::power(2.0, 1.0), 10));
    CHECK_FALSE(check_concave(UtilityFunction::power(2.0, 1.5), 10));
    CHECK(check_concave(UtilityFunction::linear(Rational(5)), 10));
    CHECK(check_concave(UtilityFunction::log(), 10));
}

TEST_CASE("scenario validation names the violated invariant")
{
    Scenario s = fixtures::seats();
    CHECK_NOTHROW(s.validate());
    s.weights[1][0] = 0;
    CHECK_THROWS_AS(s.validate(), ValidationError);

    Scenario t = fixtures::tables({{0, 1, 2}, {0, 2, 3}}, {1, 1});
    t.counts[0] = 3;
    CHECK_THROWS_WITH(t.validate(), "utility table of agent A1 for type item has length 3, expected 4");
}

TEST_CASE("welfare_report on the seat scenario")
{
    const Scenario s = fixtures::seats();
    const WelfareReport a = welfare_report(s, fixtures::counts({4, 1, 1, 1}));
    CHECK(a.utilities[0].exact() == 8);
    CHECK(a.utilities[1].exact() == 4);
    CHECK(a.utilities[2].exact() == 7);
    CHECK(a.utilities[3].exact() == 7);
    CHECK(a.twd->exact() == 6);
    CHECK(a.utilitarian.exact() == 26);
    CHECK(a.rawlsian->exact() == 4);

    const WelfareReport b = welfare_report(s, fixtures::counts({3, 2, 1, 1}));
    CHECK(b.twd->exact() == 4);
    CHECK(b.utilities[1].exact() == 8);

    CHECK_THROWS_AS(welfare_report(s, fixtures::counts({3, 2, 1, 0})), IncompleteAllocation);
    CHECK_NOTHROW(welfare_report(s, fixtures::counts({3, 2, 1, 0}), true));

    const Scenario single = fixtures::linear({3}, {2}, 5);
    CHECK(welfare_report(single, fixtures::counts({5})).twd->exact() == 0);
}

TEST_CASE("twd pivot prefers the lighter agent among equal ratios")
{
    const std::vector<Value> u{Value::of(2), Value::of(1)};
    const std::vector<Rational> w{Rational(2), Rational(1)};
    CHECK(twd_pivot(u, w, kDefaultEpsilon) == 1);
    CHECK(total_weighted_deficit(u, w, kDefaultEpsilon).exact() == 0);
}

TEST_CASE("check_fairness examples")
{
    const Scenario s = fixtures::seats();
    CHECK(check_fairness(s, fixtures::counts({3, 2, 1, 1}), Property::weqx).holds);

    const FairnessResult weq = check_fairness(s, fixtures::counts({4, 1, 1, 1}), Property::weq);
    CHECK_FALSE(weq.holds);
    REQUIRE(weq.witness);
    CHECK(weq.witness->first == 1);
    CHECK(weq.witness->second == 0);

    for (std::size_t m = 1; m <= 4; ++m) {
        const Scenario twin = fixtures::linear({1, 1}, {1, 1}, m);
        const FairnessResult ef = check_fairness(twin, fixtures::counts({m, 0}), Property::wef);
        CHECK_FALSE(ef.holds);
        CHECK(ef.witness->first == 1);
        CHECK(ef.witness->second == 0);
    }
}

TEST_CASE("check_fairness WMMS needs shares")
{
    const Scenario s = fixtures::seats();
    const auto x = fixtures::counts({3, 2, 1, 1});
    CHECK_THROWS_AS(check_fairness(s, x, Property::wmms), PreconditionError);
    const std::vector<Value> mu{Value::of(2), Value::of(4), Value::of(7), Value::of(7)};
    CHECK(check_fairness(s, x, Property::wmms, mu).holds);
    const std::vector<Value> high{Value::of(2), Value::of(9), Value::of(7), Value::of(7)};
    const FairnessResult r = check_fairness(s, x, Property::wmms, high);
    CHECK_FALSE(r.holds);
    CHECK(r.witness->first == 1);
}

TEST_CASE("property names round-trip")
{
    for (const Property p : {Property::wef, Property::wef1, Property::wefx, Property::weq, Property::weqx,
                             Property::wmms})
        CHECK(parse_property(property_name(p)) == p);
    CHECK_THROWS_AS(parse_property("efx2"), ValidationError);
}

TEST_CASE("compare_leximin orders sorted ratio vectors")
{
    const std::vector<Value> a{Value::of(6), Value::of(8), Value::of(7), Value::of(7)};
    const std::vector<Value> b{Value::of(8), Value::of(4), Value::of(7), Value::of(7)};
    CHECK(compare_leximin(a, b) > 0);
    CHECK(compare_leximin(b, a) < 0);
    CHECK(compare_leximin(a, a) == 0);
}
