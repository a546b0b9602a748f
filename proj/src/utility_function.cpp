#include "eqalloc/utility_function.hpp"

#include "eqalloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace eqalloc {

struct UtilityFunction::Table {
    // Compact form: f(x) = scaled[x] / denominator. Used whenever it fits.
    std::vector<std::int64_t> scaled;
    Integer denominator = 1;
    // General form, non-empty only when the compact form would overflow.
    std::vector<Rational> values;

    bool compact() const noexcept { return values.empty(); }
    std::size_t size() const noexcept { return compact() ? scaled.size() : values.size(); }

    Rational at(std::size_t x) const
    {
        if (!compact())
            return values[x];
        Rational r(static_cast<long>(scaled[x]));
        if (denominator != 1)
            r /= Rational(denominator);
        return r;
    }

    Rational step(std::size_t x) const
    {
        if (!compact())
            return values[x + 1] - values[x];
        Rational r(static_cast<long>(scaled[x + 1] - scaled[x]));
        if (denominator != 1)
            r /= Rational(denominator);
        return r;
    }
};

namespace {

[[noreturn]] void not_increasing(std::size_t x)
{
    throw ValidationError("utility not strictly increasing at x=" + std::to_string(x));
}

constexpr double kMaxCount = 1e15;

} // namespace

UtilityFunction UtilityFunction::tabulated(const std::vector<Rational>& values)
{
    if (values.empty())
        throw ValidationError("utility table is empty");
    if (values.front() != 0)
        throw ValidationError("utility table must start with f(0) = 0");
    for (std::size_t x = 1; x < values.size(); ++x)
        if (values[x] <= values[x - 1])
            not_increasing(x);

    auto table = std::make_shared<Table>();
    Integer lcm = 1;
    for (const auto& v : values)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());

    bool fits = true;
    table->scaled.reserve(values.size());
    for (const auto& v : values) {
        Integer scaled = v.get_num() * (lcm / v.get_den());
        if (!scaled.fits_slong_p()) {
            fits = false;
            break;
        }
        table->scaled.push_back(scaled.get_si());
    }
    if (fits) {
        table->denominator = lcm;
    } else {
        table->scaled.clear();
        table->values = values;
    }

    UtilityFunction f;
    f.kind_ = Kind::tabulated;
    f.table_ = std::move(table);
    return f;
}

UtilityFunction UtilityFunction::tabulated(std::vector<std::int64_t> values)
{
    if (values.empty())
        throw ValidationError("utility table is empty");
    if (values.front() != 0)
        throw ValidationError("utility table must start with f(0) = 0");
    for (std::size_t x = 1; x < values.size(); ++x)
        if (values[x] <= values[x - 1])
            not_increasing(x);

    auto table = std::make_shared<Table>();
    table->scaled = std::move(values);
    UtilityFunction f;
    f.kind_ = Kind::tabulated;
    f.table_ = std::move(table);
    return f;
}

UtilityFunction UtilityFunction::linear(Rational rate)
{
    if (rate <= 0)
        throw ValidationError("linear utility rate must be positive");
    UtilityFunction f;
    f.kind_ = Kind::linear;
    f.rate_ = std::move(rate);
    f.rate_.canonicalize();
    return f;
}

UtilityFunction UtilityFunction::power(double c, double a)
{
    if (!(c > 0.0) || !(a > 0.0) || !std::isfinite(c) || !std::isfinite(a))
        throw ValidationError("power utility needs finite c > 0 and a > 0");
    UtilityFunction f;
    f.kind_ = Kind::power;
    f.c_ = c;
    f.a_ = a;
    return f;
}

UtilityFunction UtilityFunction::log()
{
    UtilityFunction f;
    f.kind_ = Kind::log;
    return f;
}

std::optional<std::size_t> UtilityFunction::max_count() const noexcept
{
    if (kind_ == Kind::tabulated)
        return table_->size() - 1;
    return std::nullopt;
}

Value UtilityFunction::operator()(std::size_t x) const
{
    switch (kind_) {
    case Kind::tabulated:
        if (x >= table_->size())
            throw DomainError("utility evaluated at x=" + std::to_string(x) + " beyond table domain 0.."
                              + std::to_string(table_->size() - 1));
        return Value(table_->at(x));
    case Kind::linear:
        return Value(Rational(rate_ * Rational(static_cast<unsigned long>(x))));
    case Kind::power:
        return Value(x == 0 ? 0.0 : c_ * std::pow(static_cast<double>(x), a_));
    case Kind::log:
        return Value(std::log1p(static_cast<double>(x)));
    }
    return Value();
}

Value UtilityFunction::gain(std::size_t x) const
{
    switch (kind_) {
    case Kind::tabulated:
        if (x + 1 >= table_->size())
            throw DomainError("utility evaluated at x=" + std::to_string(x + 1) + " beyond table domain 0.."
                              + std::to_string(table_->size() - 1));
        return Value(table_->step(x));
    case Kind::linear:
        return Value(rate_);
    case Kind::power: {
        const double lo = x == 0 ? 0.0 : std::pow(static_cast<double>(x), a_);
        return Value(c_ * (std::pow(static_cast<double>(x + 1), a_) - lo));
    }
    case Kind::log:
        return Value(std::log1p(1.0 / static_cast<double>(x + 1)));
    }
    return Value();
}

std::vector<Rational> UtilityFunction::table() const
{
    if (kind_ != Kind::tabulated)
        throw std::logic_error("table() called on a parametric utility");
    std::vector<Rational> out;
    out.reserve(table_->size());
    for (std::size_t x = 0; x < table_->size(); ++x)
        out.push_back(table_->at(x));
    return out;
}

bool UtilityFunction::is_integer_valued(std::size_t m) const
{
    switch (kind_) {
    case Kind::tabulated: {
        if (table_->compact())
            return table_->denominator == 1;
        const std::size_t hi = std::min(m, table_->size() - 1);
        for (std::size_t x = 0; x <= hi; ++x)
            if (!is_integer(table_->values[x]))
                return false;
        return true;
    }
    case Kind::linear:
        return is_integer(rate_);
    default:
        return false;
    }
}

bool operator==(const UtilityFunction& a, const UtilityFunction& b)
{
    if (a.kind_ != b.kind_)
        return false;
    switch (a.kind_) {
    case UtilityFunction::Kind::tabulated:
        return a.table_ == b.table_ || a.table() == b.table();
    case UtilityFunction::Kind::linear:
        return a.rate_ == b.rate_;
    case UtilityFunction::Kind::power:
        return a.c_ == b.c_ && a.a_ == b.a_;
    case UtilityFunction::Kind::log:
        return true;
    }
    return false;
}

Value eval_utility(const UtilityFunction& f, std::size_t x)
{
    return f(x);
}

std::size_t ceil_inverse(const UtilityFunction& f, const Value& y, double eps)
{
    if (compare(y, Value(), eps) <= 0)
        return 0;

    using Kind = UtilityFunction::Kind;
    if (f.kind() == Kind::tabulated) {
        const std::size_t top = *f.max_count();
        if (compare(f(top), y, eps) < 0)
            throw UnreachableValue("utility value " + y.to_string() + " exceeds f(" + std::to_string(top) + ")");
        std::size_t lo = 0;
        std::size_t hi = top;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (compare(f(mid), y, eps) >= 0)
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

    if (f.kind() == Kind::linear && y.is_exact()) {
        Rational q = y.exact() / f.rate();
        Integer c;
        mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        if (!c.fits_ulong_p())
            throw UnreachableValue("utility value " + y.to_string() + " needs too many items");
        return c.get_ui();
    }

    double estimate = 0.0;
    switch (f.kind()) {
    case Kind::linear:
        estimate = y.approx() / f.rate().get_d();
        break;
    case Kind::power:
        estimate = std::pow(y.approx() / f.coefficient(), 1.0 / f.exponent());
        break;
    case Kind::log:
        estimate = std::expm1(y.approx());
        break;
    case Kind::tabulated:
        break;
    }
    if (!std::isfinite(estimate) || estimate > kMaxCount)
        throw UnreachableValue("utility value " + y.to_string() + " needs too many items");

    // The analytic inverse is only a starting point; settle on the exact
    // integer predicate under the comparison tolerance.
    auto x = static_cast<std::size_t>(std::max(0.0, std::ceil(estimate)));
    while (compare(f(x), y, eps) < 0)
        ++x;
    while (x > 0 && compare(f(x - 1), y, eps) >= 0)
        --x;
    return x;
}

bool check_concave(const UtilityFunction& f, std::size_t m)
{
    using Kind = UtilityFunction::Kind;
    switch (f.kind()) {
    case Kind::linear:
    case Kind::log:
        return true;
    case Kind::power:
        return f.exponent() <= 1.0;
    case Kind::tabulated:
        break;
    }
    const auto& table = *f.table_;
    const std::size_t hi = std::min(m, table.size() - 1);
    if (table.compact()) {
        for (std::size_t x = 1; x < hi; ++x)
            if (table.scaled[x + 1] - table.scaled[x] > table.scaled[x] - table.scaled[x - 1])
                return false;
        return true;
    }
    for (std::size_t x = 1; x < hi; ++x)
        if (table.step(x) > table.step(x - 1))
            return false;
    return true;
}

} // namespace eqalloc
