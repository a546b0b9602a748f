#include "eqalloc/value.hpp"

#include "eqalloc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace eqalloc {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad_rational(std::string_view text)
{
    throw ValidationError("invalid rational literal \"" + std::string(text) + "\"");
}

Rational pow10(long exponent)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    return exponent >= 0 ? Rational(p) : Rational(Integer(1), p);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);

    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        bad_rational(text);

    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            bad_rational(text);
        Integer d(std::string(den), 10);
        if (d == 0)
            bad_rational(text);
        result = Rational(Integer(std::string(num), 10), d);
        result.canonicalize();
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6)
                bad_rational(text);
            exponent = std::stol(std::string(exp_text));
            if (exp_negative)
                exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string_view int_part = s;
        std::string_view frac_part;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            int_part = s.substr(0, dot);
            frac_part = s.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty())
            bad_rational(text);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
            bad_rational(text);
        std::string digits = std::string(int_part) + std::string(frac_part);
        result = Rational(Integer(digits, 10)) * pow10(exponent - static_cast<long>(frac_part.size()));
        result.canonicalize();
    }
    return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& r)
{
    Rational c(r);
    c.canonicalize();
    return c.get_str();
}

bool is_integer(const Rational& r)
{
    Rational c(r);
    c.canonicalize();
    return c.get_den() == 1;
}

const Rational& Value::exact() const
{
    if (const auto* r = std::get_if<Rational>(&rep_))
        return *r;
    throw std::logic_error("Value::exact() called on a floating-point value");
}

double Value::approx() const
{
    if (const auto* r = std::get_if<Rational>(&rep_))
        return r->get_d();
    return std::get<double>(rep_);
}

std::string Value::to_string() const
{
    if (const auto* r = std::get_if<Rational>(&rep_))
        return format_rational(*r);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(rep_));
    return buf;
}

Value Value::operator-() const
{
    if (is_exact())
        return Value(Rational(-exact()));
    return Value(-approx());
}

Value& Value::operator+=(const Value& rhs)
{
    if (is_exact() && rhs.is_exact())
        std::get<Rational>(rep_) += rhs.exact();
    else
        rep_ = approx() + rhs.approx();
    return *this;
}

Value& Value::operator-=(const Value& rhs)
{
    if (is_exact() && rhs.is_exact())
        std::get<Rational>(rep_) -= rhs.exact();
    else
        rep_ = approx() - rhs.approx();
    return *this;
}

Value& Value::operator*=(const Value& rhs)
{
    if (is_exact() && rhs.is_exact())
        std::get<Rational>(rep_) *= rhs.exact();
    else
        rep_ = approx() * rhs.approx();
    return *this;
}

Value& Value::operator/=(const Value& rhs)
{
    if (is_exact() && rhs.is_exact()) {
        if (rhs.exact() == 0)
            throw std::domain_error("division by zero");
        std::get<Rational>(rep_) /= rhs.exact();
    } else {
        rep_ = approx() / rhs.approx();
    }
    return *this;
}

int compare(const Value& a, const Value& b, double eps)
{
    if (a.is_exact() && b.is_exact()) {
        const int c = cmp(a.exact(), b.exact());
        return (c > 0) - (c < 0);
    }
    const double x = a.approx();
    const double y = b.approx();
    if (std::isinf(x) || std::isinf(y))
        return x < y ? -1 : (x > y ? 1 : 0);
    const double tol = eps * std::max({1.0, std::fabs(x), std::fabs(y)});
    if (std::fabs(x - y) <= tol)
        return 0;
    return x < y ? -1 : 1;
}

bool order_before(const Value& a, const Value& b)
{
    if (a.is_exact() && b.is_exact())
        return a.exact() < b.exact();
    return a.approx() < b.approx();
}

} // namespace eqalloc
