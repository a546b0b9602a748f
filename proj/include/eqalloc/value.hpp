#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace eqalloc {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr double kDefaultEpsilon = 1e-9;

// Parses "7", "-3/4", "0.125" or "2.5e-3" into an exact rational.
// Throws ValidationError on anything else, including zero denominators.
Rational parse_rational(std::string_view text);

// Canonical form: "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& r);

bool is_integer(const Rational& r);

// A utility-scale quantity: either an exact rational or a double that must be
// compared with a tolerance. Arithmetic between two exact values stays exact;
// any float operand promotes the result to double.
class Value {
public:
    Value() : rep_(Rational(0)) {}
    Value(Rational r) : rep_(std::move(r)) {}
    explicit Value(double d) : rep_(d) {}

    static Value of(long v) { return Value(Rational(v)); }

    bool is_exact() const noexcept { return std::holds_alternative<Rational>(rep_); }

    // Throws std::logic_error when the value is a float.
    const Rational& exact() const;
    double approx() const;

    std::string to_string() const;

    Value operator-() const;
    Value& operator+=(const Value& rhs);
    Value& operator-=(const Value& rhs);
    Value& operator*=(const Value& rhs);
    Value& operator/=(const Value& rhs);

    friend Value operator+(Value lhs, const Value& rhs) { return lhs += rhs; }
    friend Value operator-(Value lhs, const Value& rhs) { return lhs -= rhs; }
    friend Value operator*(Value lhs, const Value& rhs) { return lhs *= rhs; }
    friend Value operator/(Value lhs, const Value& rhs) { return lhs /= rhs; }

private:
    std::variant<Rational, double> rep_;
};

// Three-way comparison. Two exact values compare exactly; otherwise the values
// are treated as equal when |a - b| <= eps * max(1, |a|, |b|).
int compare(const Value& a, const Value& b, double eps = kDefaultEpsilon);

inline bool equal(const Value& a, const Value& b, double eps = kDefaultEpsilon)
{
    return compare(a, b, eps) == 0;
}

inline bool less(const Value& a, const Value& b, double eps = kDefaultEpsilon)
{
    return compare(a, b, eps) < 0;
}

// Tolerance-free ordering for sorting: exact when both operands are exact,
// by double otherwise.
bool order_before(const Value& a, const Value& b);

} // namespace eqalloc
