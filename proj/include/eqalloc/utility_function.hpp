#pragma once

#include "eqalloc/value.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace eqalloc {

// Utility of holding x identical items of one type. Every variant satisfies
// f(0) = 0 and f(x+1) > f(x).
//
//   tabulated  exact values f(0..N), stored compactly over a common
//              denominator when the scaled numerators fit in 64 bits
//   linear     f(x) = rate * x, exact
//   power      f(x) = c * x^a, double precision
//   log        f(x) = ln(1 + x), double precision
//
// Copies are cheap: tabulated storage is shared and immutable.
class UtilityFunction {
public:
    enum class Kind { tabulated, linear, power, log };

    // Throws ValidationError unless values[0] == 0 and values strictly increase.
    static UtilityFunction tabulated(const std::vector<Rational>& values);
    static UtilityFunction tabulated(std::vector<std::int64_t> values);
    static UtilityFunction linear(Rational rate);
    static UtilityFunction power(double c, double a);
    static UtilityFunction log();

    Kind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ == Kind::tabulated || kind_ == Kind::linear; }

    // Largest admissible argument; nullopt for the parametric variants.
    std::optional<std::size_t> max_count() const noexcept;

    // f(x). Throws DomainError when x exceeds a table.
    Value operator()(std::size_t x) const;

    // f(x+1) - f(x).
    Value gain(std::size_t x) const;

    // Exact table contents (tabulated only).
    std::vector<Rational> table() const;
    const Rational& rate() const { return rate_; }
    double coefficient() const noexcept { return c_; }
    double exponent() const noexcept { return a_; }

    // True when every value the function takes on {0..m} is an integer.
    bool is_integer_valued(std::size_t m) const;

    friend bool operator==(const UtilityFunction& a, const UtilityFunction& b);

private:
    struct Table;
    friend bool check_concave(const UtilityFunction& f, std::size_t m);

    UtilityFunction() = default;

    Kind kind_ = Kind::linear;
    std::shared_ptr<const Table> table_;
    Rational rate_;
    double c_ = 0.0;
    double a_ = 0.0;
};

Value eval_utility(const UtilityFunction& f, std::size_t x);

// min{ x >= 0 : f(x) >= y }, using the scenario tolerance for float variants.
// Throws UnreachableValue when a table never reaches y.
std::size_t ceil_inverse(const UtilityFunction& f, const Value& y, double eps = kDefaultEpsilon);

// Non-increasing increments over {0..m}. Power is concave iff a <= 1.
bool check_concave(const UtilityFunction& f, std::size_t m);

} // namespace eqalloc
