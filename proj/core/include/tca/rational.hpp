#pragma once

#include <compare>
#include <iosfwd>
#include <string>

namespace tca {

/// Exact rational arithmetic for clock values and guard constants.
///
/// Values are kept in lowest terms with a positive denominator, so structural
/// equality coincides with numeric equality. Conflict verdicts depend on exact
/// comparisons at window boundaries, which rules out floating point.
class Rational {
public:
    constexpr Rational() = default;
    Rational(long long numerator) : num_(numerator), den_(1) {}  // NOLINT: implicit by design
    Rational(long long numerator, long long denominator);

    /// Parses a decimal string ("15", "-3.25", "0.5") or a fraction ("1/3")
    /// into an exact value. Throws std::invalid_argument on malformed input.
    static Rational parse(const std::string& text);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// Decimal rendering when the expansion terminates ("0.5", "-3.25"),
    /// "num/den" otherwise.
    std::string str() const;

private:
    long long num_ = 0;
    long long den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace tca
