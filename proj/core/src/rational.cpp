#include "tca/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace tca {

namespace {

long long checked_abs(long long v) { return v < 0 ? -v : v; }

}  // namespace

Rational::Rational(long long numerator, long long denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    const long long g = std::gcd(checked_abs(numerator), denominator);
    num_ = g > 1 ? numerator / g : numerator;
    den_ = g > 1 ? denominator / g : denominator;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    // Cross-reduce before multiplying.
    const long long g1 = std::gcd(checked_abs(num_), o.den_);
    const long long g2 = std::gcd(checked_abs(o.num_), den_);
    return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) {
        throw std::invalid_argument("Rational: division by zero");
    }
    return Rational(num_ * o.den_, den_ * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    const __int128 lhs = static_cast<__int128>(num_) * o.den_;
    const __int128 rhs = static_cast<__int128>(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::parse(const std::string& text) {
    std::size_t pos = 0;
    const std::size_t n = text.size();
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational constant: '" + text + "'");
    };

    if (n == 0) return fail();

    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }

    const std::size_t slash = text.find('/', pos);
    if (slash != std::string::npos) {
        // Fraction form, both parts plain integers.
        for (std::size_t i = pos; i < n; ++i) {
            if (i != slash && !std::isdigit(static_cast<unsigned char>(text[i]))) return fail();
        }
        if (slash == pos || slash + 1 >= n) return fail();
        const long long num = std::strtoll(text.substr(pos, slash - pos).c_str(), nullptr, 10);
        const long long den = std::strtoll(text.substr(slash + 1).c_str(), nullptr, 10);
        if (den == 0) return fail();
        return Rational(negative ? -num : num, den);
    }

    long long intpart = 0;
    long long frac = 0;
    long long scale = 1;
    std::size_t digits = 0;
    while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        intpart = intpart * 10 + (text[pos] - '0');
        ++pos;
        ++digits;
    }
    if (pos < n) {
        if (text[pos] != '.') return fail();
        ++pos;
        while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            frac = frac * 10 + (text[pos] - '0');
            scale *= 10;
            ++pos;
            ++digits;
        }
        if (pos != n) return fail();
    }
    if (digits == 0 || digits > 15) return fail();

    const long long num = intpart * scale + frac;
    return Rational(negative ? -num : num, scale);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);

    unsigned long long n = static_cast<unsigned long long>(checked_abs(num_));
    const unsigned long long d = static_cast<unsigned long long>(den_);
    std::string out = num_ < 0 ? "-" : "";
    out += std::to_string(n / d);
    n %= d;
    std::string frac;
    while (n != 0 && frac.size() < 32) {
        n *= 10;
        frac += static_cast<char>('0' + n / d);
        n %= d;
    }
    if (n != 0) {
        // Non-terminating expansion; emit the exact fraction instead.
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    out += "." + frac;
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace tca
