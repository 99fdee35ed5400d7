#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace gromov {

/// Exact nonnegative-or-signed rational with 64-bit numerator and denominator.
/// Always normalized: gcd(num, den) == 1 and den > 0.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view text);

    /// 2^-exponent; exponent must be at most 62.
    static Rational pow2_neg(unsigned exponent);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_positive() const { return num_ > 0; }

    Rational operator/(std::int64_t divisor) const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::string to_string() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }

}  // namespace gromov
