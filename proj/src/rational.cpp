#include "gromov/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace gromov {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    return value;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, text));
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

Rational Rational::pow2_neg(unsigned exponent) {
    if (exponent > 62)
        throw std::overflow_error("2^-" + std::to_string(exponent) + " does not fit a 64-bit rational");
    return Rational(1, std::int64_t{1} << exponent);
}

Rational Rational::operator/(std::int64_t divisor) const {
    if (divisor == 0)
        throw std::invalid_argument("division by zero");
    const std::int64_t g = std::gcd(num_, divisor);
    const __int128 den = static_cast<__int128>(den_) * (divisor / g);
    if (den > INT64_MAX || den < -INT64_MAX)
        throw std::overflow_error("rational denominator overflow");
    return Rational(num_ / g, static_cast<std::int64_t>(den));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace gromov
