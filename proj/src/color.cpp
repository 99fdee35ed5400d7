#include "gromov/color.hpp"

#include <algorithm>
#include <stdexcept>

namespace gromov {

Color Color::from_bits(std::string_view bits) {
    for (char c : bits)
        if (c != '0' && c != '1')
            throw std::invalid_argument("color bits must be '0' or '1', got '" + std::string(bits) + "'");
    const auto last_one = bits.find_last_of('1');
    Color color;
    if (last_one != std::string_view::npos)
        color.bits_ = std::string(bits.substr(0, last_one + 1));
    return color;
}

std::string Color::prefix(std::size_t length) const {
    std::string out = bits_.substr(0, std::min(length, bits_.size()));
    out.resize(length, '0');
    return out;
}

std::ostream& operator<<(std::ostream& os, const Color& c) { return os << '"' << c.bits() << '"'; }

bool pow2_neg_less_than(std::size_t exponent, const Rational& bound) {
    if (!bound.is_positive())
        return false;
    // 2^-i < p/q  <=>  q < p * 2^i
    if (exponent >= 64)
        return true;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(bound.num()) << exponent;
    return static_cast<unsigned __int128>(bound.den()) < rhs;
}

bool DyadicDistance::less_than(const Rational& bound) const {
    if (is_zero())
        return bound.is_positive();
    return pow2_neg_less_than(*exponent_, bound);
}

Rational DyadicDistance::to_rational() const {
    if (is_zero())
        return Rational(0);
    return Rational::pow2_neg(static_cast<unsigned>(*exponent_));
}

std::strong_ordering operator<=>(const DyadicDistance& a, const DyadicDistance& b) {
    if (a.is_zero() || b.is_zero())
        return b.is_zero() <=> a.is_zero();
    // larger exponent is the smaller distance
    return *b.exponent_ <=> *a.exponent_;
}

std::ostream& operator<<(std::ostream& os, const DyadicDistance& d) {
    if (d.is_zero())
        return os << "0";
    return os << "2^-" << *d.exponent();
}

DyadicDistance color_distance(const Color& a, const Color& b) {
    const auto& x = a.bits();
    const auto& y = b.bits();
    const auto common = std::min(x.size(), y.size());
    const auto diff = std::mismatch(x.begin(), x.begin() + common, y.begin());
    if (diff.first != x.begin() + common)
        return DyadicDistance::pow2_neg(static_cast<std::size_t>(diff.first - x.begin()));
    if (x.size() == y.size())
        return DyadicDistance::zero();
    // The shorter string is zero-extended; canonical form means the longer one
    // has a 1 somewhere past `common`, and its first 1 there is the difference.
    const auto& longer = x.size() > y.size() ? x : y;
    return DyadicDistance::pow2_neg(longer.find('1', common));
}

std::size_t truncation_length(const Rational& eps) {
    if (!eps.is_positive())
        throw std::invalid_argument("tolerance must be positive, got " + eps.to_string());
    std::size_t length = 0;
    while (!pow2_neg_less_than(length, eps))
        ++length;
    return length;
}

Tolerance Tolerance::below(const Rational& eps) {
    Tolerance t;
    t.prefix_length_ = truncation_length(eps);
    t.eps_ = eps;
    return t;
}

bool Tolerance::admits(const Color& a, const Color& b) const {
    if (!eps_)
        return a == b;
    return color_distance(a, b).less_than(*eps_);
}

std::string Tolerance::color_class(const Color& c) const {
    if (!prefix_length_)
        return c.bits();
    return c.prefix(*prefix_length_);
}

}  // namespace gromov
