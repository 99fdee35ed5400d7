#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "gromov/rational.hpp"

namespace gromov {

/// A point of the Cantor space {0,1}^N, stored as its finite support.
///
/// Points are zero-extended finite bit strings. The stored form is canonical:
/// no trailing zeros, so the empty string is the all-zeros point and two
/// colors are the same point iff their bit strings are equal.
class Color {
public:
    Color() = default;

    /// Accepts any string over {'0','1'} and strips trailing zeros.
    /// Throws std::invalid_argument on any other character.
    static Color from_bits(std::string_view bits);

    const std::string& bits() const { return bits_; }
    std::size_t size() const { return bits_.size(); }
    bool is_zero() const { return bits_.empty(); }

    /// Bit at `index` of the zero-extended sequence.
    bool bit(std::size_t index) const { return index < bits_.size() && bits_[index] == '1'; }

    /// First `length` bits of the zero-extended sequence.
    std::string prefix(std::size_t length) const;

    friend bool operator==(const Color&, const Color&) = default;
    friend std::strong_ordering operator<=>(const Color&, const Color&) = default;

private:
    std::string bits_;
};

std::ostream& operator<<(std::ostream& os, const Color& c);

/// Exact value 0 or 2^-i of the dyadic ultrametric.
class DyadicDistance {
public:
    static DyadicDistance zero() { return DyadicDistance(); }
    static DyadicDistance pow2_neg(std::size_t exponent) { return DyadicDistance(exponent); }

    bool is_zero() const { return !exponent_; }
    /// i for 2^-i; empty for the zero distance.
    std::optional<std::size_t> exponent() const { return exponent_; }

    /// Exact test of `*this < bound`.
    bool less_than(const Rational& bound) const;

    Rational to_rational() const;

    friend bool operator==(const DyadicDistance&, const DyadicDistance&) = default;
    friend std::strong_ordering operator<=>(const DyadicDistance& a, const DyadicDistance& b);

private:
    DyadicDistance() = default;
    explicit DyadicDistance(std::size_t exponent) : exponent_(exponent) {}

    std::optional<std::size_t> exponent_;
};

std::ostream& operator<<(std::ostream& os, const DyadicDistance& d);

/// d(a, b) = 2^-i with i the first index where the zero-extended sequences differ.
DyadicDistance color_distance(const Color& a, const Color& b);

/// Exact test 2^-exponent < bound for a positive rational bound.
bool pow2_neg_less_than(std::size_t exponent, const Rational& bound);

/// Color tolerance used by equivalence searches: either exact equality or
/// the strict bound d < eps.
///
/// Because d is an ultrametric with values 2^-i, d(a,b) < eps holds iff a and
/// b agree on their first L bits, where L is the least integer with
/// 2^-L < eps. Tolerance-closeness is therefore an equivalence relation whose
/// classes are keyed by `color_class`.
class Tolerance {
public:
    static Tolerance exact() { return Tolerance(); }
    /// Throws std::invalid_argument unless eps > 0.
    static Tolerance below(const Rational& eps);

    bool is_exact() const { return !eps_; }
    const std::optional<Rational>& eps() const { return eps_; }

    /// Number of leading bits that must agree; empty when exact.
    std::optional<std::size_t> prefix_length() const { return prefix_length_; }

    bool admits(const Color& a, const Color& b) const;
    std::string color_class(const Color& c) const;

private:
    Tolerance() = default;

    std::optional<Rational> eps_;
    std::optional<std::size_t> prefix_length_;
};

/// Least L >= 0 with 2^-L < eps.
std::size_t truncation_length(const Rational& eps);

}  // namespace gromov
