#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gromov/ball.hpp"
#include "gromov/color.hpp"
#include "gromov/expander.hpp"
#include "gromov/rational.hpp"

namespace gromov {

struct MappedVertex {
    VertexKey from;
    VertexKey to;
    std::size_t depth = 0;

    friend bool operator==(const MappedVertex&, const MappedVertex&) = default;
};

/// (R, eps)-equivalence: a pointed isomorphism D(x, R) -> D(y, R) moving
/// every color by strictly less than eps. The mapping lists the domain ball
/// in breadth-first order, basepoint first.
struct REquivalence {
    std::size_t radius = 0;
    Rational tolerance{1};
    std::vector<MappedVertex> mapping;

    const VertexKey& source_point() const { return mapping.at(0).from; }
    const VertexKey& target_point() const { return mapping.at(0).to; }
    std::optional<VertexKey> image(const VertexKey& from) const;

    friend bool operator==(const REquivalence&, const REquivalence&) = default;
};

class EquivalenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Complete backtracking search for an (R, eps)-equivalence a -> b.
/// Deterministic: the same inputs always yield the same witness.
std::optional<REquivalence> find_equivalence(const Pointed& a, const Pointed& b, std::size_t radius,
                                             const Rational& eps);

/// Same search on pre-extracted balls (each of radius >= `radius`).
std::optional<REquivalence> find_equivalence(const PointedBall& a, const PointedBall& b, std::size_t radius,
                                             const Rational& eps);

struct EquivalenceCheck {
    bool valid = true;
    std::string violation;

    explicit operator bool() const { return valid; }
};

/// Re-checks every defining property of `h` against freshly extracted balls.
EquivalenceCheck verify_equivalence(const REquivalence& h, const Pointed& a, const Pointed& b);

/// Restriction of h to the domain ball of radius r <= h.radius.
REquivalence restrict(const REquivalence& h, std::size_t r);

REquivalence inverse(const REquivalence& h);

/// g o f, defined on the ball of radius min(n, m), tolerance max(eps, delta).
/// Throws EquivalenceError if f's target and g's source are not the same
/// pointed ball.
REquivalence compose(const REquivalence& f, const REquivalence& g);

/// d([X,x], [Y,y]) = 2^-n for the largest n with an (n, 1/n)-equivalence,
/// scanned up to a truncation depth.
struct TruncatedDistance {
    enum class Kind { exact, at_most, one };

    Kind kind = Kind::one;
    /// n for Exact(2^-n) and AtMost(2^-n); 0 for One.
    std::size_t exponent = 0;

    static TruncatedDistance exact(std::size_t n) { return {Kind::exact, n}; }
    static TruncatedDistance at_most(std::size_t n) { return {Kind::at_most, n}; }
    static TruncatedDistance one() { return {Kind::one, 0}; }

    /// Bounds on the true distance, as exponents of 2^-e (larger is closer).
    /// The lower bound of AtMost is the zero distance (empty).
    std::optional<std::size_t> lower_bound_exponent() const;
    std::size_t upper_bound_exponent() const { return exponent; }

    friend bool operator==(const TruncatedDistance&, const TruncatedDistance&) = default;
};

std::string to_string(const TruncatedDistance& d);

/// Scans n = 1..max_depth. Throws std::invalid_argument if max_depth == 0.
TruncatedDistance distance_truncated(const Pointed& a, const Pointed& b, std::size_t max_depth);

/// Injective map of `pattern` into the radius-`window` ball of `host`
/// preserving the pattern's edges (and non-edges when `induced`), with every
/// color moved within `tolerance`.
std::optional<std::map<VertexKey, VertexKey>> embed_colored_subgraph(const FiniteColoredGraph& pattern,
                                                                     const Pointed& host, std::size_t window,
                                                                     const Tolerance& tolerance, bool induced);

/// Same, against an already extracted finite host.
std::optional<std::map<VertexKey, VertexKey>> embed_colored_subgraph(const FiniteColoredGraph& pattern,
                                                                     const FiniteColoredGraph& host,
                                                                     const Tolerance& tolerance, bool induced);

}  // namespace gromov
