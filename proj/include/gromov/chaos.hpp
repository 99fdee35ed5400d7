#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gromov/ball.hpp"
#include "gromov/color.hpp"
#include "gromov/equivalence.hpp"
#include "gromov/execution.hpp"
#include "gromov/expander.hpp"
#include "gromov/periodic.hpp"
#include "gromov/rational.hpp"

namespace gromov {

/// A pointed graph under study, with optional metadata used by the
/// constructive searches.
struct ChaosSource {
    Pointed pointed;
    /// Declared translation structure of the graph itself, if any.
    std::optional<PeriodicExpander> periodic;
    /// Stand-in degree bound for graphs declared with unbounded degree.
    std::optional<std::size_t> degree_override;
};

// ---------------------------------------------------------------------------
// W(n)

/// Whether the coloring is injective on D(x, n).
bool in_W(const Pointed& a, std::size_t n);
bool in_W(const PointedBall& disk);

class NotInW : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Minimum pairwise color distance on D(x, n); 1 for a single vertex.
/// Throws NotInW when the disk coloring is not injective.
Rational w_stability_radius(const Pointed& a, std::size_t n);
Rational w_stability_radius(const PointedBall& disk);

// ---------------------------------------------------------------------------
// V(n, r, m)

struct VSearchResult {
    /// The first match in breadth-first order, or empty.
    std::optional<VertexKey> witness;
    std::optional<REquivalence> equivalence;
    std::size_t search_radius = 0;

    bool found() const { return witness.has_value(); }
};

/// First y with r <= d(x, y) <= search_radius, in breadth-first order from x,
/// such that (X, y) is (m, 1/m)-equivalent to `target`. Throws
/// std::invalid_argument if search_radius < r or m == 0.
VSearchResult find_matching_vertex(const Pointed& source, const Pointed& target, std::size_t r, std::size_t m,
                                   std::size_t search_radius, Execution execution = Execution::parallel);

/// Builds K = build_K(X, x, n, spine) and searches for a far vertex whose
/// m-disk matches the basepoint of K. NotFoundWithin is `!found()`.
VSearchResult in_V(const ChaosSource& source, std::size_t n, std::size_t r, std::size_t m, std::size_t search_radius,
                   const Color& spine = Color(), Execution execution = Execution::parallel);

// ---------------------------------------------------------------------------
// Aperiodicity

struct AperiodicityReport {
    std::size_t depth = 0;
    /// in_W at n = 0..depth.
    std::vector<bool> in_w;
    /// Twin pair found on D(x, depth), by key.
    std::optional<std::pair<VertexKey, VertexKey>> twins;

    /// Largest n with in_W at every n' <= n; empty if n = 0 already fails.
    std::optional<std::size_t> aperiodic_up_to() const;
    bool passes() const { return aperiodic_up_to() == depth && !twins; }
};

AperiodicityReport aperiodicity_certificate(const Pointed& x, std::size_t depth);

// ---------------------------------------------------------------------------
// Almost chaotic certificates

/// How to rebuild the periodic witness of one depth.
struct WitnessSpec {
    enum class Kind { self, k_construction };
    Kind kind = Kind::k_construction;
    /// Disk radius for the K-construction.
    std::size_t n = 0;
    Color spine_color;
    std::optional<std::size_t> degree_override;

    friend bool operator==(const WitnessSpec&, const WitnessSpec&) = default;
};

struct CertificateCell {
    std::size_t m = 0;
    /// x_{n,m}
    VertexKey vertex;
    /// (X, x_{n,m}) -> (Y_n, y_n), an (m, 1/m)-equivalence.
    REquivalence equivalence;

    friend bool operator==(const CertificateCell&, const CertificateCell&) = default;
};

struct CertificateLevel {
    std::size_t n = 0;
    WitnessSpec witness;
    /// y_n
    VertexKey witness_point;
    /// Radius of the translation check around y_n.
    std::size_t shift_radius = 0;
    /// (X, x) -> (Y_n, y_n), an (n, 1/n)-equivalence.
    REquivalence equivalence;
    std::vector<CertificateCell> cells;

    friend bool operator==(const CertificateLevel&, const CertificateLevel&) = default;
};

struct AlmostChaoticCertificate {
    std::size_t N = 0;
    std::size_t M = 0;
    VertexKey point;
    std::vector<CertificateLevel> levels;

    friend bool operator==(const AlmostChaoticCertificate&, const AlmostChaoticCertificate&) = default;
};

/// Thrown on structurally malformed certificates (missing or duplicated
/// coordinates, unknown witness kinds).
class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CertificateFailure {
    std::size_t n = 0;
    /// Empty for failures of the level itself.
    std::optional<std::size_t> m;
    std::string reason;
};

struct CertificateReport {
    std::size_t N = 0;
    std::size_t M = 0;
    /// Sorted by (n, m), level failures first.
    std::vector<CertificateFailure> failures;

    bool valid() const { return failures.empty(); }
};

PeriodicExpander realize_witness(const ChaosSource& source, const WitnessSpec& spec);

CertificateReport check_almost_chaotic(const ChaosSource& source, const AlmostChaoticCertificate& cert);

struct CertifyOptions {
    std::size_t search_radius = 8;
    Color spine_color;
    /// Use the source's own translation structure as the witness at every
    /// depth (requires ChaosSource::periodic).
    bool self_witness = false;
};

struct GenerationResult {
    std::optional<AlmostChaoticCertificate> certificate;
    /// First (n, m) where the bounded search failed.
    std::optional<std::pair<std::size_t, std::size_t>> failed_at;
};

GenerationResult generate_almost_chaotic(const ChaosSource& source, std::size_t N, std::size_t M,
                                         const CertifyOptions& options, Execution execution = Execution::parallel);

// ---------------------------------------------------------------------------

struct ChaosVerdict {
    std::size_t N = 0;
    std::size_t M = 0;
    GenerationResult almost_chaotic;
    AperiodicityReport aperiodicity;
    /// Window radii and the number of (R, 1/R)-classes of basepoints in the
    /// window, R = max(N, 1).
    std::vector<std::pair<std::size_t, std::size_t>> class_counts;

    bool class_growth() const;
    bool infinite = false;
    /// All evidence positive at this depth.
    bool chaotic() const;
};

ChaosVerdict chaotic_verdict(const ChaosSource& source, std::size_t N, std::size_t M, const CertifyOptions& options,
                             Execution execution = Execution::parallel);

}  // namespace gromov
