#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gromov/execution.hpp"
#include "gromov/expander.hpp"
#include "gromov/graph.hpp"
#include "gromov/periodic.hpp"
#include "gromov/rational.hpp"

namespace gromov {

/// Vertex permutation by index: vertex v goes to perm[v].
using Permutation = std::vector<std::size_t>;

/// Aut(G, phi) or Aut(G, x0, phi) with exact color equality.
///
/// `base` and `orbit_sizes` describe the stabilizer chain used to count the
/// group: order is the product of the basic orbit sizes.
struct AutomorphismReport {
    std::vector<Permutation> generators;
    std::uint64_t order = 1;
    bool pointed = false;
    std::vector<std::size_t> base;
    std::vector<std::size_t> orbit_sizes;
};

AutomorphismReport automorphisms(const FiniteColoredGraph& g, bool respect_basepoint);

/// True iff the only color-preserving automorphism is the identity
/// (basepoint ignored).
bool is_aperiodic(const FiniteColoredGraph& g);

/// Exact check that `perm` preserves edges, non-edges and colors.
bool is_automorphism(const FiniteColoredGraph& g, const Permutation& perm, bool respect_basepoint);

/// Identifies the isomorphism class of a finite colored graph; pointed when
/// the graph has a basepoint.
struct CanonicalKey {
    std::string bytes;

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend std::strong_ordering operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey canonical_form(const FiniteColoredGraph& g);

/// The graph relabeled into canonical vertex order; vertex keys become
/// "0".."n-1". Isomorphic inputs give identical outputs.
FiniteColoredGraph canonical_representative(const FiniteColoredGraph& g);

/// Partition of a window of basepoints into (R, eps)-equivalence classes.
struct ClassPartition {
    std::vector<VertexKey> representatives;
    /// For each window vertex, the index of its class.
    std::vector<std::size_t> class_of;

    std::size_t count() const { return representatives.size(); }
};

ClassPartition pointed_class_count(const GraphExpander& g, const std::vector<VertexKey>& window, std::size_t radius,
                                   const Rational& eps, Execution execution = Execution::parallel);

/// Whether translation by s is a colored isomorphism on the radius-R window
/// around the basepoint. Throws std::invalid_argument if s is not a multiple
/// of the declared period.
bool shift_automorphism_check(const PeriodicExpander& p, std::size_t radius, std::int64_t s);

/// Vertices a != b with equal colors and N(a)\{b} == N(b)\{a}; swapping them
/// is a nontrivial automorphism.
std::optional<std::pair<std::size_t, std::size_t>> twin_pattern(const FiniteColoredGraph& g);

}  // namespace gromov
