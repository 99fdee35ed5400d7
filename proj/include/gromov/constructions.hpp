#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "gromov/ball.hpp"
#include "gromov/color.hpp"
#include "gromov/enumeration.hpp"
#include "gromov/equivalence.hpp"
#include "gromov/expander.hpp"
#include "gromov/periodic.hpp"

namespace gromov {

// ---------------------------------------------------------------------------
// Colorings and lines over Z
// ---------------------------------------------------------------------------

/// Word order for the Champernowne-type sequence. `listed` skips the word "10"
/// among the length-2 words, reproducing 01000111000001...; `standard`
/// enumerates every binary word by length, then lexicographically.
enum class ChampernowneOrder { listed, standard };

/// "listed" (alias "paper") or "standard"; nullopt for anything else.
std::optional<ChampernowneOrder> parse_champernowne_order(const std::string& name);

/// phi(n): 0 for n <= 0, otherwise the n-th symbol (1-based) of the
/// concatenated word sequence, as the color "" or "1".
Color champernowne_color(std::int64_t n, ChampernowneOrder order);

/// Z as the 2-regular line with keys "…", "-1", "0", "1", …
GraphExpander integer_line(std::string name, std::function<Color(std::int64_t)> coloring);
GraphExpander constant_line(const Color& color);
GraphExpander champernowne_line(ChampernowneOrder order);

/// N as a half-line: keys "0", "1", …, vertex 0 has degree 1.
GraphExpander half_line(const Color& color);

/// Z colored by concatenating every finite word over the first
/// `alphabet_size` pool colors. Words are ordered by length plus largest
/// letter index, then lexicographically; positions n <= 0 get the first
/// letter. Throws std::invalid_argument if alphabet_size < 2.
GraphExpander word_line(std::size_t alphabet_size);

/// Letter index (into color_pool) of position n of word_line(alphabet_size).
std::size_t word_line_letter(std::size_t alphabet_size, std::int64_t n);

/// Attaches a pendant "p<z>" to every spine vertex z colored "1" of a line
/// with integer keys, then forgets colors. Expanding a spine vertex whose
/// color is neither "" nor "1" throws GraphError.
GraphExpander free_edge_lift(const GraphExpander& line);

/// Declares translation z -> z + s on keys "<z>" and "p<z>".
PeriodicExpander translation_periodic(const GraphExpander& line);

/// Injective coloring of Z by sign-magnitude encoding: sign bit, magnitude
/// bits least-significant first, then a terminating 1.
Color spine_color(std::int64_t z);

/// 0, -1, 1, -2, 2, … -> 0, 1, 2, 3, 4, …
std::size_t zigzag_index(std::int64_t z);

// ---------------------------------------------------------------------------
// The periodic K-construction
// ---------------------------------------------------------------------------

/// Least-key vertex of the outer sphere of `disk` whose degree inside the
/// disk is below `degree_sup`. Throws GraphError if there is none.
std::size_t choose_attachment(const PointedBall& disk, std::size_t degree_sup);

/// Z-spine colored constantly `spine_color`, with copy z of the colored disk
/// D(x, n) joined to spine vertex z through the chosen attachment vertex.
/// Keys: spine "s<z>", copies "c<z>.<i>" (i indexes the disk in ball order);
/// the basepoint is "c0.0". `degree_override` replaces an unbounded degree
/// declaration of the source.
PeriodicExpander build_K(const Pointed& source, std::size_t n, const Color& spine_color,
                         std::optional<std::size_t> degree_override = std::nullopt);

/// The canonical inclusion of D(x, n) onto copy 0 of build_K(x, n, ...),
/// as an (n, 1/n)-equivalence (colors are copied exactly).
REquivalence copy_zero_inclusion(const Pointed& source, std::size_t n);

/// build_K on the constant-colored line with n = 0: spine of degree 3,
/// pendants of degree 1, everything colored "".
PeriodicExpander comb();

// ---------------------------------------------------------------------------
// Spine graphs carrying an enumeration of finite aperiodic graphs
// ---------------------------------------------------------------------------

/// Spine Z colored by spine_color, with stream member zigzag_index(z)
/// attached to spine vertex z by its basepoint. Keys: spine "s<z>",
/// attached vertices "a<z>.<j>". Root "s0".
GraphExpander attach_stream_to_spine(std::string name, const AperiodicStream& stream, DegreeBound degree_sup);

/// All finite pointed aperiodic graphs with pool colors, weight <= budget.
/// Degrees are unbounded; operations needing a bound take an override.
GraphExpander universal_dense_graph(std::size_t weight_budget);

/// Same with members restricted to degrees in {1, 3} and basepoint degree 1.
GraphExpander sparse_universal_graph(std::size_t weight_budget);

/// Induced subgraph of sparse_universal_graph on spine {-n..n} and the members
/// attached strictly inside; basepoint x_n = spine vertex n. n >= 1.
FiniteColoredGraph build_H(std::size_t n, std::size_t weight_budget);

/// Z-indexed copies of H_n with the copy of x_n in copy z identified with
/// spine vertex z, which takes the color of x_n. Keys: spine "s<z>", copies
/// "h<z>.<i>"; the basepoint is the copy-0 image of spine vertex 0. n >= 1.
PeriodicExpander build_Z(std::size_t n, std::size_t weight_budget);

/// Histogram degree -> number of vertices on a finite window.
std::map<std::size_t, std::size_t> degree_profile(const FiniteColoredGraph& g);

// ---------------------------------------------------------------------------

/// Recolors every vertex v of the disk to (old color padded to P bits) + tag(v),
/// where P >= L, 2^-L < eps, and tag(v) is a distinct nonzero string. The
/// result is injective, within eps of the original, and differs from it at
/// every vertex.
PointedBall injective_perturbation(const PointedBall& disk, const Rational& eps);

}  // namespace gromov
