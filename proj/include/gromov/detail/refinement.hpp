#pragma once

// Individualization-refinement machinery shared by the equivalence and
// symmetry modules. Graphs are plain adjacency lists; vertex labels are small
// integers assigned by the caller (depth, color class, basepoint mark).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gromov::detail {

using Adjacency = std::vector<std::vector<std::size_t>>;
using Labels = std::vector<std::size_t>;

/// Color refinement to the coarsest equitable partition finer than `labels`.
/// Output labels are 0..k-1 and depend only on the isomorphism type of
/// (graph, labels), never on vertex numbering.
Labels refine(const Adjacency& adjacency, Labels labels);

/// Number of distinct labels.
std::size_t cell_count(const Labels& labels);

/// Label-preserving isomorphism a -> b, or empty. `forced` pairs (u in a, v in
/// b) are required to map u -> v. The search is complete and deterministic.
std::optional<std::vector<std::size_t>> find_isomorphism(const Adjacency& a, const Labels& labels_a,
                                                         const Adjacency& b, const Labels& labels_b,
                                                         std::span<const std::pair<std::size_t, std::size_t>> forced = {});

/// Canonical relabeling: order[i] is the vertex placed at position i. Two
/// labeled graphs are isomorphic iff their canonical certificates coincide.
struct CanonicalLabeling {
    std::vector<std::size_t> order;
    std::string certificate;
};

CanonicalLabeling canonical_labeling(const Adjacency& adjacency, const Labels& labels);

/// Turns arbitrary sortable values into dense canonical labels (rank of the
/// value among the distinct values).
template <class T>
Labels rank_labels(const std::vector<T>& values);

}  // namespace gromov::detail

#include <algorithm>

template <class T>
gromov::detail::Labels gromov::detail::rank_labels(const std::vector<T>& values) {
    std::vector<T> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    Labels out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), values[i]) -
                                          distinct.begin());
    return out;
}
