#include "gromov/detail/refinement.hpp"

#include <numeric>

namespace gromov::detail {

std::size_t cell_count(const Labels& labels) {
    if (labels.empty())
        return 0;
    std::vector<char> seen(*std::max_element(labels.begin(), labels.end()) + 1, 0);
    std::size_t count = 0;
    for (auto l : labels)
        if (!seen[l]) {
            seen[l] = 1;
            ++count;
        }
    return count;
}

Labels refine(const Adjacency& adjacency, Labels labels) {
    labels = rank_labels(labels);
    std::size_t cells = cell_count(labels);
    std::vector<std::vector<std::size_t>> signature(labels.size());
    while (true) {
        for (std::size_t v = 0; v < labels.size(); ++v) {
            auto& sig = signature[v];
            sig.clear();
            sig.push_back(labels[v]);
            for (auto w : adjacency[v])
                sig.push_back(labels[w]);
            std::sort(sig.begin() + 1, sig.end());
        }
        labels = rank_labels(signature);
        const std::size_t refined = cell_count(labels);
        if (refined == cells)
            return labels;
        cells = refined;
    }
}

namespace {

class IsomorphismSearch {
public:
    IsomorphismSearch(const Adjacency& a, const Adjacency& b) : n_(a.size()) {
        joint_.reserve(a.size() + b.size());
        for (const auto& list : a)
            joint_.push_back(list);
        for (const auto& list : b) {
            auto& out = joint_.emplace_back();
            for (auto w : list)
                out.push_back(w + n_);
        }
    }

    std::optional<std::vector<std::size_t>> run(Labels labels) {
        if (search(std::move(labels)))
            return mapping_;
        return std::nullopt;
    }

private:
    bool search(Labels labels) {
        labels = refine(joint_, std::move(labels));
        const std::size_t cells = *std::max_element(labels.begin(), labels.end()) + 1;
        std::vector<std::size_t> count_a(cells, 0), count_b(cells, 0);
        for (std::size_t v = 0; v < n_; ++v)
            ++count_a[labels[v]];
        for (std::size_t v = n_; v < 2 * n_; ++v)
            ++count_b[labels[v]];
        if (count_a != count_b)
            return false;

        std::size_t target = cells;
        for (std::size_t c = 0; c < cells; ++c)
            if (count_a[c] > 1 && (target == cells || count_a[c] < count_a[target]))
                target = c;

        if (target == cells)
            return leaf(labels);

        std::size_t u = 0;
        while (labels[u] != target)
            ++u;
        for (std::size_t v = n_; v < 2 * n_; ++v) {
            if (labels[v] != target)
                continue;
            Labels next = labels;
            next[u] = cells;
            next[v] = cells;
            if (search(std::move(next)))
                return true;
        }
        return false;
    }

    bool leaf(const Labels& labels) {
        std::vector<std::size_t> owner(2 * n_, 0);
        for (std::size_t v = n_; v < 2 * n_; ++v)
            owner[labels[v]] = v - n_;
        mapping_.assign(n_, 0);
        for (std::size_t u = 0; u < n_; ++u)
            mapping_[u] = owner[labels[u]];
        for (std::size_t u = 0; u < n_; ++u) {
            const auto& image_list = joint_[mapping_[u] + n_];
            if (image_list.size() != joint_[u].size())
                return false;
            for (auto w : joint_[u])
                if (std::find(image_list.begin(), image_list.end(), mapping_[w] + n_) == image_list.end())
                    return false;
        }
        return true;
    }

    std::size_t n_;
    Adjacency joint_;
    std::vector<std::size_t> mapping_;
};

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const Adjacency& a, const Labels& labels_a,
                                                         const Adjacency& b, const Labels& labels_b,
                                                         std::span<const std::pair<std::size_t, std::size_t>> forced) {
    if (a.size() != b.size() || labels_a.size() != a.size() || labels_b.size() != b.size())
        return std::nullopt;
    if (a.empty())
        return std::vector<std::size_t>{};
    const std::size_t n = a.size();
    Labels joint(labels_a);
    joint.insert(joint.end(), labels_b.begin(), labels_b.end());
    std::size_t fresh = *std::max_element(joint.begin(), joint.end()) + 1;
    for (const auto& [u, v] : forced) {
        if (u >= n || v >= n)
            return std::nullopt;
        if (joint[u] != joint[v + n])
            return std::nullopt;
        joint[u] = fresh;
        joint[v + n] = fresh;
        ++fresh;
    }
    return IsomorphismSearch(a, b).run(std::move(joint));
}

namespace {

class CanonicalSearch {
public:
    CanonicalSearch(const Adjacency& adjacency, const Labels& labels) : adjacency_(adjacency), initial_(labels) {}

    CanonicalLabeling run() {
        std::vector<std::size_t> path;
        search(initial_, path);
        return {best_order_, best_certificate_};
    }

private:
    void search(Labels labels, std::vector<std::size_t>& path) {
        labels = refine(adjacency_, std::move(labels));
        const std::size_t n = labels.size();
        const std::size_t cells = *std::max_element(labels.begin(), labels.end()) + 1;
        if (cells == n) {
            leaf(labels);
            return;
        }
        std::vector<std::size_t> size(cells, 0);
        for (auto l : labels)
            ++size[l];
        std::size_t target = cells;
        for (std::size_t c = 0; c < cells; ++c)
            if (size[c] > 1 && (target == cells || size[c] < size[target]))
                target = c;

        std::vector<std::size_t> explored;
        for (std::size_t v = 0; v < n; ++v) {
            if (labels[v] != target)
                continue;
            if (!explored.empty() && equivalent_to_explored(v, explored, path))
                continue;
            Labels next = labels;
            next[v] = cells;
            path.push_back(v);
            search(std::move(next), path);
            path.pop_back();
            explored.push_back(v);
        }
    }

    bool equivalent_to_explored(std::size_t v, const std::vector<std::size_t>& explored,
                                const std::vector<std::size_t>& path) const {
        const std::size_t n = initial_.size();
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        bool any = false;
        for (const auto& gamma : automorphisms_) {
            bool fixes_path = std::all_of(path.begin(), path.end(), [&](std::size_t p) { return gamma[p] == p; });
            if (!fixes_path)
                continue;
            any = true;
            for (std::size_t x = 0; x < n; ++x)
                parent[find(x)] = find(gamma[x]);
        }
        if (!any)
            return false;
        const auto root = find(v);
        return std::any_of(explored.begin(), explored.end(), [&](std::size_t w) { return find(w) == root; });
    }

    void leaf(const Labels& labels) {
        const std::size_t n = labels.size();
        std::vector<std::size_t> order(n);
        for (std::size_t v = 0; v < n; ++v)
            order[labels[v]] = v;
        std::string cert;
        cert.reserve(n * 4 + n * n / 2);
        cert += std::to_string(n);
        cert += ';';
        for (auto v : order) {
            cert += std::to_string(initial_[v]);
            cert += ',';
        }
        cert += ';';
        std::vector<std::size_t> position(n);
        for (std::size_t i = 0; i < n; ++i)
            position[order[i]] = i;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<char> row(n, '0');
            for (auto w : adjacency_[order[i]])
                row[position[w]] = '1';
            cert.append(row.begin() + static_cast<std::ptrdiff_t>(i) + 1, row.end());
        }

        if (best_order_.empty() || cert < best_certificate_) {
            best_certificate_ = std::move(cert);
            best_order_ = std::move(order);
        } else if (cert == best_certificate_) {
            std::vector<std::size_t> gamma(n);
            for (std::size_t i = 0; i < n; ++i)
                gamma[best_order_[i]] = order[i];
            automorphisms_.push_back(std::move(gamma));
        }
    }

    const Adjacency& adjacency_;
    Labels initial_;
    std::string best_certificate_;
    std::vector<std::size_t> best_order_;
    std::vector<std::vector<std::size_t>> automorphisms_;
};

}  // namespace

CanonicalLabeling canonical_labeling(const Adjacency& adjacency, const Labels& labels) {
    if (adjacency.empty())
        return {{}, "0;;"};
    return CanonicalSearch(adjacency, rank_labels(labels)).run();
}

}  // namespace gromov::detail
