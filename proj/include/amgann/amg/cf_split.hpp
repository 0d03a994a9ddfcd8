#ifndef AMGANN_AMG_CF_SPLIT_HPP
#define AMGANN_AMG_CF_SPLIT_HPP

/// @file cf_split.hpp
/// @brief Deterministic coarse/fine splitting on a strong-connection graph.

#include <queue>
#include <utility>
#include <vector>

#include "amgann/amg/strong_graph.hpp"
#include "amgann/core.hpp"

namespace amgann {

// ==========================================================================
// C/F splitting
// ==========================================================================

enum class PointLabel : unsigned char { C, F };

/// Partition of the variables into coarse (C) and fine (F) points.
struct CfSplitting {
    std::vector<PointLabel> labels;
    std::vector<index_t> coarse;      ///< C indices, ascending
    std::vector<index_t> coarse_rank; ///< fine index -> position in `coarse`, or -1
    bool degenerate_fallback = false; ///< set when an all-F split was replaced by all-C

    index_t size() const { return static_cast<index_t>(labels.size()); }
    index_t n_coarse() const { return static_cast<index_t>(coarse.size()); }
    bool is_coarse(index_t i) const { return labels[static_cast<std::size_t>(i)] == PointLabel::C; }
};

namespace detail {

/// Rebuilds the coarse list and rank map from the label vector.
inline void index_coarse(CfSplitting& s) {
    s.coarse.clear();
    s.coarse_rank.assign(s.labels.size(), -1);
    for (index_t i = 0; i < s.size(); ++i)
        if (s.is_coarse(i)) {
            s.coarse_rank[static_cast<std::size_t>(i)] = static_cast<index_t>(s.coarse.size());
            s.coarse.push_back(i);
        }
}

} // namespace detail

/// Greedy coarsening pass over the strong-connection graph.
///
/// Each point carries the measure λ_i = |{j : i ∈ S_j}| (how many points
/// strongly depend on it).  Repeatedly the unassigned point with the largest
/// measure (ties: lowest index) becomes C; every unassigned point that
/// strongly depends on it becomes F, and each new F-point j raises the
/// measure of its still-unassigned dependencies k ∈ S_j by one.  When no
/// unassigned point has positive measure the remainder becomes F.
///
/// A final ascending sweep promotes to C any F-point that has strong
/// dependencies but no coarse one among them, so the invariant "every
/// F-point with nonempty S_i sees a C-point in S_i" always holds.
///
/// If the graph is empty everywhere the pass yields no C-points at all; the
/// splitting then falls back to all-C and sets `degenerate_fallback`.
inline CfSplitting cf_split(const StrongGraph& g) {
    const index_t n = g.size();
    const auto st = transpose_graph(g);

    constexpr unsigned char kUnassigned = 2;
    std::vector<unsigned char> state(static_cast<std::size_t>(n), kUnassigned);
    std::vector<index_t> lambda(static_cast<std::size_t>(n));
    // Max-heap on (measure, -index); stale entries are skipped on pop.
    std::priority_queue<std::pair<index_t, index_t>> heap;
    for (index_t i = 0; i < n; ++i) {
        lambda[static_cast<std::size_t>(i)] = static_cast<index_t>(st[static_cast<std::size_t>(i)].size());
        heap.emplace(lambda[static_cast<std::size_t>(i)], -i);
    }

    while (!heap.empty()) {
        const auto [lam, neg_i] = heap.top();
        heap.pop();
        const index_t i = -neg_i;
        if (state[static_cast<std::size_t>(i)] != kUnassigned) continue;
        if (lam != lambda[static_cast<std::size_t>(i)]) continue; // stale
        if (lam == 0) break; // nothing depends on any remaining point
        state[static_cast<std::size_t>(i)] = static_cast<unsigned char>(PointLabel::C);
        for (const index_t j : st[static_cast<std::size_t>(i)]) {
            if (state[static_cast<std::size_t>(j)] != kUnassigned) continue;
            state[static_cast<std::size_t>(j)] = static_cast<unsigned char>(PointLabel::F);
            for (const index_t k : g.rows[static_cast<std::size_t>(j)])
                if (state[static_cast<std::size_t>(k)] == kUnassigned) {
                    ++lambda[static_cast<std::size_t>(k)];
                    heap.emplace(lambda[static_cast<std::size_t>(k)], -k);
                }
        }
    }

    CfSplitting s;
    s.labels.resize(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i)
        s.labels[static_cast<std::size_t>(i)] =
            state[static_cast<std::size_t>(i)] == static_cast<unsigned char>(PointLabel::C)
                ? PointLabel::C
                : PointLabel::F; // unassigned leftovers become F

    // Invariant sweep: an F-point with strong dependencies must see a C-point.
    for (index_t i = 0; i < n; ++i) {
        if (s.labels[static_cast<std::size_t>(i)] == PointLabel::C) continue;
        const auto& si = g.rows[static_cast<std::size_t>(i)];
        if (si.empty()) continue;
        bool has_c = false;
        for (const index_t j : si)
            if (s.labels[static_cast<std::size_t>(j)] == PointLabel::C) {
                has_c = true;
                break;
            }
        if (!has_c) s.labels[static_cast<std::size_t>(i)] = PointLabel::C;
    }

    detail::index_coarse(s);
    if (s.n_coarse() == 0 && n > 0) {
        s.labels.assign(static_cast<std::size_t>(n), PointLabel::C);
        s.degenerate_fallback = true;
        detail::index_coarse(s);
    }
    return s;
}

} // namespace amgann

#endif // AMGANN_AMG_CF_SPLIT_HPP
