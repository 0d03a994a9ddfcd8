#ifndef AMGANN_AMG_STRONG_GRAPH_HPP
#define AMGANN_AMG_STRONG_GRAPH_HPP

/// @file strong_graph.hpp
/// @brief Strong-connection graph of a sparse matrix for classical AMG coarsening.

#include <vector>

#include "amgann/core.hpp"
#include "amgann/sparse/csr.hpp"

namespace amgann {

// ==========================================================================
// Strong-connection graph
// ==========================================================================

/// Per-row sets S_i of variables that row i strongly depends on.
///
/// Membership rule (closed inequality): j ∈ S_i iff j ≠ i and
///   -a_ij >= theta * max_{k != i}(-a_ik).
/// Rows whose off-diagonal entries are all >= 0 have an empty S_i, and the
/// diagonal is never a member.
struct StrongGraph {
    real_t theta = 0.0;
    std::vector<std::vector<index_t>> rows; ///< S_i, each sorted ascending

    index_t size() const { return static_cast<index_t>(rows.size()); }
};

/// Builds the strong-connection graph of a square matrix.
///
/// @throws InvalidParameterError if theta lies outside (0, 1]
/// @throws DimensionError        if the matrix is not square
inline StrongGraph strong_connections(const CsrMatrix& a, real_t theta) {
    if (!(theta > 0.0) || theta > 1.0)
        throw InvalidParameterError("strong_connections: theta must lie in (0, 1], got " +
                                    std::to_string(theta));
    if (a.n_rows != a.n_cols)
        throw DimensionError("strong_connections: matrix must be square");

    StrongGraph g;
    g.theta = theta;
    g.rows.resize(static_cast<std::size_t>(a.n_rows));
    for (index_t i = 0; i < a.n_rows; ++i) {
        real_t max_neg = 0.0;
        for (index_t k = a.row_ptr[static_cast<std::size_t>(i)];
             k < a.row_ptr[static_cast<std::size_t>(i + 1)]; ++k) {
            const index_t j = a.col_idx[static_cast<std::size_t>(k)];
            if (j == i) continue;
            max_neg = std::max(max_neg, -a.values[static_cast<std::size_t>(k)]);
        }
        if (max_neg <= 0.0) continue; // no negative couplings: S_i stays empty
        const real_t cutoff = theta * max_neg;
        auto& s = g.rows[static_cast<std::size_t>(i)];
        for (index_t k = a.row_ptr[static_cast<std::size_t>(i)];
             k < a.row_ptr[static_cast<std::size_t>(i + 1)]; ++k) {
            const index_t j = a.col_idx[static_cast<std::size_t>(k)];
            if (j == i) continue;
            if (-a.values[static_cast<std::size_t>(k)] >= cutoff) s.push_back(j);
        }
    }
    return g;
}

/// Transpose adjacency: for each i, the set {j : i ∈ S_j}, sorted ascending.
inline std::vector<std::vector<index_t>> transpose_graph(const StrongGraph& g) {
    std::vector<std::vector<index_t>> t(g.rows.size());
    for (index_t j = 0; j < g.size(); ++j)
        for (const index_t i : g.rows[static_cast<std::size_t>(j)])
            t[static_cast<std::size_t>(i)].push_back(j);
    return t; // rows scanned in ascending j, so each t[i] is already sorted
}

} // namespace amgann

#endif // AMGANN_AMG_STRONG_GRAPH_HPP
