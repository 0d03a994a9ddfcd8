#ifndef AMGANN_AMG_INTERPOLATION_HPP
#define AMGANN_AMG_INTERPOLATION_HPP

/// @file interpolation.hpp
/// @brief Direct interpolation operator from a C/F splitting.

#include <string>
#include <vector>

#include "amgann/amg/cf_split.hpp"
#include "amgann/amg/strong_graph.hpp"
#include "amgann/core.hpp"
#include "amgann/sparse/coo.hpp"
#include "amgann/sparse/csr.hpp"

namespace amgann {

// ==========================================================================
// Interpolation
// ==========================================================================

/// Prolongation operator (n × n_coarse) together with the coarse column map.
///
/// C-point rows are unit basis rows; F-point rows are supported on the
/// interpolatory set P_i = S_i ∩ C only.
struct Interpolation {
    CsrMatrix matrix;               ///< prolongation, n × n_coarse
    std::vector<index_t> coarse;    ///< fine index of each coarse column

    /// Fine-level indices this row interpolates from (P_i for F-rows).
    std::vector<index_t> interpolatory_set(index_t i) const {
        std::vector<index_t> out;
        for (index_t k = matrix.row_ptr[static_cast<std::size_t>(i)];
             k < matrix.row_ptr[static_cast<std::size_t>(i + 1)]; ++k)
            out.push_back(coarse[static_cast<std::size_t>(matrix.col_idx[static_cast<std::size_t>(k)])]);
        return out;
    }
};

/// Builds the direct-interpolation operator for a given splitting.
///
/// F-point weights: w_ij = -(a_ij / a_ii) * (Σ_{k≠i} a_ik / Σ_{k∈P_i} a_ik)
/// over P_i = S_i ∩ C.  F-points with empty S_i receive an all-zero row (the
/// coarse level simply cannot see them); F-points whose nonempty S_i contains
/// no C-point are an error, as is an exactly-zero denominator or diagonal.
inline Interpolation build_interpolation(const CsrMatrix& a, const StrongGraph& g,
                                         const CfSplitting& s) {
    const index_t n = a.n_rows;
    if (a.n_cols != n) throw DimensionError("build_interpolation: matrix must be square");
    if (g.size() != n || s.size() != n)
        throw DimensionError("build_interpolation: graph/splitting size mismatch");

    CooMatrix coo(n, s.n_coarse());
    for (index_t i = 0; i < n; ++i) {
        if (s.is_coarse(i)) {
            coo.add(i, s.coarse_rank[static_cast<std::size_t>(i)], 1.0);
            continue;
        }
        const auto& si = g.rows[static_cast<std::size_t>(i)];
        if (si.empty()) continue; // isolated F-point: zero row

        real_t diag = 0.0, row_sum_off = 0.0;
        for (index_t k = a.row_ptr[static_cast<std::size_t>(i)];
             k < a.row_ptr[static_cast<std::size_t>(i + 1)]; ++k) {
            const index_t j = a.col_idx[static_cast<std::size_t>(k)];
            const real_t v = a.values[static_cast<std::size_t>(k)];
            if (j == i)
                diag = v;
            else
                row_sum_off += v;
        }
        real_t p_sum = 0.0;
        bool any_c = false;
        for (const index_t j : si)
            if (s.is_coarse(j)) {
                any_c = true;
                p_sum += a.at(i, j);
            }
        if (!any_c)
            throw InterpolationError("build_interpolation: F-point " + std::to_string(i) +
                                     " has no coarse point among its strong dependencies");
        if (diag == 0.0)
            throw InterpolationError("build_interpolation: zero diagonal at F-point " +
                                     std::to_string(i));
        if (p_sum == 0.0)
            throw InterpolationError("build_interpolation: zero interpolatory row sum at F-point " +
                                     std::to_string(i));
        const real_t scale = -(row_sum_off / p_sum) / diag;
        for (const index_t j : si)
            if (s.is_coarse(j))
                coo.add(i, s.coarse_rank[static_cast<std::size_t>(j)], scale * a.at(i, j));
    }

    Interpolation out;
    out.matrix = coo_to_csr(coo);
    out.coarse = s.coarse;
    return out;
}

} // namespace amgann

#endif // AMGANN_AMG_INTERPOLATION_HPP
