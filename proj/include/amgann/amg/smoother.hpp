#ifndef AMGANN_AMG_SMOOTHER_HPP
#define AMGANN_AMG_SMOOTHER_HPP

/// @file smoother.hpp
/// @brief Gauss–Seidel smoothing sweeps (forward for pre-, backward for post-).

#include <string>
#include <vector>

#include "amgann/core.hpp"
#include "amgann/sparse/csr.hpp"

namespace amgann {

// ==========================================================================
// Smoother
// ==========================================================================

enum class SweepDirection { Forward, Backward };

namespace detail {

inline void gs_update_row(const CsrMatrix& a, std::vector<real_t>& u,
                          const std::vector<real_t>& f, index_t i) {
    real_t diag = 0.0, sigma = 0.0;
    for (index_t k = a.row_ptr[static_cast<std::size_t>(i)];
         k < a.row_ptr[static_cast<std::size_t>(i + 1)]; ++k) {
        const index_t j = a.col_idx[static_cast<std::size_t>(k)];
        const real_t v = a.values[static_cast<std::size_t>(k)];
        if (j == i)
            diag = v;
        else
            sigma += v * u[static_cast<std::size_t>(j)];
    }
    if (diag == 0.0)
        throw SingularMatrixError("smooth: zero diagonal entry in row " + std::to_string(i));
    u[static_cast<std::size_t>(i)] = (f[static_cast<std::size_t>(i)] - sigma) / diag;
}

} // namespace detail

/// Runs `sweeps` Gauss–Seidel sweeps on a u = f and returns the updated iterate.
///
/// Forward sweeps serve as pre-smoothing and backward sweeps as
/// post-smoothing, so a pre/post pair is symmetric.  sweeps = 0 returns u
/// unchanged.
///
/// @throws DimensionError      on size mismatch
/// @throws SingularMatrixError on a zero diagonal entry
inline std::vector<real_t> smooth(const CsrMatrix& a, std::vector<real_t> u,
                                  const std::vector<real_t>& f, index_t sweeps,
                                  SweepDirection direction) {
    if (a.n_rows != a.n_cols) throw DimensionError("smooth: matrix must be square");
    if (static_cast<index_t>(u.size()) != a.n_rows || static_cast<index_t>(f.size()) != a.n_rows)
        throw DimensionError("smooth: vector length does not match matrix size");
    for (index_t sweep = 0; sweep < sweeps; ++sweep) {
        if (direction == SweepDirection::Forward) {
            for (index_t i = 0; i < a.n_rows; ++i) detail::gs_update_row(a, u, f, i);
        } else {
            for (index_t i = a.n_rows - 1; i >= 0; --i) detail::gs_update_row(a, u, f, i);
        }
    }
    return u;
}

} // namespace amgann

#endif // AMGANN_AMG_SMOOTHER_HPP
