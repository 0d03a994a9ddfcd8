#ifndef AMGANN_AMG_HIERARCHY_HPP
#define AMGANN_AMG_HIERARCHY_HPP

/// @file hierarchy.hpp
/// @brief Two-level AMG hierarchy: setup and one cycle of the two-level method.

#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "amgann/amg/cf_split.hpp"
#include "amgann/amg/interpolation.hpp"
#include "amgann/amg/smoother.hpp"
#include "amgann/amg/strong_graph.hpp"
#include "amgann/core.hpp"
#include "amgann/sparse/csr.hpp"
#include "amgann/sparse/dense.hpp"

namespace amgann {

// ==========================================================================
// Two-level hierarchy
// ==========================================================================

/// Immutable two-level hierarchy: fine operator, grid-transfer pair, Galerkin
/// coarse operator with its dense LU factorization, and the smoother config.
struct TwoLevelHierarchy {
    CsrMatrix a;               ///< fine-level operator
    CsrMatrix prolongation;    ///< n × n_coarse
    CsrMatrix restriction;     ///< transpose of the prolongation
    CsrMatrix a_coarse;        ///< Galerkin product, restriction * a * prolongation
    LuFactorization coarse_lu; ///< dense factorization of a_coarse
    CfSplitting splitting;
    real_t theta = 0.0;
    index_t nu_pre = 1;  ///< forward Gauss-Seidel sweeps before correction
    index_t nu_post = 1; ///< backward Gauss-Seidel sweeps after correction

    index_t n() const { return a.n_rows; }
    index_t n_coarse() const { return a_coarse.n_rows; }
};

/// Builds the two-level hierarchy for an SPD matrix with strong-threshold theta.
///
/// Strong graph -> C/F splitting (with its degenerate all-C fallback) ->
/// direct interpolation -> Galerkin triple product -> dense LU of the coarse
/// operator.  Interpolation failures propagate.
inline TwoLevelHierarchy amg_setup(const CsrMatrix& a, real_t theta, index_t nu_pre = 1,
                                   index_t nu_post = 1) {
    if (nu_pre < 0 || nu_post < 0)
        throw InvalidParameterError("amg_setup: smoothing sweep counts must be >= 0");
    const StrongGraph g = strong_connections(a, theta);
    CfSplitting s = cf_split(g);
    Interpolation interp = build_interpolation(a, g, s);
    CsrMatrix r = transpose(interp.matrix);
    CsrMatrix a_h = triple_product(r, a, interp.matrix);
    LuFactorization lu(a_h);
    return TwoLevelHierarchy{a,
                             std::move(interp.matrix),
                             std::move(r),
                             std::move(a_h),
                             std::move(lu),
                             std::move(s),
                             theta,
                             nu_pre,
                             nu_post};
}

/// One iteration of the two-level method:
/// pre-smooth, residual, restrict, coarse solve, prolongate & correct, post-smooth.
inline std::vector<real_t> two_level_iteration(const TwoLevelHierarchy& h,
                                               std::vector<real_t> u,
                                               const std::vector<real_t>& f) {
    u = smooth(h.a, std::move(u), f, h.nu_pre, SweepDirection::Forward);

    std::vector<real_t> residual = spmv(h.a, u);
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = f[i] - residual[i];

    const std::vector<real_t> coarse_residual = spmv(h.restriction, residual);
    const std::vector<real_t> coarse_correction = h.coarse_lu.solve(coarse_residual);
    const std::vector<real_t> correction = spmv(h.prolongation, coarse_correction);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += correction[i];

    return smooth(h.a, std::move(u), f, h.nu_post, SweepDirection::Backward);
}

/// Setup statistics for dataset records and diagnostics.
inline nlohmann::json hierarchy_stats(const TwoLevelHierarchy& h) {
    return nlohmann::json{{"n", h.n()},
                          {"n_coarse", h.n_coarse()},
                          {"nnz_coarse", h.a_coarse.nnz()},
                          {"theta", h.theta},
                          {"degenerate_fallback", h.splitting.degenerate_fallback}};
}

} // namespace amgann

#endif // AMGANN_AMG_HIERARCHY_HPP
