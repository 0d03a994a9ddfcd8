#ifndef AMGANN_PIPELINE_HPP
#define AMGANN_PIPELINE_HPP

/// @file pipeline.hpp
/// @brief End-to-end solver driver: pool the system matrix, let the trained
///        surrogate pick the strong threshold, then run the preconditioned
///        solve with that threshold.

#include <utility>
#include <vector>

#include "amgann/amg/hierarchy.hpp"
#include "amgann/ann/network.hpp"
#include "amgann/dataset/benchmark.hpp"
#include "amgann/dataset/generate.hpp"
#include "amgann/fem/assemble.hpp"
#include "amgann/pooling/pooling.hpp"
#include "amgann/solver/pcg.hpp"
#include "amgann/sparse/csr.hpp"

namespace amgann {

// ==========================================================================
// Threshold selection
// ==========================================================================

/// Outcome of sweeping the surrogate over a candidate threshold grid.
struct ThetaSelection {
    real_t theta_star = 0.0;       ///< grid point with the smallest prediction
    std::vector<real_t> grid;      ///< candidate thresholds, as given
    std::vector<real_t> predicted; ///< surrogate output per grid point
};

/// The candidate grid used when none is supplied: the same 25 equally spaced
/// thresholds on [0.12, 0.72] the training corpora cover.  The surrogate is
/// only trusted inside the range it was fitted on.
inline std::vector<real_t> default_selection_grid() { return theta_grid(25); }

/// Evaluates the surrogate at every grid threshold and returns the argmin.
/// Ties resolve to the smallest threshold (the sweep keeps the first strictly
/// smaller prediction).
inline ThetaSelection select_theta(const SurrogateModel& model, const NormalizedView& view,
                                   real_t log_h, const std::vector<real_t>& grid) {
    if (grid.empty()) throw InvalidParameterError("select_theta: grid must be nonempty");
    for (real_t theta : grid)
        if (!(theta > 0.0) || theta > 1.0)
            throw InvalidParameterError("select_theta: grid thresholds must lie in (0, 1]");

    ThetaSelection sel;
    sel.grid = grid;
    sel.predicted.reserve(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sel.predicted.push_back(forward(model, view, log_h, grid[i]));
        const bool smaller_value = sel.predicted[i] < sel.predicted[best];
        const bool tie_smaller_theta =
            sel.predicted[i] == sel.predicted[best] && grid[i] < grid[best];
        if (smaller_value || tie_smaller_theta) best = i;
    }
    sel.theta_star = grid[best];
    return sel;
}

// ==========================================================================
// Surrogate-driven solve
// ==========================================================================

/// Everything the driver produces: the discrete solution, the solver report,
/// the threshold-selection record, and the CPU seconds the selection stage
/// (pooling + normalization + surrogate sweep) cost on top of the solve.
struct AnnAmgResult {
    std::vector<real_t> solution;
    SolveReport report;
    ThetaSelection selection;
    real_t selection_seconds = 0.0;
};

/// Assembles the problem, pools and normalizes the matrix into the surrogate's
/// input view, selects the threshold, then builds the two-level hierarchy with
/// it and runs the preconditioned solve.  The selection overhead is timed
/// separately from the solve so its cost can be reported on its own.
inline AnnAmgResult ann_amg_solve(const ProblemSpec& problem, const SurrogateModel& model,
                                  const std::vector<real_t>& grid = default_selection_grid(),
                                  index_t nu_pre = 1, index_t nu_post = 1, index_t n_max = 500,
                                  real_t tol = 1e-8) {
    const auto [a, f] = assemble(problem);

    AnnAmgResult result;
    const real_t select_start = cpu_seconds();
    const View pooled = pooling(csr_to_coo(a), model.m);
    const NormalizedView view = normalize(pooled, model.mode);
    result.selection = select_theta(model, view, problem.mesh.neg_log2_h(), grid);
    result.selection_seconds = cpu_seconds() - select_start;

    const TwoLevelHierarchy hierarchy =
        amg_setup(a, result.selection.theta_star, nu_pre, nu_post);
    auto [x, report] = pcg(a, f, hierarchy, tol, n_max);
    result.solution = std::move(x);
    result.report = std::move(report);
    return result;
}

} // namespace amgann

#endif // AMGANN_PIPELINE_HPP
