#ifndef AMGANN_SOLVER_PCG_HPP
#define AMGANN_SOLVER_PCG_HPP

/// @file pcg.hpp
/// @brief Preconditioned conjugate gradient with the two-level AMG preconditioner.

#include <chrono>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "amgann/amg/hierarchy.hpp"
#include "amgann/core.hpp"
#include "amgann/sparse/csr.hpp"

namespace amgann {

// ==========================================================================
// Solve report
// ==========================================================================

/// Telemetry of one PCG run.
struct SolveReport {
    index_t iterations = 0;                ///< N_it
    std::vector<real_t> residual_norms;    ///< ||r^(k)|| for k = 0..N_it
    real_t rho = 0.0;                      ///< approximate convergence factor
    real_t elapsed_seconds = 0.0;          ///< wall time of the iteration loop only
    bool converged = false;
};

/// Serializes a report; the residual history is included only on request.
inline nlohmann::json to_json(const SolveReport& r, bool with_residuals = false) {
    nlohmann::json j{{"iterations", r.iterations},
                     {"rho", r.rho},
                     {"elapsed_seconds", r.elapsed_seconds},
                     {"converged", r.converged}};
    if (with_residuals) j["residual_norms"] = r.residual_norms;
    return j;
}

// ==========================================================================
// Convergence factor
// ==========================================================================

/// Approximate convergence factor (||r^(k)|| / ||r^(0)||)^(1/k) at the last
/// index; 0 by convention when the list has a single entry.
///
/// @throws InvalidParameterError on an empty list
/// @throws DegenerateInputError  when the first norm is zero but others follow
inline real_t convergence_factor(const std::vector<real_t>& residuals) {
    if (residuals.empty())
        throw InvalidParameterError("convergence_factor: residual list is empty");
    const std::size_t k = residuals.size() - 1;
    if (k == 0) return 0.0;
    if (residuals.front() == 0.0)
        throw DegenerateInputError(
            "convergence_factor: first residual is zero but the list has later entries");
    return std::pow(residuals.back() / residuals.front(), 1.0 / static_cast<real_t>(k));
}

// ==========================================================================
// PCG
// ==========================================================================

namespace detail {

inline real_t dot(const std::vector<real_t>& a, const std::vector<real_t>& b) {
    real_t s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline real_t norm2(const std::vector<real_t>& v) { return std::sqrt(dot(v, v)); }

} // namespace detail

/// Conjugate gradient on an SPD matrix, preconditioned by one two-level AMG
/// iteration from a zero initial guess (a fixed symmetric linear operator).
///
/// Starts from x = 0 and stops at the first k with ||r^(k)|| < tol * ||f||
/// (or at n_max).  A zero right-hand side converges at k = 0 with rho = 0.
/// The elapsed time covers the iteration loop only, never the setup.
///
/// @throws Error on a negative preconditioned inner product (preconditioner
///         not SPD-consistent) or a non-positive search-direction curvature
inline std::pair<std::vector<real_t>, SolveReport> pcg(const CsrMatrix& a,
                                                       const std::vector<real_t>& f,
                                                       const TwoLevelHierarchy& hierarchy,
                                                       real_t tol = 1e-8,
                                                       index_t n_max = 500) {
    if (a.n_rows != a.n_cols) throw DimensionError("pcg: matrix must be square");
    if (static_cast<index_t>(f.size()) != a.n_rows)
        throw DimensionError("pcg: right-hand side length does not match the matrix");
    if (hierarchy.n() != a.n_rows)
        throw DimensionError("pcg: hierarchy was built for a different size");
    if (!(tol > 0.0)) throw InvalidParameterError("pcg: tol must be positive");
    if (n_max < 0) throw InvalidParameterError("pcg: n_max must be >= 0");

    const std::size_t n = static_cast<std::size_t>(a.n_rows);
    std::vector<real_t> x(n, 0.0);
    std::vector<real_t> r = f; // r^(0) = f - A*0
    const std::vector<real_t> zero(n, 0.0);

    SolveReport report;
    const real_t f_norm = detail::norm2(f);
    report.residual_norms.push_back(f_norm);
    if (f_norm == 0.0) {
        report.converged = true;
        report.rho = 0.0;
        return {std::move(x), std::move(report)};
    }

    const auto apply_precon = [&](const std::vector<real_t>& rhs) {
        std::vector<real_t> z = two_level_iteration(hierarchy, zero, rhs);
        const real_t rz = detail::dot(rhs, z);
        if (rz < 0.0)
            throw Error("pcg: negative inner product between residual and preconditioned "
                        "residual; the preconditioner is not SPD-consistent");
        return std::make_pair(std::move(z), rz);
    };

    const auto t_start = std::chrono::steady_clock::now();
    auto [z, rz] = apply_precon(r);
    std::vector<real_t> d = z;
    for (index_t k = 1; k <= n_max; ++k) {
        const std::vector<real_t> q = spmv(a, d);
        const real_t dq = detail::dot(d, q);
        if (dq <= 0.0)
            throw Error("pcg: non-positive search-direction curvature d.Ad = " +
                        std::to_string(dq) + "; matrix is not SPD");
        const real_t alpha = rz / dq;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * d[i];
            r[i] -= alpha * q[i];
        }
        const real_t r_norm = detail::norm2(r);
        report.residual_norms.push_back(r_norm);
        report.iterations = k;
        if (r_norm < tol * f_norm) {
            report.converged = true;
            break;
        }
        auto [z_new, rz_new] = apply_precon(r);
        const real_t beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) d[i] = z_new[i] + beta * d[i];
    }
    const auto t_stop = std::chrono::steady_clock::now();
    report.elapsed_seconds = std::chrono::duration<real_t>(t_stop - t_start).count();
    report.rho = convergence_factor(report.residual_norms);
    return {std::move(x), std::move(report)};
}

} // namespace amgann

#endif // AMGANN_SOLVER_PCG_HPP
