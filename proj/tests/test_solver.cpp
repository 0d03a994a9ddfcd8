// Solver tests: PCG against direct solves, the convergence-factor formula
// against a long-double oracle, and the diagnostic error paths.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "amgann/amg/hierarchy.hpp"
#include "amgann/fem/assemble.hpp"
#include "amgann/fem/problem.hpp"
#include "amgann/rng.hpp"
#include "amgann/solver/pcg.hpp"
#include "oracles.hpp"

using namespace amgann;

namespace {

// Independent recomputation in extended precision.
long double oracle_convergence_factor(const std::vector<real_t>& r) {
    const std::size_t k = r.size() - 1;
    return std::pow(static_cast<long double>(r.back()) / static_cast<long double>(r.front()),
                    1.0L / static_cast<long double>(k));
}

CsrMatrix identity_csr(index_t n) {
    CooMatrix coo(n, n);
    for (index_t i = 0; i < n; ++i) coo.add(i, i, 1.0);
    return coo_to_csr(coo);
}

} // namespace

// ==========================================================================
// convergence_factor
// ==========================================================================

TEST_CASE("convergence factor on pinned sequences", "[solver]") {
    REQUIRE(convergence_factor({1.0, 1e-4}) == Catch::Approx(1e-4).epsilon(1e-15));
    REQUIRE(convergence_factor({1.0, 0.5, 0.1, 0.02, 1e-4}) == Catch::Approx(0.1).epsilon(1e-15));
    REQUIRE(convergence_factor({3.7}) == 0.0);
    REQUIRE(convergence_factor({0.0}) == 0.0);
}

TEST_CASE("convergence factor error paths", "[solver]") {
    REQUIRE_THROWS_AS(convergence_factor({}), InvalidParameterError);
    REQUIRE_THROWS_AS(convergence_factor({0.0, 1.0}), DegenerateInputError);
}

TEST_CASE("convergence factor matches the extended-precision oracle", "[solver]") {
    Rng rng(404);
    std::vector<real_t> r{1.0};
    for (int i = 0; i < 12; ++i) r.push_back(r.back() * (0.05 + 0.9 * rng.next_unit()));
    const real_t got = convergence_factor(r);
    const long double expected = oracle_convergence_factor(r);
    REQUIRE(std::abs(got - static_cast<real_t>(expected)) <= 1e-15 * std::abs(got));
}

// ==========================================================================
// pcg
// ==========================================================================

TEST_CASE("zero right-hand side converges immediately", "[solver]") {
    const CsrMatrix a = oracle::laplacian_1d(6);
    const TwoLevelHierarchy h = amg_setup(a, 0.25);
    const auto [x, report] = pcg(a, std::vector<real_t>(6, 0.0), h);
    REQUIRE(report.converged);
    REQUIRE(report.iterations == 0);
    REQUIRE(report.rho == 0.0);
    REQUIRE(report.residual_norms == std::vector<real_t>{0.0});
    for (const real_t v : x) REQUIRE(v == 0.0);
}

TEST_CASE("identity system converges in one iteration", "[solver]") {
    const CsrMatrix a = identity_csr(7);
    const TwoLevelHierarchy h = amg_setup(a, 0.5);
    std::vector<real_t> f(7);
    Rng rng(21);
    for (auto& v : f) v = rng.next_unit() + 0.5;
    const auto [x, report] = pcg(a, f, h);
    REQUIRE(report.converged);
    REQUIRE(report.iterations == 1);
    for (std::size_t i = 0; i < 7; ++i) REQUIRE(x[i] == Catch::Approx(f[i]).epsilon(1e-14));
}

TEST_CASE("solution matches the direct solve on a patterned grid", "[solver]") {
    const ProblemSpec spec(StructuredMesh(16), DiffusionPattern::single(PatternKind::Checkerboard4x4, 2.0));
    const auto [a, f] = assemble(spec);
    const TwoLevelHierarchy h = amg_setup(a, 0.24);
    const auto [x, report] = pcg(a, f, h, 1e-12);
    REQUIRE(report.converged);
    const std::vector<real_t> x_direct = LuFactorization(a).solve(f);
    real_t max_ref = 0.0, max_diff = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        max_ref = std::max(max_ref, std::abs(x_direct[i]));
        max_diff = std::max(max_diff, std::abs(x[i] - x_direct[i]));
    }
    REQUIRE(max_diff <= 1e-9 * max_ref);
}

TEST_CASE("smooth-coefficient solve sits in the fast-convergence band", "[solver]") {
    const ProblemSpec spec(StructuredMesh(32), DiffusionPattern::single(PatternKind::TwoStrides, 0.0));
    const auto [a, f] = assemble(spec);
    const TwoLevelHierarchy h = amg_setup(a, 0.24);
    const auto [x, report] = pcg(a, f, h, 1e-8);
    REQUIRE(report.converged);
    REQUIRE(report.iterations <= 15);
    REQUIRE(report.rho <= 0.2);
}

TEST_CASE("converged flag implies the relative residual bound", "[solver]") {
    const ProblemSpec spec(StructuredMesh(8), DiffusionPattern::single(PatternKind::FourStrides, 3.5));
    const auto [a, f] = assemble(spec);
    const TwoLevelHierarchy h = amg_setup(a, 0.4);
    const real_t tol = 1e-8;
    const auto [x, report] = pcg(a, f, h, tol);
    REQUIRE(report.converged);
    // Recompute the true residual of the returned iterate.
    std::vector<real_t> r = spmv(a, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[i] - r[i];
    real_t rn = 0.0, fn = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        rn += r[i] * r[i];
        fn += f[i] * f[i];
    }
    REQUIRE(std::sqrt(rn) < 2.0 * tol * std::sqrt(fn)); // factor 2 for recomputation drift
    REQUIRE(report.rho >= 0.0);
    REQUIRE(report.rho < 1.0);
}

TEST_CASE("iteration cap leaves the solve unconverged but reported", "[solver]") {
    const ProblemSpec spec(StructuredMesh(16), DiffusionPattern::single(PatternKind::Checkerboard2x2, 5.0));
    const auto [a, f] = assemble(spec);
    const TwoLevelHierarchy h = amg_setup(a, 0.72);
    const auto [x, report] = pcg(a, f, h, 1e-14, 2);
    REQUIRE_FALSE(report.converged);
    REQUIRE(report.iterations == 2);
    REQUIRE(report.residual_norms.size() == 3);
}

TEST_CASE("reported rho recomputes from the residual list", "[solver]") {
    const ProblemSpec spec(StructuredMesh(16), DiffusionPattern::single(PatternKind::TwoStrides, 1.0));
    const auto [a, f] = assemble(spec);
    const TwoLevelHierarchy h = amg_setup(a, 0.24);
    const auto [x, report] = pcg(a, f, h);
    REQUIRE(report.iterations >= 1);
    REQUIRE(static_cast<index_t>(report.residual_norms.size()) == report.iterations + 1);
    const real_t recomputed = convergence_factor(report.residual_norms);
    REQUIRE(std::abs(report.rho - recomputed) <= 1e-15 * std::abs(recomputed));
    REQUIRE(report.elapsed_seconds >= 0.0);
}

TEST_CASE("indefinite preconditioner is diagnosed", "[solver]") {
    // Hierarchy built on -A: its two-level application approximates -A^{-1},
    // so the preconditioned inner product turns negative on the first apply.
    const CsrMatrix a = oracle::laplacian_5pt(4);
    CooMatrix neg(a.n_rows, a.n_cols);
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_ptr[static_cast<std::size_t>(i)];
             k < a.row_ptr[static_cast<std::size_t>(i + 1)]; ++k)
            neg.add(i, a.col_idx[static_cast<std::size_t>(k)],
                    -a.values[static_cast<std::size_t>(k)]);
    const TwoLevelHierarchy h_neg = amg_setup(coo_to_csr(neg), 0.5);
    std::vector<real_t> f(static_cast<std::size_t>(a.n_rows), 1.0);
    REQUIRE_THROWS_AS(pcg(a, f, h_neg), Error);
}

TEST_CASE("pcg input validation", "[solver]") {
    const CsrMatrix a = oracle::laplacian_1d(5);
    const TwoLevelHierarchy h = amg_setup(a, 0.25);
    const std::vector<real_t> f(5, 1.0);
    REQUIRE_THROWS_AS(pcg(a, std::vector<real_t>(4, 1.0), h), DimensionError);
    REQUIRE_THROWS_AS(pcg(a, f, h, 0.0), InvalidParameterError);
    REQUIRE_THROWS_AS(pcg(a, f, h, -1e-8), InvalidParameterError);
}

TEST_CASE("solve report serializes with optional residual history", "[solver]") {
    const ProblemSpec spec(StructuredMesh(8), DiffusionPattern::single(PatternKind::TwoStrides, 0.0));
    const auto [a, f] = assemble(spec);
    const TwoLevelHierarchy h = amg_setup(a, 0.24);
    const auto [x, report] = pcg(a, f, h);
    const nlohmann::json brief = to_json(report);
    REQUIRE(brief.at("iterations").get<index_t>() == report.iterations);
    REQUIRE(brief.at("rho").get<real_t>() == report.rho);
    REQUIRE(brief.at("converged").get<bool>() == report.converged);
    REQUIRE_FALSE(brief.contains("residual_norms"));
    const nlohmann::json full = to_json(report, true);
    REQUIRE(full.at("residual_norms").get<std::vector<real_t>>() == report.residual_norms);
}
