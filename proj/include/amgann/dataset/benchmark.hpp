#ifndef AMGANN_DATASET_BENCHMARK_HPP
#define AMGANN_DATASET_BENCHMARK_HPP

/// @file benchmark.hpp
/// @brief CPU-time measurement of PCG solves with the per-level repetition
///        schedule.

#include <cmath>
#include <ctime>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amgann/amg/hierarchy.hpp"
#include "amgann/core.hpp"
#include "amgann/fem/assemble.hpp"
#include "amgann/fem/problem.hpp"
#include "amgann/solver/pcg.hpp"

namespace amgann {

/// Process-CPU seconds (not wall time).
inline real_t cpu_seconds() {
    timespec ts;
    clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
    return static_cast<real_t>(ts.tv_sec) + 1e-9 * static_cast<real_t>(ts.tv_nsec);
}

/// Timing repetitions per refinement level: coarse meshes are timed many
/// times, fine meshes a few.
inline index_t repetition_count(index_t k) {
    switch (k) {
        case 3: return 200;
        case 4: return 100;
        case 5: return 50;
        case 6: return 20;
        case 7: return 10;
        case 8: return 7;
        case 9: return 5;
        case 10: return 4;
    }
    throw InvalidParameterError("repetition_count: k must lie in 3..10, got " + std::to_string(k));
}

/// Mean and population standard deviation of raw timings.
inline std::pair<real_t, real_t> mean_std(const std::vector<real_t>& xs) {
    if (xs.empty()) throw DegenerateInputError("mean_std: empty input");
    real_t mean = 0.0;
    for (real_t x : xs) mean += x;
    mean /= static_cast<real_t>(xs.size());
    real_t var = 0.0;
    for (real_t x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<real_t>(xs.size());
    return {mean, std::sqrt(var)};
}

/// One benchmarked configuration: problem, threshold, measured convergence
/// and CPU time of the PCG solve (setup excluded, preconditioner included).
struct BenchmarkPoint {
    DiffusionPattern coefficient;
    index_t k = 0;
    real_t theta = 0.0;
    real_t rho = 0.0;
    index_t iterations = 0;
    bool converged = true;
    real_t time_mean = 0.0;
    real_t time_std = 0.0;
    index_t repetitions = 0;
};

/// Times one already-set-up solve `repetitions` times.
inline BenchmarkPoint benchmark_solve(const CsrMatrix& a, const std::vector<real_t>& rhs,
                                      const TwoLevelHierarchy& h, index_t repetitions,
                                      real_t tol = 1e-8, index_t n_max = 500) {
    if (repetitions < 1)
        throw InvalidParameterError("benchmark_solve: repetitions must be >= 1");
    BenchmarkPoint p;
    p.theta = h.theta;
    p.repetitions = repetitions;
    std::vector<real_t> times(static_cast<std::size_t>(repetitions));
    for (index_t r = 0; r < repetitions; ++r) {
        const real_t t0 = cpu_seconds();
        const auto [u, report] = pcg(a, rhs, h, tol, n_max);
        times[static_cast<std::size_t>(r)] = cpu_seconds() - t0;
        if (r == 0) {
            p.rho = report.rho;
            p.iterations = report.iterations;
            p.converged = report.converged;
        }
    }
    const auto [mean, std_dev] = mean_std(times);
    p.time_mean = mean;
    p.time_std = std_dev;
    return p;
}

/// Called after each measured grid point with the count done so far and the
/// grand total, so long benchmark runs can report progress.
using BenchmarkProgress = std::function<void(const BenchmarkPoint&, std::size_t, std::size_t)>;

/// Benchmarks every (problem, k, theta) combination serially, with the
/// repetition schedule keyed to k.
inline std::vector<BenchmarkPoint> timing_benchmark(
    const std::vector<DiffusionPattern>& problems, index_t k_min, index_t k_max,
    const std::vector<real_t>& thetas, real_t tol = 1e-8, index_t n_max = 500,
    const BenchmarkProgress& progress = {}) {
    if (problems.empty() || thetas.empty())
        throw DegenerateInputError("timing_benchmark: empty problem or theta list");
    if (k_min > k_max) throw InvalidParameterError("timing_benchmark: k_min > k_max");
    const std::size_t total = problems.size() *
                              static_cast<std::size_t>(k_max - k_min + 1) * thetas.size();
    std::vector<BenchmarkPoint> points;
    for (const DiffusionPattern& pattern : problems)
        for (index_t k = k_min; k <= k_max; ++k) {
            const ProblemSpec spec(StructuredMesh(index_t{1} << k), pattern);
            const auto [a, rhs] = assemble(spec);
            for (real_t theta : thetas) {
                const TwoLevelHierarchy h = amg_setup(a, theta);
                BenchmarkPoint p = benchmark_solve(a, rhs, h, repetition_count(k), tol, n_max);
                p.coefficient = pattern;
                p.k = k;
                points.push_back(std::move(p));
                if (progress) progress(points.back(), points.size(), total);
            }
        }
    return points;
}

/// Serialization used by the command-line benchmark/analyze round trip.
inline nlohmann::json to_json(const BenchmarkPoint& p) {
    nlohmann::json j;
    j["pattern"] = pattern_name(p.coefficient.kind);
    if (p.coefficient.two_exponents)
        j["epsilon"] = {p.coefficient.eps_white, p.coefficient.eps_gray};
    else
        j["epsilon"] = p.coefficient.eps_white;
    j["k"] = p.k;
    j["theta"] = p.theta;
    j["rho"] = p.rho;
    j["iterations"] = p.iterations;
    j["converged"] = p.converged;
    j["time_mean"] = p.time_mean;
    j["time_std"] = p.time_std;
    j["repetitions"] = p.repetitions;
    return j;
}

inline BenchmarkPoint benchmark_point_from_json(const nlohmann::json& j) {
    BenchmarkPoint p;
    const PatternKind kind = pattern_from_name(j.at("pattern").get<std::string>());
    if (j.at("epsilon").is_array()) {
        const auto eps = j.at("epsilon");
        p.coefficient = DiffusionPattern::pair(kind, eps.at(0).get<real_t>(),
                                               eps.at(1).get<real_t>());
    } else {
        p.coefficient = DiffusionPattern::single(kind, j.at("epsilon").get<real_t>());
    }
    p.k = j.at("k").get<index_t>();
    p.theta = j.at("theta").get<real_t>();
    p.rho = j.at("rho").get<real_t>();
    p.iterations = j.at("iterations").get<index_t>();
    p.converged = j.at("converged").get<bool>();
    p.time_mean = j.at("time_mean").get<real_t>();
    p.time_std = j.at("time_std").get<real_t>();
    p.repetitions = j.at("repetitions").get<index_t>();
    return p;
}

} // namespace amgann

#endif // AMGANN_DATASET_BENCHMARK_HPP
