#ifndef AMGANN_DATASET_GENERATE_HPP
#define AMGANN_DATASET_GENERATE_HPP

/// @file generate.hpp
/// @brief Resumable corpus generation over the pinned parameter grids.

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "amgann/amg/hierarchy.hpp"
#include "amgann/core.hpp"
#include "amgann/dataset/benchmark.hpp"
#include "amgann/dataset/sample.hpp"
#include "amgann/fem/assemble.hpp"
#include "amgann/fem/problem.hpp"
#include "amgann/pooling/pooling.hpp"
#include "amgann/solver/pcg.hpp"
#include "amgann/sparse/csr.hpp"

namespace amgann {

// ==========================================================================
// Parameter grids
// ==========================================================================

/// Equally spaced strong thresholds on [0.12, 0.72], endpoints included.
inline std::vector<real_t> theta_grid(index_t count) {
    if (count < 1) throw InvalidParameterError("theta_grid: count must be >= 1");
    std::vector<real_t> grid(static_cast<std::size_t>(count));
    if (count == 1) {
        grid[0] = 0.12;
        return grid;
    }
    for (index_t i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] =
            0.12 + 0.6 * static_cast<real_t>(i) / static_cast<real_t>(count - 1);
    return grid;
}

/// Coefficient magnitudes for the single-exponent corpus.
inline const std::vector<real_t>& dataset1_epsilons() {
    static const std::vector<real_t> eps = {0.0, 0.4, 0.8, 1.2, 1.6, 2.0,
                                            2.4, 2.8, 3.5, 5.0, 7.0, 9.5};
    return eps;
}

/// Exponent values paired into the 3x3 grid of the two-exponent corpus.
inline const std::vector<real_t>& dataset2_exponents() {
    static const std::vector<real_t> eps = {0.5, 1.5, 3.0};
    return eps;
}

inline const std::vector<PatternKind>& all_patterns() {
    static const std::vector<PatternKind> kinds = {
        PatternKind::TwoStrides, PatternKind::Checkerboard2x2, PatternKind::FourStrides,
        PatternKind::Checkerboard4x4};
    return kinds;
}

/// One point of a generation grid.
struct GenerateKey {
    DiffusionPattern coefficient;
    index_t k = 0;
    real_t theta = 0.0;
};

namespace detail {

inline void check_k_range(index_t min_k, index_t max_k) {
    if (min_k < 3 || max_k > 10 || min_k > max_k)
        throw InvalidParameterError("refinement range must satisfy 3 <= min <= max <= 10");
}

} // namespace detail

/// Dataset-1 grid: patterns x 12 epsilons x refinements x thetas, enumerated
/// in that nesting order.  The full-scale corpus (k up to 10, 25 thetas) has
/// 4 x 12 x 8 x 25 = 9600 keys.
inline std::vector<GenerateKey> dataset1_keys(index_t min_k, index_t max_k,
                                              index_t theta_count = 25) {
    detail::check_k_range(min_k, max_k);
    const std::vector<real_t> thetas = theta_grid(theta_count);
    std::vector<GenerateKey> keys;
    for (PatternKind kind : all_patterns())
        for (real_t eps : dataset1_epsilons())
            for (index_t k = min_k; k <= max_k; ++k)
                for (real_t theta : thetas)
                    keys.push_back({DiffusionPattern::single(kind, eps), k, theta});
    return keys;
}

/// Dataset-2 grid: patterns x 9 (eps1, eps2) pairs x refinements x thetas.
/// Full scale (k up to 10, 18 thetas): 4 x 9 x 8 x 18 = 5184 keys.
inline std::vector<GenerateKey> dataset2_keys(index_t min_k, index_t max_k,
                                              index_t theta_count = 18) {
    detail::check_k_range(min_k, max_k);
    const std::vector<real_t> thetas = theta_grid(theta_count);
    std::vector<GenerateKey> keys;
    for (PatternKind kind : all_patterns())
        for (real_t eps1 : dataset2_exponents())
            for (real_t eps2 : dataset2_exponents())
                for (index_t k = min_k; k <= max_k; ++k)
                    for (real_t theta : thetas)
                        keys.push_back({DiffusionPattern::pair(kind, eps1, eps2), k, theta});
    return keys;
}

// ==========================================================================
// Generation
// ==========================================================================

struct GenerateOptions {
    index_t m = 50;
    NormalizationMode mode = NormalizationMode::SumStandard;
    index_t min_k = 3;
    index_t max_k = 7;   ///< desk default; the full grids run to 10
    index_t theta_count = 0; ///< 0: dataset default (25 for ds1, 18 for ds2)
    bool time = false;   ///< measure CPU time with the repetition schedule
    real_t tol = 1e-8;
    index_t n_max = 500;
};

struct GenerateReport {
    index_t written = 0; ///< frames appended by this run
    index_t skipped = 0; ///< keys already present in the file
    index_t total = 0;   ///< keys in the requested grid
};

namespace detail {

using GenerateKeyId = std::tuple<int, int, real_t, real_t, index_t, real_t>;

inline GenerateKeyId key_id(const DiffusionPattern& c, index_t k, real_t theta) {
    return {static_cast<int>(c.kind), c.two_exponents ? 1 : 0, c.eps_white, c.eps_gray, k, theta};
}

} // namespace detail

/// Measures one sample: assemble, set up, solve (timed when `reps > 0`),
/// pool, normalize.
inline Sample generate_sample(const DiffusionPattern& coefficient, index_t k, real_t theta,
                              const GenerateOptions& opt) {
    const ProblemSpec spec(StructuredMesh(index_t{1} << k), coefficient);
    const auto [a, rhs] = assemble(spec);
    const TwoLevelHierarchy h = amg_setup(a, theta);

    Sample s;
    s.m = opt.m;
    s.mode = opt.mode;
    s.k = k;
    s.theta = theta;
    s.coefficient = coefficient;
    if (opt.time) {
        const BenchmarkPoint p =
            benchmark_solve(a, rhs, h, repetition_count(k), opt.tol, opt.n_max);
        s.rho = p.rho;
        s.iterations = p.iterations;
        s.converged = p.converged;
        s.elapsed_mean = p.time_mean;
        s.elapsed_std = p.time_std;
        s.repetitions = p.repetitions;
    } else {
        const auto [u, report] = pcg(a, rhs, h, opt.tol, opt.n_max);
        s.rho = report.rho;
        s.iterations = report.iterations;
        s.converged = report.converged;
    }
    s.view = normalize(pooling(csr_to_coo(a), opt.m), opt.mode).values;
    return s;
}

/// Called after each key is handled (written or skipped) with the running
/// report and the key, so long generation runs can report progress.
using GenerateProgress = std::function<void(const GenerateKey&, const GenerateReport&)>;

/// Appends every missing key of `keys` to the corpus at `path`, in order.
/// An existing file is scanned first: intact frames are kept and their keys
/// skipped; a damaged tail is truncated.  Interrupting and re-running
/// therefore converges to the same bytes as one uninterrupted run.
inline GenerateReport generate_corpus(const std::string& path,
                                      const std::vector<GenerateKey>& keys,
                                      const GenerateOptions& opt,
                                      const GenerateProgress& progress = {}) {
    GenerateReport report;
    report.total = static_cast<index_t>(keys.size());

    std::set<detail::GenerateKeyId> done;
    if (std::filesystem::exists(path)) {
        const CorpusScan scan = scan_corpus(path);
        for (const Sample& s : scan.samples) {
            if (s.m != opt.m || s.mode != opt.mode)
                throw InvalidParameterError(
                    "generate_corpus: existing corpus at '" + path +
                    "' was generated with a different view size or normalization mode");
            done.insert(detail::key_id(s.coefficient, s.k, s.theta));
        }
        if (scan.truncated) std::filesystem::resize_file(path, scan.valid_bytes);
    }

    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot open '" + path + "' for appending");
    for (const GenerateKey& key : keys) {
        if (done.count(detail::key_id(key.coefficient, key.k, key.theta))) {
            ++report.skipped;
        } else {
            const Sample s = generate_sample(key.coefficient, key.k, key.theta, opt);
            append_frame(out, s);
            out.flush(); // frame-granular durability for resumption
            ++report.written;
        }
        if (progress) progress(key, report);
    }
    return report;
}

inline GenerateReport generate_dataset1(const std::string& path, const GenerateOptions& opt,
                                        const GenerateProgress& progress = {}) {
    return generate_corpus(
        path, dataset1_keys(opt.min_k, opt.max_k, opt.theta_count == 0 ? 25 : opt.theta_count),
        opt, progress);
}

inline GenerateReport generate_dataset2(const std::string& path, const GenerateOptions& opt,
                                        const GenerateProgress& progress = {}) {
    return generate_corpus(
        path, dataset2_keys(opt.min_k, opt.max_k, opt.theta_count == 0 ? 18 : opt.theta_count),
        opt, progress);
}

} // namespace amgann

#endif // AMGANN_DATASET_GENERATE_HPP
