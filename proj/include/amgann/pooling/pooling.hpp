#ifndef AMGANN_POOLING_POOLING_HPP
#define AMGANN_POOLING_POOLING_HPP

/// @file pooling.hpp
/// @brief Bucketed compression of a sparse matrix into an m×m view and its
///        normalization variants for the network input.

#include <cmath>
#include <string>
#include <vector>

#include "amgann/core.hpp"
#include "amgann/sparse/coo.hpp"

namespace amgann {

// ==========================================================================
// View
// ==========================================================================

/// Bucketed m×m compression of an n×n sparse matrix: per-bucket value sums
/// and entry counts.
struct View {
    index_t m = 0;               ///< view side length
    index_t n = 0;               ///< source matrix side length
    std::vector<real_t> sums;    ///< m*m row-major value sums
    std::vector<index_t> counts; ///< m*m row-major entry counts

    real_t sum_at(index_t i, index_t j) const {
        return sums[static_cast<std::size_t>(i * m + j)];
    }
    index_t count_at(index_t i, index_t j) const {
        return counts[static_cast<std::size_t>(i * m + j)];
    }
};

/// Maps a fine index to its bucket: the first p buckets take q+1 indices,
/// the rest take q, with q = n/m and p = n mod m (all integer arithmetic).
/// For m > n the trailing buckets are simply empty.
inline index_t bucket_index(index_t row, index_t n, index_t m) {
    const index_t q = n / m;
    const index_t p = n % m;
    const index_t t = (q + 1) * p;
    return row < t ? row / (q + 1) : (row - t) / q + p;
}

/// Compresses the matrix into an m×m view in O(nnz).
///
/// @throws InvalidParameterError for m = 0
/// @throws DimensionError        for a non-square matrix
inline View pooling(const CooMatrix& a, index_t m) {
    if (m <= 0) throw InvalidParameterError("pooling: m must be positive");
    if (a.n_rows != a.n_cols) throw DimensionError("pooling: matrix must be square");
    a.check_bounds();
    View v;
    v.m = m;
    v.n = a.n_rows;
    v.sums.assign(static_cast<std::size_t>(m * m), 0.0);
    v.counts.assign(static_cast<std::size_t>(m * m), 0);
    for (const auto& e : a.entries) {
        const index_t bi = bucket_index(e.row, a.n_rows, m);
        const index_t bj = bucket_index(e.col, a.n_rows, m);
        v.sums[static_cast<std::size_t>(bi * m + bj)] += e.value;
        v.counts[static_cast<std::size_t>(bi * m + bj)] += 1;
    }
    return v;
}

// ==========================================================================
// Normalization
// ==========================================================================

enum class NormalizationMode { SumStandard, SumScaled, MeanStandard, MeanScaled };

inline std::string to_string(NormalizationMode mode) {
    switch (mode) {
        case NormalizationMode::SumStandard: return "sum-standard";
        case NormalizationMode::SumScaled: return "sum-scaled";
        case NormalizationMode::MeanStandard: return "mean-standard";
        case NormalizationMode::MeanScaled: return "mean-scaled";
    }
    throw InvalidParameterError("to_string: unknown normalization mode");
}

inline NormalizationMode normalization_mode_from_string(const std::string& s) {
    if (s == "sum-standard") return NormalizationMode::SumStandard;
    if (s == "sum-scaled") return NormalizationMode::SumScaled;
    if (s == "mean-standard") return NormalizationMode::MeanStandard;
    if (s == "mean-scaled") return NormalizationMode::MeanScaled;
    throw InvalidParameterError("unknown normalization mode: " + s);
}

/// Network-ready m×m input.
struct NormalizedView {
    index_t m = 0;
    NormalizationMode mode = NormalizationMode::SumStandard;
    std::vector<real_t> values; ///< m*m row-major

    real_t at(index_t i, index_t j) const {
        return values[static_cast<std::size_t>(i * m + j)];
    }
};

/// Normalizes a view.
///
/// Mean modes first replace each sum by its bucket mean (0 where the bucket
/// is empty).  Standard modes then center by the mean of the m² entries and
/// divide by their population standard deviation; scaled modes divide by the
/// largest absolute entry.
///
/// @throws DegenerateInputError on zero variance (standard) or an all-zero
///         view (scaled)
inline NormalizedView normalize(const View& v,
                                NormalizationMode mode = NormalizationMode::SumStandard) {
    const std::size_t total = static_cast<std::size_t>(v.m) * static_cast<std::size_t>(v.m);
    NormalizedView out;
    out.m = v.m;
    out.mode = mode;
    out.values = v.sums;

    const bool mean_first =
        mode == NormalizationMode::MeanStandard || mode == NormalizationMode::MeanScaled;
    if (mean_first)
        for (std::size_t i = 0; i < total; ++i)
            out.values[i] = v.counts[i] == 0
                                ? 0.0
                                : out.values[i] / static_cast<real_t>(v.counts[i]);

    const bool standard =
        mode == NormalizationMode::SumStandard || mode == NormalizationMode::MeanStandard;
    if (standard) {
        real_t mean = 0.0;
        for (const real_t x : out.values) mean += x;
        mean /= static_cast<real_t>(total);
        real_t var = 0.0;
        for (const real_t x : out.values) var += (x - mean) * (x - mean);
        var /= static_cast<real_t>(total);
        const real_t sigma = std::sqrt(var);
        if (sigma == 0.0)
            throw DegenerateInputError("normalize: constant view has zero standard deviation");
        for (real_t& x : out.values) x = (x - mean) / sigma;
    } else {
        real_t max_abs = 0.0;
        for (const real_t x : out.values) max_abs = std::max(max_abs, std::abs(x));
        if (max_abs == 0.0)
            throw DegenerateInputError("normalize: all-zero view cannot be scaled");
        for (real_t& x : out.values) x /= max_abs;
    }
    return out;
}

} // namespace amgann

#endif // AMGANN_POOLING_POOLING_HPP
