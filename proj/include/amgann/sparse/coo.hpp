#ifndef AMGANN_SPARSE_COO_HPP
#define AMGANN_SPARSE_COO_HPP

/// @file coo.hpp
/// @brief Coordinate-list sparse matrix (assembly and pooling input format).

#include <vector>

#include "amgann/core.hpp"

namespace amgann {

/// Sparse matrix in coordinate-list form.  Duplicate (row, col) entries are
/// permitted and are summed during canonicalization (coo_to_csr).
struct CooMatrix {
    struct Entry {
        index_t row = 0;
        index_t col = 0;
        real_t  value = 0.0;
    };

    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<Entry> entries;

    CooMatrix() = default;
    CooMatrix(index_t rows, index_t cols) : n_rows(rows), n_cols(cols) {}

    void add(index_t row, index_t col, real_t value) {
        entries.push_back({row, col, value});
    }

    index_t nnz() const { return static_cast<index_t>(entries.size()); }

    /// Throws if any entry lies outside [0, n_rows) x [0, n_cols).
    void check_bounds() const {
        for (const Entry& e : entries) {
            if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols)
                throw DimensionError("CooMatrix: entry index (" + std::to_string(e.row) + ", " +
                                     std::to_string(e.col) + ") out of bounds for " +
                                     std::to_string(n_rows) + "x" + std::to_string(n_cols));
        }
    }
};

} // namespace amgann

#endif // AMGANN_SPARSE_COO_HPP
