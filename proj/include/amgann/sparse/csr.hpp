#ifndef AMGANN_SPARSE_CSR_HPP
#define AMGANN_SPARSE_CSR_HPP

/// @file csr.hpp
/// @brief Canonical compressed-sparse-row matrix and its core operations:
///        COO conversion, matrix-vector product, transpose, sparse products.

#include <algorithm>
#include <string>
#include <vector>

#include "amgann/core.hpp"
#include "amgann/sparse/coo.hpp"

namespace amgann {

/// Canonical CSR matrix: per row, strictly increasing column indices and no
/// explicitly stored zeros.  Immutable by convention once built.
struct CsrMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<index_t> row_ptr{0};
    std::vector<index_t> col_idx;
    std::vector<real_t>  values;

    index_t nnz() const { return static_cast<index_t>(values.size()); }

    /// Value at (i, j), or 0 if not stored.  Binary search within the row.
    real_t at(index_t i, index_t j) const {
        const auto begin = col_idx.begin() + row_ptr[i];
        const auto end   = col_idx.begin() + row_ptr[i + 1];
        const auto it = std::lower_bound(begin, end, j);
        if (it == end || *it != j) return 0.0;
        return values[static_cast<std::size_t>(it - col_idx.begin())];
    }
};

/// Canonicalize a COO matrix: sort by (row, col), sum duplicates left-to-right,
/// drop entries whose summed value is exactly zero.
inline CsrMatrix coo_to_csr(const CooMatrix& m) {
    m.check_bounds();
    std::vector<CooMatrix::Entry> sorted = m.entries;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CooMatrix::Entry& a, const CooMatrix::Entry& b) {
                         return a.row != b.row ? a.row < b.row : a.col < b.col;
                     });

    CsrMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.row_ptr.assign(static_cast<std::size_t>(m.n_rows) + 1, 0);
    out.col_idx.reserve(sorted.size());
    out.values.reserve(sorted.size());

    std::size_t i = 0;
    while (i < sorted.size()) {
        const index_t row = sorted[i].row;
        const index_t col = sorted[i].col;
        real_t sum = 0.0;
        while (i < sorted.size() && sorted[i].row == row && sorted[i].col == col) {
            sum += sorted[i].value;
            ++i;
        }
        if (sum != 0.0) {
            out.col_idx.push_back(col);
            out.values.push_back(sum);
            ++out.row_ptr[static_cast<std::size_t>(row) + 1];
        }
    }
    for (index_t r = 0; r < m.n_rows; ++r)
        out.row_ptr[static_cast<std::size_t>(r) + 1] += out.row_ptr[static_cast<std::size_t>(r)];
    return out;
}

/// Emit a canonical CSR matrix as canonical COO (row-major entry order).
inline CooMatrix csr_to_coo(const CsrMatrix& a) {
    CooMatrix out(a.n_rows, a.n_cols);
    out.entries.reserve(static_cast<std::size_t>(a.nnz()));
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            out.add(i, a.col_idx[static_cast<std::size_t>(k)], a.values[static_cast<std::size_t>(k)]);
    return out;
}

/// y = A x.  Accumulation is left-to-right within each row so results are
/// bit-reproducible run to run.
inline std::vector<real_t> spmv(const CsrMatrix& a, const std::vector<real_t>& x) {
    if (static_cast<index_t>(x.size()) != a.n_cols)
        throw DimensionError("spmv: x has length " + std::to_string(x.size()) +
                             ", expected " + std::to_string(a.n_cols));
    std::vector<real_t> y(static_cast<std::size_t>(a.n_rows), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        real_t acc = 0.0;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            acc += a.values[static_cast<std::size_t>(k)] *
                   x[static_cast<std::size_t>(a.col_idx[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

/// Exact transpose via counting sort; output is canonical CSR.
inline CsrMatrix transpose(const CsrMatrix& a) {
    CsrMatrix out;
    out.n_rows = a.n_cols;
    out.n_cols = a.n_rows;
    out.row_ptr.assign(static_cast<std::size_t>(a.n_cols) + 1, 0);
    out.col_idx.resize(static_cast<std::size_t>(a.nnz()));
    out.values.resize(static_cast<std::size_t>(a.nnz()));

    for (index_t k = 0; k < a.nnz(); ++k)
        ++out.row_ptr[static_cast<std::size_t>(a.col_idx[static_cast<std::size_t>(k)]) + 1];
    for (index_t c = 0; c < a.n_cols; ++c)
        out.row_ptr[static_cast<std::size_t>(c) + 1] += out.row_ptr[static_cast<std::size_t>(c)];

    std::vector<index_t> cursor(out.row_ptr.begin(), out.row_ptr.end() - 1);
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const index_t c = a.col_idx[static_cast<std::size_t>(k)];
            const index_t dst = cursor[static_cast<std::size_t>(c)]++;
            out.col_idx[static_cast<std::size_t>(dst)] = i;
            out.values[static_cast<std::size_t>(dst)] = a.values[static_cast<std::size_t>(k)];
        }
    }
    return out;
}

/// C = A B with a per-row sparse accumulator.  Deterministic: contributions to
/// each output entry are summed in the left matrix's traversal order.
inline CsrMatrix csr_matmul(const CsrMatrix& a, const CsrMatrix& b) {
    if (a.n_cols != b.n_rows)
        throw DimensionError("csr_matmul: inner dimensions " + std::to_string(a.n_cols) +
                             " and " + std::to_string(b.n_rows) + " differ");
    CsrMatrix out;
    out.n_rows = a.n_rows;
    out.n_cols = b.n_cols;
    out.row_ptr.assign(static_cast<std::size_t>(a.n_rows) + 1, 0);

    std::vector<real_t> acc(static_cast<std::size_t>(b.n_cols), 0.0);
    std::vector<char>   touched(static_cast<std::size_t>(b.n_cols), 0);
    std::vector<index_t> cols;

    for (index_t i = 0; i < a.n_rows; ++i) {
        cols.clear();
        for (index_t ka = a.row_ptr[i]; ka < a.row_ptr[i + 1]; ++ka) {
            const index_t k = a.col_idx[static_cast<std::size_t>(ka)];
            const real_t av = a.values[static_cast<std::size_t>(ka)];
            for (index_t kb = b.row_ptr[k]; kb < b.row_ptr[k + 1]; ++kb) {
                const index_t j = b.col_idx[static_cast<std::size_t>(kb)];
                if (!touched[static_cast<std::size_t>(j)]) {
                    touched[static_cast<std::size_t>(j)] = 1;
                    cols.push_back(j);
                }
                acc[static_cast<std::size_t>(j)] += av * b.values[static_cast<std::size_t>(kb)];
            }
        }
        std::sort(cols.begin(), cols.end());
        for (const index_t j : cols) {
            const real_t v = acc[static_cast<std::size_t>(j)];
            if (v != 0.0) {
                out.col_idx.push_back(j);
                out.values.push_back(v);
                ++out.row_ptr[static_cast<std::size_t>(i) + 1];
            }
            acc[static_cast<std::size_t>(j)] = 0.0;
            touched[static_cast<std::size_t>(j)] = 0;
        }
    }
    for (index_t r = 0; r < out.n_rows; ++r)
        out.row_ptr[static_cast<std::size_t>(r) + 1] += out.row_ptr[static_cast<std::size_t>(r)];
    return out;
}

/// Galerkin-style triple product R A P (dimension chain checked).
inline CsrMatrix triple_product(const CsrMatrix& r, const CsrMatrix& a, const CsrMatrix& p) {
    if (r.n_cols != a.n_rows || a.n_cols != p.n_rows)
        throw DimensionError("triple_product: dimension chain " + std::to_string(r.n_rows) + "x" +
                             std::to_string(r.n_cols) + " * " + std::to_string(a.n_rows) + "x" +
                             std::to_string(a.n_cols) + " * " + std::to_string(p.n_rows) + "x" +
                             std::to_string(p.n_cols) + " does not compose");
    return csr_matmul(r, csr_matmul(a, p));
}

} // namespace amgann

#endif // AMGANN_SPARSE_CSR_HPP
