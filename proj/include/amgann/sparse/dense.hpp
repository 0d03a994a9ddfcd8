#ifndef AMGANN_SPARSE_DENSE_HPP
#define AMGANN_SPARSE_DENSE_HPP

/// @file dense.hpp
/// @brief Dense matrix storage and the LU direct solve used on the coarse level.
///
/// Factorization and triangular solves are delegated to LAPACK's dgetrf/dgetrs
/// (provided by OpenBLAS); the singularity contract — reject any pivot smaller
/// than 1e-14 * max|a| — is enforced on the factored diagonal.

#include <cmath>
#include <string>
#include <vector>

#include "amgann/core.hpp"
#include "amgann/sparse/csr.hpp"

extern "C" {
void dgetrf_(const int* m, const int* n, double* a, const int* lda, int* ipiv, int* info);
void dgetrs_(const char* trans, const int* n, const int* nrhs, const double* a, const int* lda,
             const int* ipiv, double* b, const int* ldb, int* info);
}

namespace amgann {

/// Dense row-major matrix.
struct DenseMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<real_t> values; // row-major, n_rows * n_cols

    DenseMatrix() = default;
    DenseMatrix(index_t rows, index_t cols)
        : n_rows(rows), n_cols(cols),
          values(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

    real_t& at(index_t i, index_t j) {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_cols) +
                      static_cast<std::size_t>(j)];
    }
    real_t at(index_t i, index_t j) const {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_cols) +
                      static_cast<std::size_t>(j)];
    }
};

inline DenseMatrix csr_to_dense(const CsrMatrix& a) {
    DenseMatrix d(a.n_rows, a.n_cols);
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            d.at(i, a.col_idx[static_cast<std::size_t>(k)]) = a.values[static_cast<std::size_t>(k)];
    return d;
}

/// Pivoted LU factorization of a square matrix, reusable for repeated solves.
class LuFactorization {
public:
    /// Factorize a square dense matrix (values consumed by copy into column-major).
    explicit LuFactorization(const DenseMatrix& a) {
        if (a.n_rows != a.n_cols)
            throw DimensionError("LuFactorization: matrix is " + std::to_string(a.n_rows) + "x" +
                                 std::to_string(a.n_cols) + ", must be square");
        n_ = a.n_rows;
        lu_.resize(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
        real_t max_abs = 0.0;
        for (index_t i = 0; i < n_; ++i)
            for (index_t j = 0; j < n_; ++j) {
                const real_t v = a.at(i, j);
                lu_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(i)] = v; // column-major
                max_abs = std::max(max_abs, std::abs(v));
            }
        factorize(max_abs);
    }

    /// Factorize a square CSR matrix without materializing a row-major copy.
    explicit LuFactorization(const CsrMatrix& a) {
        if (a.n_rows != a.n_cols)
            throw DimensionError("LuFactorization: matrix is " + std::to_string(a.n_rows) + "x" +
                                 std::to_string(a.n_cols) + ", must be square");
        n_ = a.n_rows;
        lu_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
        real_t max_abs = 0.0;
        for (index_t i = 0; i < n_; ++i)
            for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
                const index_t j = a.col_idx[static_cast<std::size_t>(k)];
                const real_t v = a.values[static_cast<std::size_t>(k)];
                lu_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(i)] = v;
                max_abs = std::max(max_abs, std::abs(v));
            }
        factorize(max_abs);
    }

    index_t n() const { return n_; }

    /// Solve A x = b using the stored factors.
    std::vector<real_t> solve(const std::vector<real_t>& b) const {
        if (static_cast<index_t>(b.size()) != n_)
            throw DimensionError("LuFactorization::solve: rhs has length " +
                                 std::to_string(b.size()) + ", expected " + std::to_string(n_));
        std::vector<real_t> x = b;
        const int n = static_cast<int>(n_);
        const int one = 1;
        int info = 0;
        const char trans = 'N';
        dgetrs_(&trans, &n, &one, lu_.data(), &n, ipiv_.data(), x.data(), &n, &info);
        if (info != 0)
            throw SingularMatrixError("dgetrs failed with info=" + std::to_string(info));
        return x;
    }

private:
    void factorize(real_t max_abs) {
        ipiv_.resize(static_cast<std::size_t>(n_));
        const int n = static_cast<int>(n_);
        int info = 0;
        dgetrf_(&n, &n, lu_.data(), &n, ipiv_.data(), &info);
        if (info < 0)
            throw Error("dgetrf: illegal argument " + std::to_string(-info));
        // Singularity: exact zero pivot reported by LAPACK, or any pivot below
        // the relative threshold 1e-14 * max|a|.
        const real_t threshold = 1e-14 * max_abs;
        for (index_t i = 0; i < n_; ++i) {
            const real_t pivot = lu_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                                     static_cast<std::size_t>(i)];
            if (info > 0 || std::abs(pivot) <= threshold)
                throw SingularMatrixError("lu_solve_dense: pivot " + std::to_string(pivot) +
                                          " at position " + std::to_string(i) +
                                          " below singularity threshold " + std::to_string(threshold));
        }
    }

    index_t n_ = 0;
    std::vector<real_t> lu_;   // column-major factors as left by dgetrf
    std::vector<int> ipiv_;
};

/// One-shot dense direct solve with partial pivoting.
inline std::vector<real_t> lu_solve_dense(const DenseMatrix& a, const std::vector<real_t>& b) {
    return LuFactorization(a).solve(b);
}

} // namespace amgann

#endif // AMGANN_SPARSE_DENSE_HPP
