#ifndef AMGANN_SPARSE_MATRIX_MARKET_HPP
#define AMGANN_SPARSE_MATRIX_MARKET_HPP

/// @file matrix_market.hpp
/// @brief MatrixMarket coordinate-format reader/writer (debugging, corpus tests).

#include <fstream>
#include <sstream>
#include <string>

#include "amgann/core.hpp"
#include "amgann/sparse/coo.hpp"
#include "amgann/sparse/csr.hpp"

namespace amgann {

/// Write a CSR matrix as "%%MatrixMarket matrix coordinate real general" (1-based).
inline void write_matrix_market(const std::string& path, const CsrMatrix& a) {
    std::ofstream out(path);
    if (!out) throw IoError("write_matrix_market: cannot open " + path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
    out.precision(17);
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            out << (i + 1) << " " << (a.col_idx[static_cast<std::size_t>(k)] + 1) << " "
                << a.values[static_cast<std::size_t>(k)] << "\n";
    if (!out) throw IoError("write_matrix_market: write failed on " + path);
}

/// Read a MatrixMarket coordinate file ("general" or "symmetric", real values).
/// Symmetric storage is expanded to both triangles.
inline CooMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_matrix_market: cannot open " + path);

    std::string header;
    if (!std::getline(in, header)) throw IoError("read_matrix_market: empty file " + path);
    std::istringstream hs(header);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
        throw IoError("read_matrix_market: unsupported header in " + path + ": " + header);
    if (field != "real" && field != "integer")
        throw IoError("read_matrix_market: unsupported field type '" + field + "' in " + path);
    const bool symmetric = (symmetry == "symmetric");
    if (!symmetric && symmetry != "general")
        throw IoError("read_matrix_market: unsupported symmetry '" + symmetry + "' in " + path);

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream sizes(line);
    index_t rows = 0, cols = 0, count = 0;
    if (!(sizes >> rows >> cols >> count))
        throw IoError("read_matrix_market: malformed size line in " + path);

    CooMatrix m(rows, cols);
    m.entries.reserve(static_cast<std::size_t>(symmetric ? 2 * count : count));
    for (index_t k = 0; k < count; ++k) {
        index_t i = 0, j = 0;
        real_t v = 0.0;
        if (!(in >> i >> j >> v))
            throw IoError("read_matrix_market: truncated entry list in " + path);
        m.add(i - 1, j - 1, v);
        if (symmetric && i != j) m.add(j - 1, i - 1, v);
    }
    m.check_bounds();
    return m;
}

} // namespace amgann

#endif // AMGANN_SPARSE_MATRIX_MARKET_HPP
