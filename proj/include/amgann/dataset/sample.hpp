#ifndef AMGANN_DATASET_SAMPLE_HPP
#define AMGANN_DATASET_SAMPLE_HPP

/// @file sample.hpp
/// @brief One labelled training record and its binary corpus frame.
///
/// Corpus files are sequences of newline-terminated binary frames:
///   "AMGS" magic, version byte (1),
///   field count u8, then tagged fields (tag u8, byte length u8, payload),
///   the normalized view blob (m*m f64, little-endian), '\n'.
/// Unknown tags are skipped by length, so readers tolerate future additions.

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "amgann/ann/train.hpp"
#include "amgann/binary_io.hpp"
#include "amgann/core.hpp"
#include "amgann/fem/problem.hpp"
#include "amgann/pooling/pooling.hpp"

namespace amgann {

// ==========================================================================
// Sample
// ==========================================================================

/// One data point: the network inputs (view, -log2 h, theta), the measured
/// convergence factor, and the provenance/measurement metadata.
struct Sample {
    std::vector<real_t> view; ///< m*m normalized values, row-major
    index_t m = 0;
    NormalizationMode mode = NormalizationMode::SumStandard;
    index_t k = 0; ///< -log2 h; the mesh has N = 2^k cells per side
    real_t theta = 0.0;
    real_t rho = 0.0; ///< regression target

    DiffusionPattern coefficient;
    index_t iterations = 0;
    bool converged = true;
    real_t elapsed_mean = 0.0; ///< CPU seconds per solve; 0 when untimed
    real_t elapsed_std = 0.0;
    index_t repetitions = 0; ///< timing repetitions; 0 when untimed

    index_t n_grid() const { return index_t{1} << k; }
    real_t neg_log2_h() const { return static_cast<real_t>(k); }
};

/// Network-facing distillation of a sample.
inline TrainSample to_train_sample(const Sample& s) {
    TrainSample t;
    t.input = s.view;
    t.log_h = s.neg_log2_h();
    t.theta = s.theta;
    t.target = s.rho;
    return t;
}

inline std::vector<TrainSample> to_train_samples(const std::vector<Sample>& samples) {
    std::vector<TrainSample> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(to_train_sample(s));
    return out;
}

// ==========================================================================
// Frame I/O
// ==========================================================================

namespace detail {

// Field tags.  Payload sizes are implied by the type but written explicitly
// so unknown tags remain skippable.
enum : unsigned char {
    kTagPattern = 1,    // u8: 0 two_strides, 1 checkerboard_2x2, 2 four_strides, 3 checkerboard_4x4
    kTagCoefKind = 2,   // u8: 0 single exponent, 1 (eps1, eps2) pair
    kTagEps1 = 3,       // f64
    kTagEps2 = 4,       // f64
    kTagK = 5,          // u8
    kTagTheta = 6,      // f64
    kTagRho = 7,        // f64
    kTagConverged = 8,  // u8
    kTagIterations = 9, // i64
    kTagElapsedMean = 10, // f64
    kTagElapsedStd = 11,  // f64
    kTagRepetitions = 12, // i64
    kTagM = 13,           // i64
    kTagMode = 14,        // ASCII name
};

inline unsigned char pattern_code(PatternKind k) {
    switch (k) {
        case PatternKind::TwoStrides: return 0;
        case PatternKind::Checkerboard2x2: return 1;
        case PatternKind::FourStrides: return 2;
        case PatternKind::Checkerboard4x4: return 3;
    }
    throw Error("pattern_code: invalid kind");
}

inline PatternKind pattern_from_code(unsigned char c) {
    switch (c) {
        case 0: return PatternKind::TwoStrides;
        case 1: return PatternKind::Checkerboard2x2;
        case 2: return PatternKind::FourStrides;
        case 3: return PatternKind::Checkerboard4x4;
    }
    throw IoError("corpus frame: unknown pattern code " + std::to_string(c));
}

} // namespace detail

/// Writes one frame.  The stream must be binary.
inline void append_frame(std::ostream& out, const Sample& s) {
    if (static_cast<index_t>(s.view.size()) != s.m * s.m)
        throw DimensionError("append_frame: view size does not match m*m");
    out.write("AMGS", 4);
    detail::store_byte(out, 1);
    detail::store_byte(out, 14); // field count

    const auto field_u8 = [&out](unsigned char tag, unsigned char v) {
        detail::store_byte(out, tag);
        detail::store_byte(out, 1);
        detail::store_byte(out, v);
    };
    const auto field_f64 = [&out](unsigned char tag, real_t v) {
        detail::store_byte(out, tag);
        detail::store_byte(out, 8);
        detail::store_f64(out, v);
    };
    const auto field_i64 = [&out](unsigned char tag, index_t v) {
        detail::store_byte(out, tag);
        detail::store_byte(out, 8);
        detail::store_i64(out, v);
    };

    field_u8(detail::kTagPattern, detail::pattern_code(s.coefficient.kind));
    field_u8(detail::kTagCoefKind, s.coefficient.two_exponents ? 1 : 0);
    field_f64(detail::kTagEps1, s.coefficient.eps_white);
    field_f64(detail::kTagEps2, s.coefficient.eps_gray);
    field_u8(detail::kTagK, static_cast<unsigned char>(s.k));
    field_f64(detail::kTagTheta, s.theta);
    field_f64(detail::kTagRho, s.rho);
    field_u8(detail::kTagConverged, s.converged ? 1 : 0);
    field_i64(detail::kTagIterations, s.iterations);
    field_f64(detail::kTagElapsedMean, s.elapsed_mean);
    field_f64(detail::kTagElapsedStd, s.elapsed_std);
    field_i64(detail::kTagRepetitions, s.repetitions);
    field_i64(detail::kTagM, s.m);
    const std::string mode = to_string(s.mode);
    detail::store_byte(out, detail::kTagMode);
    detail::store_byte(out, static_cast<unsigned char>(mode.size()));
    out.write(mode.data(), static_cast<std::streamsize>(mode.size()));

    for (real_t v : s.view) detail::store_f64(out, v);
    out.put('\n');
    if (!out) throw IoError("corpus write failed");
}

/// Reads one frame.  Returns nothing at a clean end of file; throws IoError
/// on a malformed or truncated frame.
inline std::optional<Sample> read_frame(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() == 0 && in.eof()) return std::nullopt;
    if (!in || std::string(magic, 4) != "AMGS")
        throw IoError("corpus frame: bad magic");
    const unsigned char version = detail::load_byte(in);
    if (version != 1)
        throw IoError("corpus frame: unsupported version " + std::to_string(version));

    Sample s;
    bool has_m = false;
    PatternKind kind = PatternKind::TwoStrides;
    bool two_exponents = false;
    real_t eps1 = 0.0, eps2 = 0.0;
    const unsigned char n_fields = detail::load_byte(in);
    for (unsigned char f = 0; f < n_fields; ++f) {
        const unsigned char tag = detail::load_byte(in);
        const unsigned char len = detail::load_byte(in);
        switch (tag) {
            case detail::kTagPattern: kind = detail::pattern_from_code(detail::load_byte(in)); break;
            case detail::kTagCoefKind: two_exponents = detail::load_byte(in) != 0; break;
            case detail::kTagEps1: eps1 = detail::load_f64(in); break;
            case detail::kTagEps2: eps2 = detail::load_f64(in); break;
            case detail::kTagK: s.k = detail::load_byte(in); break;
            case detail::kTagTheta: s.theta = detail::load_f64(in); break;
            case detail::kTagRho: s.rho = detail::load_f64(in); break;
            case detail::kTagConverged: s.converged = detail::load_byte(in) != 0; break;
            case detail::kTagIterations: s.iterations = detail::load_i64(in); break;
            case detail::kTagElapsedMean: s.elapsed_mean = detail::load_f64(in); break;
            case detail::kTagElapsedStd: s.elapsed_std = detail::load_f64(in); break;
            case detail::kTagRepetitions: s.repetitions = detail::load_i64(in); break;
            case detail::kTagM:
                s.m = detail::load_i64(in);
                has_m = true;
                break;
            case detail::kTagMode: {
                std::string mode(len, '\0');
                in.read(mode.data(), len);
                if (!in) throw IoError("corpus frame: truncated mode field");
                s.mode = normalization_mode_from_string(mode);
                break;
            }
            default: // unknown field: skip by length
                in.ignore(len);
                if (!in) throw IoError("corpus frame: truncated unknown field");
        }
    }
    s.coefficient = two_exponents ? DiffusionPattern::pair(kind, eps1, eps2)
                                  : DiffusionPattern::single(kind, eps1);
    if (!has_m || s.m < 1) throw IoError("corpus frame: missing view size");

    s.view.resize(static_cast<std::size_t>(s.m) * static_cast<std::size_t>(s.m));
    for (real_t& v : s.view) v = detail::load_f64(in);
    const int nl = in.get();
    if (nl != '\n') throw IoError("corpus frame: missing terminator");
    return s;
}

// ==========================================================================
// Whole-file helpers
// ==========================================================================

/// Tolerant scan: everything before the first damaged frame, plus how many
/// bytes of the file those intact frames occupy.
struct CorpusScan {
    std::vector<Sample> samples;
    std::uint64_t valid_bytes = 0;
    bool truncated = false; ///< the file had a damaged or partial tail
};

inline CorpusScan scan_corpus(std::istream& in) {
    CorpusScan scan;
    while (true) {
        try {
            std::optional<Sample> s = read_frame(in);
            if (!s) break;
            scan.samples.push_back(std::move(*s));
            scan.valid_bytes = static_cast<std::uint64_t>(in.tellg());
        } catch (const IoError&) {
            scan.truncated = true;
            break;
        }
    }
    return scan;
}

inline CorpusScan scan_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return scan_corpus(in);
}

/// Strict load: any damage is an error.
inline std::vector<Sample> load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<Sample> samples;
    while (std::optional<Sample> s = read_frame(in)) samples.push_back(std::move(*s));
    return samples;
}

/// Writes a whole corpus (used by split outputs).
inline void save_corpus(const std::string& path, const std::vector<Sample>& samples) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (const Sample& s : samples) append_frame(out, s);
}

} // namespace amgann

#endif // AMGANN_DATASET_SAMPLE_HPP
