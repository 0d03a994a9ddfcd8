#ifndef AMGANN_ANN_MODEL_IO_HPP
#define AMGANN_ANN_MODEL_IO_HPP

/// @file model_io.hpp
/// @brief Binary model file format.
///
/// Layout (all multi-byte values little-endian):
///   "AMGM" magic, version byte (1),
///   conv group 1: width i64, depth i64, dropout f64,
///   second-group flag byte, then the same three fields when present,
///   head_units i64, dense_width i64, dense_depth i64,
///   m i64, init seed u64,
///   normalization mode as u8 length + ASCII name,
///   parameter count u64, then that many f64 in layout order.

#include <cstdint>
#include <fstream>
#include <string>

#include "amgann/ann/network.hpp"
#include "amgann/binary_io.hpp"
#include "amgann/core.hpp"

namespace amgann {

/// Serializes a model to a stream.
inline void save_model(std::ostream& out, const SurrogateModel& model) {
    out.write("AMGM", 4);
    detail::store_byte(out, 1);
    auto store_group = [&out](const ConvGroupConfig& g) {
        detail::store_i64(out, g.width);
        detail::store_i64(out, g.depth);
        detail::store_f64(out, g.dropout);
    };
    store_group(model.config.conv1);
    detail::store_byte(out, model.config.conv2 ? 1 : 0);
    if (model.config.conv2) store_group(*model.config.conv2);
    detail::store_i64(out, model.config.head_units);
    detail::store_i64(out, model.config.dense_width);
    detail::store_i64(out, model.config.dense_depth);
    detail::store_i64(out, model.m);
    detail::store_u64(out, model.init_seed);
    const std::string mode = to_string(model.mode);
    detail::store_byte(out, static_cast<unsigned char>(mode.size()));
    out.write(mode.data(), static_cast<std::streamsize>(mode.size()));
    detail::store_u64(out, model.params.size());
    for (real_t p : model.params) detail::store_f64(out, p);
    if (!out) throw IoError("model write failed");
}

/// Restores a model; rejects unknown versions and size mismatches.
inline SurrogateModel load_model(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "AMGM")
        throw IoError("not a model file (bad magic)");
    const unsigned char version = detail::load_byte(in);
    if (version != 1)
        throw IoError("unsupported model file version " + std::to_string(version));
    SurrogateModel model;
    auto load_group = [&in]() {
        ConvGroupConfig g;
        g.width = detail::load_i64(in);
        g.depth = detail::load_i64(in);
        g.dropout = detail::load_f64(in);
        return g;
    };
    model.config.conv1 = load_group();
    if (detail::load_byte(in) != 0) model.config.conv2 = load_group();
    model.config.head_units = detail::load_i64(in);
    model.config.dense_width = detail::load_i64(in);
    model.config.dense_depth = detail::load_i64(in);
    model.m = detail::load_i64(in);
    model.init_seed = detail::load_u64(in);
    const unsigned char mode_len = detail::load_byte(in);
    std::string mode(mode_len, '\0');
    in.read(mode.data(), mode_len);
    if (!in) throw IoError("model file truncated");
    model.mode = normalization_mode_from_string(mode);
    validate(model.config);
    const std::uint64_t count = detail::load_u64(in);
    const ParamLayout layout = model.layout();
    if (count != layout.total)
        throw IoError("model parameter count " + std::to_string(count) +
                      " does not match the configuration (expected " +
                      std::to_string(layout.total) + ")");
    model.params.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) model.params[i] = detail::load_f64(in);
    return model;
}

/// Saves a model to a file.
inline void save_model(const std::string& path, const SurrogateModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    save_model(out, model);
}

/// Loads a model from a file.
inline SurrogateModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_model(in);
}

} // namespace amgann

#endif // AMGANN_ANN_MODEL_IO_HPP
