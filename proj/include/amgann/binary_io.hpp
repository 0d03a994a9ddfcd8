#ifndef AMGANN_BINARY_IO_HPP
#define AMGANN_BINARY_IO_HPP

/// @file binary_io.hpp
/// @brief Little-endian scalar serialization shared by the binary file formats.

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "amgann/core.hpp"

namespace amgann::detail {

inline void store_u64(std::ostream& out, std::uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
    out.write(bytes, 8);
}

inline void store_f64(std::ostream& out, real_t v) {
    store_u64(out, std::bit_cast<std::uint64_t>(v));
}

inline std::uint64_t load_u64(std::istream& in) {
    char bytes[8];
    in.read(bytes, 8);
    if (!in) throw IoError("file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    return v;
}

inline real_t load_f64(std::istream& in) { return std::bit_cast<real_t>(load_u64(in)); }

inline void store_i64(std::ostream& out, index_t v) {
    store_u64(out, static_cast<std::uint64_t>(v));
}

inline index_t load_i64(std::istream& in) { return static_cast<index_t>(load_u64(in)); }

inline void store_byte(std::ostream& out, unsigned char b) { out.put(static_cast<char>(b)); }

inline unsigned char load_byte(std::istream& in) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw IoError("file truncated");
    return static_cast<unsigned char>(c);
}

} // namespace amgann::detail

#endif // AMGANN_BINARY_IO_HPP
