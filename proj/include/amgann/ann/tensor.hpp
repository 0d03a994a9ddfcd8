#ifndef AMGANN_ANN_TENSOR_HPP
#define AMGANN_ANN_TENSOR_HPP

/// @file tensor.hpp
/// @brief Minimal channel-major tensor used at the network boundary.

#include <vector>

#include "amgann/core.hpp"

namespace amgann {

/// Dense (channels, height, width) tensor, row-major within each channel.
struct Tensor {
    index_t channels = 0;
    index_t height = 0;
    index_t width = 0;
    std::vector<real_t> values;

    Tensor() = default;
    Tensor(index_t c, index_t h, index_t w)
        : channels(c), height(h), width(w),
          values(static_cast<std::size_t>(c) * static_cast<std::size_t>(h) *
                 static_cast<std::size_t>(w)) {}

    index_t size() const { return channels * height * width; }

    void check() const {
        if (static_cast<index_t>(values.size()) != size())
            throw DimensionError("Tensor: value count does not match the shape");
    }
};

} // namespace amgann

#endif // AMGANN_ANN_TENSOR_HPP
