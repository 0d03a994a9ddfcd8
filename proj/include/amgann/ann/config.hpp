#ifndef AMGANN_ANN_CONFIG_HPP
#define AMGANN_ANN_CONFIG_HPP

/// @file config.hpp
/// @brief Network architecture description and the derived parameter layout.

#include <optional>
#include <string>
#include <vector>

#include "amgann/core.hpp"

namespace amgann {

// ==========================================================================
// Architecture configuration
// ==========================================================================

/// One convolutional stage: `width` output channels, `depth` successive 3x3
/// convolutions (the first zero-padded, the rest unpadded), then a 2x2
/// max-pool and dropout with the given rate.
struct ConvGroupConfig {
    index_t width = 1;
    index_t depth = 1;
    real_t dropout = 0.0;
};

/// Full architecture: one or two conv stages, a dense head of `head_units`
/// applied to the flattened conv output, then (after concatenating the two
/// scalar inputs) `dense_depth` dense layers of `dense_width` units and a
/// final linear unit.
struct NetworkConfig {
    ConvGroupConfig conv1{40, 2, 0.25};
    std::optional<ConvGroupConfig> conv2;
    index_t head_units = 128;
    index_t dense_width = 128;
    index_t dense_depth = 4;
};

inline void validate(const NetworkConfig& c) {
    const auto check_group = [](const ConvGroupConfig& g, const char* name) {
        if (g.width < 1 || g.depth < 1)
            throw InvalidParameterError(std::string("NetworkConfig: ") + name +
                                        " width and depth must be >= 1");
        if (g.dropout < 0.0 || g.dropout >= 1.0)
            throw InvalidParameterError(std::string("NetworkConfig: ") + name +
                                        " dropout rate must lie in [0, 1)");
    };
    check_group(c.conv1, "conv1");
    if (c.conv2) check_group(*c.conv2, "conv2");
    if (c.head_units < 1 || c.dense_width < 1 || c.dense_depth < 1)
        throw InvalidParameterError("NetworkConfig: head/dense sizes must be >= 1");
}

// ==========================================================================
// Parameter layout
// ==========================================================================

/// One named parameter tensor inside the flat parameter vector.
struct ParamSegment {
    std::string name;
    std::size_t offset = 0;
    std::size_t count = 0;
    index_t rows = 0; ///< matrix rows (output features); bias: count, cols 1
    index_t cols = 0;
};

/// Flat-parameter layout plus the activation shapes, both derived from the
/// config and the input side length m.
struct ParamLayout {
    std::vector<ParamSegment> segments;
    std::size_t total = 0;
    index_t flatten_size = 0; ///< conv output size feeding the dense head

    const ParamSegment& at(const std::string& name) const {
        for (const auto& s : segments)
            if (s.name == name) return s;
        throw InvalidParameterError("ParamLayout: no segment named " + name);
    }
};

/// Computes the layout, validating that every conv/pool keeps the spatial
/// dimensions positive.
inline ParamLayout build_layout(const NetworkConfig& config, index_t m) {
    validate(config);
    if (m < 1) throw InvalidParameterError("build_layout: m must be >= 1");

    ParamLayout layout;
    const auto push = [&layout](const std::string& name, index_t rows, index_t cols) {
        ParamSegment s;
        s.name = name;
        s.offset = layout.total;
        s.count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
        s.rows = rows;
        s.cols = cols;
        layout.segments.push_back(s);
        layout.total += s.count;
    };

    index_t channels = 1, height = m, width = m;
    std::vector<const ConvGroupConfig*> groups{&config.conv1};
    if (config.conv2) groups.push_back(&*config.conv2);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const ConvGroupConfig& group = *groups[g];
        const std::string prefix = "conv" + std::to_string(g + 1);
        for (index_t d = 0; d < group.depth; ++d) {
            const index_t in_ch = d == 0 ? channels : group.width;
            push(prefix + "." + std::to_string(d) + ".w", group.width, in_ch * 9);
            push(prefix + "." + std::to_string(d) + ".b", group.width, 1);
            if (d > 0) { // unpadded 3x3 shrinks by 2
                height -= 2;
                width -= 2;
                if (height < 1 || width < 1)
                    throw DimensionError("build_layout: unpadded convolutions exhaust the input");
            }
        }
        channels = group.width;
        height /= 2; // 2x2 max-pool, floor
        width /= 2;
        if (height < 1 || width < 1)
            throw DimensionError("build_layout: max-pooling exhausts the input");
    }
    layout.flatten_size = channels * height * width;

    push("head.w", config.head_units, layout.flatten_size);
    push("head.b", config.head_units, 1);
    for (index_t d = 0; d < config.dense_depth; ++d) {
        const index_t in = d == 0 ? config.head_units + 2 : config.dense_width;
        push("dense." + std::to_string(d) + ".w", config.dense_width, in);
        push("dense." + std::to_string(d) + ".b", config.dense_width, 1);
    }
    push("out.w", 1, config.dense_width);
    push("out.b", 1, 1);
    return layout;
}

} // namespace amgann

#endif // AMGANN_ANN_CONFIG_HPP
