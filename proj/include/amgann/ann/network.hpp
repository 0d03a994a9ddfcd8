#ifndef AMGANN_ANN_NETWORK_HPP
#define AMGANN_ANN_NETWORK_HPP

/// @file network.hpp
/// @brief The regression surrogate: parameters, forward pass, and exact
///        backpropagation.

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "amgann/ann/config.hpp"
#include "amgann/ann/tensor.hpp"
#include "amgann/core.hpp"
#include "amgann/pooling/pooling.hpp"
#include "amgann/rng.hpp"

namespace amgann {

// ==========================================================================
// Model
// ==========================================================================

/// Trained (or trainable) surrogate predicting the convergence factor from
/// (normalized view, -log2 h, theta).
struct SurrogateModel {
    NetworkConfig config;
    index_t m = 50;                                            ///< view side length
    NormalizationMode mode = NormalizationMode::SumStandard;   ///< expected input mode
    std::uint64_t init_seed = 0;
    std::vector<real_t> params; ///< flat, in build_layout order

    ParamLayout layout() const { return build_layout(config, m); }
};

/// Fills weights He-normally (std = sqrt(2 / fan_in)) and zeroes biases,
/// drawing from the caller's generator.
inline void he_init(SurrogateModel& model, Rng& rng) {
    const ParamLayout layout = model.layout();
    model.params.assign(layout.total, 0.0);
    for (const ParamSegment& seg : layout.segments) {
        if (seg.name.back() == 'b') continue; // biases stay zero
        const real_t std_dev = std::sqrt(2.0 / static_cast<real_t>(seg.cols));
        for (std::size_t i = 0; i < seg.count; ++i)
            model.params[seg.offset + i] = std_dev * rng.next_normal();
    }
}

/// Fresh model with He-normal weights and zero biases, seeded.
inline SurrogateModel init_model(const NetworkConfig& config, index_t m, std::uint64_t seed,
                                 NormalizationMode mode = NormalizationMode::SumStandard) {
    validate(config);
    SurrogateModel model;
    model.config = config;
    model.m = m;
    model.mode = mode;
    model.init_seed = seed;
    Rng rng(seed);
    he_init(model, rng);
    return model;
}

// ==========================================================================
// Layer primitives
// ==========================================================================

namespace detail {

inline void gemm(bool trans_a, bool trans_b, index_t m, index_t n, index_t k, const real_t* a,
                 index_t lda, const real_t* b, index_t ldb, real_t beta, real_t* c, index_t ldc) {
    cblas_dgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans,
                trans_b ? CblasTrans : CblasNoTrans, static_cast<int>(m), static_cast<int>(n),
                static_cast<int>(k), 1.0, a, static_cast<int>(lda), b, static_cast<int>(ldb), beta,
                c, static_cast<int>(ldc));
}

/// Unrolls 3x3 patches into a (in_c*9) x (out_h*out_w) column matrix.
/// Padded mode keeps the spatial size (zero border); unpadded shrinks by 2.
inline void im2col(const real_t* input, index_t in_c, index_t in_h, index_t in_w, bool padded,
                   std::vector<real_t>& cols, index_t& out_h, index_t& out_w) {
    out_h = padded ? in_h : in_h - 2;
    out_w = padded ? in_w : in_w - 2;
    const index_t pad = padded ? 1 : 0;
    const std::size_t n_cols = static_cast<std::size_t>(out_h) * static_cast<std::size_t>(out_w);
    cols.assign(static_cast<std::size_t>(in_c) * 9 * n_cols, 0.0);
    for (index_t ic = 0; ic < in_c; ++ic) {
        const real_t* plane = input + static_cast<std::size_t>(ic * in_h * in_w);
        for (index_t ky = 0; ky < 3; ++ky)
            for (index_t kx = 0; kx < 3; ++kx) {
                real_t* row = cols.data() + (static_cast<std::size_t>(ic * 9 + ky * 3 + kx)) * n_cols;
                for (index_t oy = 0; oy < out_h; ++oy) {
                    const index_t y = oy + ky - pad;
                    if (y < 0 || y >= in_h) continue;
                    for (index_t ox = 0; ox < out_w; ++ox) {
                        const index_t x = ox + kx - pad;
                        if (x < 0 || x >= in_w) continue;
                        row[static_cast<std::size_t>(oy * out_w + ox)] =
                            plane[static_cast<std::size_t>(y * in_w + x)];
                    }
                }
            }
    }
}

/// Scatter-adds a column-matrix gradient back onto the input layout.
inline void col2im(const std::vector<real_t>& cols, index_t in_c, index_t in_h, index_t in_w,
                   bool padded, index_t out_h, index_t out_w, real_t* grad_input) {
    const index_t pad = padded ? 1 : 0;
    const std::size_t n_cols = static_cast<std::size_t>(out_h) * static_cast<std::size_t>(out_w);
    for (index_t ic = 0; ic < in_c; ++ic) {
        real_t* plane = grad_input + static_cast<std::size_t>(ic * in_h * in_w);
        for (index_t ky = 0; ky < 3; ++ky)
            for (index_t kx = 0; kx < 3; ++kx) {
                const real_t* row =
                    cols.data() + (static_cast<std::size_t>(ic * 9 + ky * 3 + kx)) * n_cols;
                for (index_t oy = 0; oy < out_h; ++oy) {
                    const index_t y = oy + ky - pad;
                    if (y < 0 || y >= in_h) continue;
                    for (index_t ox = 0; ox < out_w; ++ox) {
                        const index_t x = ox + kx - pad;
                        if (x < 0 || x >= in_w) continue;
                        plane[static_cast<std::size_t>(y * in_w + x)] +=
                            row[static_cast<std::size_t>(oy * out_w + ox)];
                    }
                }
            }
    }
}

} // namespace detail

// ==========================================================================
// Forward pass with cached activations
// ==========================================================================

namespace detail {

struct ConvRecord {
    std::size_t w_seg = 0, b_seg = 0; ///< indices into layout.segments
    index_t in_c = 0, in_h = 0, in_w = 0;
    index_t out_c = 0, out_h = 0, out_w = 0;
    bool padded = false;
    std::vector<real_t> input;  ///< pre-conv activation
    std::vector<real_t> output; ///< post-ReLU activation
};

struct PoolRecord {
    index_t c = 0, in_h = 0, in_w = 0, out_h = 0, out_w = 0;
    std::vector<index_t> argmax; ///< flat input index per output element
};

struct DropRecord {
    std::vector<real_t> mask; ///< scale per element; empty = identity
};

struct DenseRecord {
    std::size_t w_seg = 0, b_seg = 0;
    bool relu = true;
    std::vector<real_t> input;
    std::vector<real_t> output; ///< post-activation
};

/// Everything backward needs, recorded in execution order.
struct ForwardCache {
    std::vector<ConvRecord> convs;
    std::vector<PoolRecord> pools;
    std::vector<DropRecord> drops;
    std::vector<DenseRecord> denses;
    real_t output = 0.0;
};

inline std::vector<real_t> conv_relu(const SurrogateModel& model, const ParamLayout& layout,
                                     ConvRecord& rec) {
    const ParamSegment& w = layout.segments[rec.w_seg];
    const ParamSegment& b = layout.segments[rec.b_seg];
    std::vector<real_t> cols;
    im2col(rec.input.data(), rec.in_c, rec.in_h, rec.in_w, rec.padded, cols, rec.out_h, rec.out_w);
    const index_t n = rec.out_h * rec.out_w;
    std::vector<real_t> out(static_cast<std::size_t>(rec.out_c * n));
    gemm(false, false, rec.out_c, n, rec.in_c * 9, model.params.data() + w.offset, rec.in_c * 9,
         cols.data(), n, 0.0, out.data(), n);
    for (index_t oc = 0; oc < rec.out_c; ++oc) {
        const real_t bias = model.params[b.offset + static_cast<std::size_t>(oc)];
        real_t* row = out.data() + static_cast<std::size_t>(oc * n);
        for (index_t i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = std::max(row[static_cast<std::size_t>(i)] + bias, 0.0);
    }
    rec.output = out;
    return out;
}

inline std::vector<real_t> max_pool(const std::vector<real_t>& in, PoolRecord& rec) {
    rec.out_h = rec.in_h / 2;
    rec.out_w = rec.in_w / 2;
    const std::size_t out_n =
        static_cast<std::size_t>(rec.c) * static_cast<std::size_t>(rec.out_h) *
        static_cast<std::size_t>(rec.out_w);
    std::vector<real_t> out(out_n);
    rec.argmax.assign(out_n, 0);
    for (index_t c = 0; c < rec.c; ++c) {
        const real_t* plane = in.data() + static_cast<std::size_t>(c * rec.in_h * rec.in_w);
        for (index_t py = 0; py < rec.out_h; ++py)
            for (index_t px = 0; px < rec.out_w; ++px) {
                real_t best = -std::numeric_limits<real_t>::infinity();
                index_t best_idx = 0;
                for (index_t dy = 0; dy < 2; ++dy)
                    for (index_t dx = 0; dx < 2; ++dx) {
                        const index_t idx = (2 * py + dy) * rec.in_w + (2 * px + dx);
                        const real_t v = plane[static_cast<std::size_t>(idx)];
                        if (v > best) { // strict: ties go to the first in row-major scan
                            best = v;
                            best_idx = idx;
                        }
                    }
                const std::size_t o = static_cast<std::size_t>(
                    c * rec.out_h * rec.out_w + py * rec.out_w + px);
                out[o] = best;
                rec.argmax[o] = c * rec.in_h * rec.in_w + best_idx;
            }
    }
    return out;
}

inline std::vector<real_t> dense(const SurrogateModel& model, const ParamLayout& layout,
                                 DenseRecord& rec) {
    const ParamSegment& w = layout.segments[rec.w_seg];
    const ParamSegment& b = layout.segments[rec.b_seg];
    std::vector<real_t> out(static_cast<std::size_t>(w.rows));
    gemm(false, false, w.rows, 1, w.cols, model.params.data() + w.offset, w.cols,
         rec.input.data(), 1, 0.0, out.data(), 1);
    for (index_t i = 0; i < w.rows; ++i) {
        real_t v = out[static_cast<std::size_t>(i)] + model.params[b.offset + static_cast<std::size_t>(i)];
        if (rec.relu) v = std::max(v, 0.0);
        out[static_cast<std::size_t>(i)] = v;
    }
    rec.output = out;
    return out;
}

/// Runs the network on one sample.  When `training` is set, dropout masks are
/// sampled from `rng` (inverted scaling) and every activation is cached.
inline real_t run_forward(const SurrogateModel& model, const ParamLayout& layout,
                          const real_t* view, real_t log_h, real_t theta, bool training,
                          Rng* rng, ForwardCache& cache) {
    std::vector<real_t> x(view, view + static_cast<std::size_t>(model.m) * static_cast<std::size_t>(model.m));
    index_t channels = 1, height = model.m, width = model.m;
    std::size_t seg = 0;

    std::vector<const ConvGroupConfig*> groups{&model.config.conv1};
    if (model.config.conv2) groups.push_back(&*model.config.conv2);
    for (const ConvGroupConfig* group : groups) {
        for (index_t d = 0; d < group->depth; ++d) {
            ConvRecord rec;
            rec.w_seg = seg++;
            rec.b_seg = seg++;
            rec.in_c = channels;
            rec.in_h = height;
            rec.in_w = width;
            rec.out_c = group->width;
            rec.padded = d == 0;
            rec.input = std::move(x);
            x = conv_relu(model, layout, rec);
            channels = rec.out_c;
            height = rec.out_h;
            width = rec.out_w;
            cache.convs.push_back(std::move(rec));
        }
        PoolRecord pool;
        pool.c = channels;
        pool.in_h = height;
        pool.in_w = width;
        x = max_pool(x, pool);
        height = pool.out_h;
        width = pool.out_w;
        cache.pools.push_back(std::move(pool));

        DropRecord drop;
        if (training && group->dropout > 0.0) {
            const real_t keep = 1.0 - group->dropout;
            drop.mask.resize(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                drop.mask[i] = rng->next_unit() < keep ? 1.0 / keep : 0.0;
                x[i] *= drop.mask[i];
            }
        }
        cache.drops.push_back(std::move(drop));
    }

    DenseRecord head;
    head.w_seg = seg++;
    head.b_seg = seg++;
    head.input = std::move(x);
    x = dense(model, layout, head);
    cache.denses.push_back(std::move(head));

    std::vector<real_t> concat = std::move(x);
    concat.push_back(log_h);
    concat.push_back(theta);
    x = std::move(concat);

    for (index_t d = 0; d < model.config.dense_depth; ++d) {
        DenseRecord rec;
        rec.w_seg = seg++;
        rec.b_seg = seg++;
        rec.input = std::move(x);
        x = dense(model, layout, rec);
        cache.denses.push_back(std::move(rec));
    }

    DenseRecord out;
    out.w_seg = seg++;
    out.b_seg = seg++;
    out.relu = false;
    out.input = std::move(x);
    x = dense(model, layout, out);
    cache.denses.push_back(std::move(out));

    cache.output = x[0];
    return cache.output;
}

// ==========================================================================
// Backward pass
// ==========================================================================

inline std::vector<real_t> dense_backward(const SurrogateModel& model, const ParamLayout& layout,
                                          const DenseRecord& rec, std::vector<real_t> grad_out,
                                          std::vector<real_t>& grads) {
    const ParamSegment& w = layout.segments[rec.w_seg];
    const ParamSegment& b = layout.segments[rec.b_seg];
    if (rec.relu)
        for (index_t i = 0; i < w.rows; ++i)
            if (rec.output[static_cast<std::size_t>(i)] <= 0.0) grad_out[static_cast<std::size_t>(i)] = 0.0;
    for (index_t i = 0; i < w.rows; ++i)
        grads[b.offset + static_cast<std::size_t>(i)] += grad_out[static_cast<std::size_t>(i)];
    // dW = grad_out (rows x 1) * input^T (1 x cols)
    gemm(false, false, w.rows, w.cols, 1, grad_out.data(), 1, rec.input.data(), w.cols, 1.0,
         grads.data() + w.offset, w.cols);
    // dx = W^T * grad_out
    std::vector<real_t> grad_in(static_cast<std::size_t>(w.cols));
    gemm(true, false, w.cols, 1, w.rows, model.params.data() + w.offset, w.cols, grad_out.data(),
         1, 0.0, grad_in.data(), 1);
    return grad_in;
}

inline std::vector<real_t> conv_backward(const SurrogateModel& model, const ParamLayout& layout,
                                         const ConvRecord& rec, std::vector<real_t> grad_out,
                                         std::vector<real_t>& grads) {
    const ParamSegment& w = layout.segments[rec.w_seg];
    const ParamSegment& b = layout.segments[rec.b_seg];
    const index_t n = rec.out_h * rec.out_w;
    for (std::size_t i = 0; i < grad_out.size(); ++i)
        if (rec.output[i] <= 0.0) grad_out[i] = 0.0;
    for (index_t oc = 0; oc < rec.out_c; ++oc) {
        real_t s = 0.0;
        const real_t* row = grad_out.data() + static_cast<std::size_t>(oc * n);
        for (index_t i = 0; i < n; ++i) s += row[static_cast<std::size_t>(i)];
        grads[b.offset + static_cast<std::size_t>(oc)] += s;
    }
    std::vector<real_t> cols;
    index_t oh = 0, ow = 0;
    im2col(rec.input.data(), rec.in_c, rec.in_h, rec.in_w, rec.padded, cols, oh, ow);
    // dW += grad_out (out_c x n) * cols^T (n x in_c*9)
    gemm(false, true, rec.out_c, rec.in_c * 9, n, grad_out.data(), n, cols.data(), n, 1.0,
         grads.data() + w.offset, rec.in_c * 9);
    // dCols = W^T (in_c*9 x out_c) * grad_out (out_c x n)
    std::vector<real_t> grad_cols(static_cast<std::size_t>(rec.in_c) * 9 * static_cast<std::size_t>(n));
    gemm(true, false, rec.in_c * 9, n, rec.out_c, model.params.data() + w.offset, rec.in_c * 9,
         grad_out.data(), n, 0.0, grad_cols.data(), n);
    std::vector<real_t> grad_in(rec.input.size(), 0.0);
    col2im(grad_cols, rec.in_c, rec.in_h, rec.in_w, rec.padded, rec.out_h, rec.out_w,
           grad_in.data());
    return grad_in;
}

/// Backpropagates d(loss)/d(output) through a cached forward pass,
/// accumulating into `grads` (same layout as the parameters).
inline void run_backward(const SurrogateModel& model, const ParamLayout& layout,
                         const ForwardCache& cache, real_t grad_output,
                         std::vector<real_t>& grads) {
    std::vector<real_t> g{grad_output};
    // Dense stack in reverse: output layer, hidden layers, then the head.
    for (std::size_t d = cache.denses.size(); d-- > 1;)
        g = dense_backward(model, layout, cache.denses[d], std::move(g), grads);
    g.resize(g.size() - 2); // drop the gradients of (log_h, theta)
    g = dense_backward(model, layout, cache.denses[0], std::move(g), grads);

    // Conv groups in reverse.
    std::size_t conv_hi = cache.convs.size();
    for (std::size_t gi = cache.pools.size(); gi-- > 0;) {
        const DropRecord& drop = cache.drops[gi];
        if (!drop.mask.empty())
            for (std::size_t i = 0; i < g.size(); ++i) g[i] *= drop.mask[i];
        const PoolRecord& pool = cache.pools[gi];
        std::vector<real_t> grad_pool_in(
            static_cast<std::size_t>(pool.c) * static_cast<std::size_t>(pool.in_h) *
                static_cast<std::size_t>(pool.in_w),
            0.0);
        for (std::size_t o = 0; o < pool.argmax.size(); ++o)
            grad_pool_in[static_cast<std::size_t>(pool.argmax[o])] += g[o];
        g = std::move(grad_pool_in);

        const std::size_t group_depth =
            gi == 0 ? static_cast<std::size_t>(model.config.conv1.depth)
                    : static_cast<std::size_t>(model.config.conv2->depth);
        for (std::size_t d = conv_hi; d-- > conv_hi - group_depth;)
            g = conv_backward(model, layout, cache.convs[d], std::move(g), grads);
        conv_hi -= group_depth;
    }
}

} // namespace detail

// ==========================================================================
// Public entry points
// ==========================================================================

/// Inference: deterministic, dropout-free.
inline real_t forward(const SurrogateModel& model, const Tensor& view, real_t log_h,
                      real_t theta) {
    view.check();
    if (view.channels != 1 || view.height != model.m || view.width != model.m)
        throw DimensionError("forward: view must be a single " + std::to_string(model.m) + "x" +
                             std::to_string(model.m) + " channel");
    const ParamLayout layout = model.layout();
    detail::ForwardCache cache;
    return detail::run_forward(model, layout, view.values.data(), log_h, theta, false, nullptr,
                               cache);
}

/// Inference from a normalized view; the mode must match training.
inline real_t forward(const SurrogateModel& model, const NormalizedView& view, real_t log_h,
                      real_t theta) {
    if (view.mode != model.mode)
        throw InvalidParameterError("forward: view normalization mode (" + to_string(view.mode) +
                                    ") does not match the model (" + to_string(model.mode) + ")");
    if (view.m != model.m)
        throw DimensionError("forward: view size does not match the model");
    const ParamLayout layout = model.layout();
    detail::ForwardCache cache;
    return detail::run_forward(model, layout, view.values.data(), log_h, theta, false, nullptr,
                               cache);
}

} // namespace amgann

#endif // AMGANN_ANN_NETWORK_HPP
