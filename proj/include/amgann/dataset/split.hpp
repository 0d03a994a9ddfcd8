#ifndef AMGANN_DATASET_SPLIT_HPP
#define AMGANN_DATASET_SPLIT_HPP

/// @file split.hpp
/// @brief Seeded train/validation/test partitioning, including the composite
///        third corpus built from the two generated ones.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "amgann/core.hpp"
#include "amgann/dataset/sample.hpp"
#include "amgann/rng.hpp"

namespace amgann {

/// Partition fractions; must sum to 1.
struct SplitSpec {
    real_t train = 0.6;
    real_t val = 0.2;
    real_t test = 0.2;
};

struct SplitResult {
    std::vector<Sample> train;
    std::vector<Sample> val;
    std::vector<Sample> test;
};

namespace detail {

inline std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    rng.shuffle(idx);
    return idx;
}

} // namespace detail

/// Plain fractional split.  Indices are shuffled once by the seeded
/// generator; the first floor(train*n) go to train, the next floor(val*n) to
/// validation, and the remainder to test.
inline SplitResult split(const std::vector<Sample>& corpus, const SplitSpec& spec,
                         std::uint64_t seed) {
    if (spec.train < 0.0 || spec.val < 0.0 || spec.test < 0.0 ||
        std::abs(spec.train + spec.val + spec.test - 1.0) > 1e-12)
        throw InvalidParameterError("split: fractions must be non-negative and sum to 1");
    if (corpus.empty()) throw DegenerateInputError("split: empty corpus");

    Rng rng(seed);
    const std::vector<std::size_t> idx = detail::shuffled_indices(corpus.size(), rng);
    const std::size_t n = corpus.size();
    const std::size_t n_train = static_cast<std::size_t>(spec.train * static_cast<real_t>(n));
    const std::size_t n_val = static_cast<std::size_t>(spec.val * static_cast<real_t>(n));

    SplitResult result;
    for (std::size_t i = 0; i < n; ++i) {
        const Sample& s = corpus[idx[i]];
        if (i < n_train)
            result.train.push_back(s);
        else if (i < n_train + n_val)
            result.val.push_back(s);
        else
            result.test.push_back(s);
    }
    return result;
}

/// Composite split: the test set takes 50% of the first corpus and 20% of
/// the second; what remains (floor(0.5*n1) + floor(0.8*n2) entries) is pooled
/// and divided 1:3 into validation and training.  At full scale (9600 + 5184
/// samples) the pooled remainder is the documented 4800 + 4147.
inline SplitResult split_composite(const std::vector<Sample>& corpus1,
                                   const std::vector<Sample>& corpus2, std::uint64_t seed) {
    if (corpus1.empty() || corpus2.empty())
        throw DegenerateInputError("split_composite: both corpora must be non-empty");

    Rng rng(seed);
    SplitResult result;
    std::vector<const Sample*> pooled;

    const auto take = [&](const std::vector<Sample>& corpus, real_t keep_fraction) {
        const std::vector<std::size_t> idx = detail::shuffled_indices(corpus.size(), rng);
        const std::size_t n_keep = static_cast<std::size_t>(
            std::floor(keep_fraction * static_cast<real_t>(corpus.size())));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i < n_keep)
                pooled.push_back(&corpus[idx[i]]);
            else
                result.test.push_back(corpus[idx[i]]);
        }
    };
    take(corpus1, 0.5);
    take(corpus2, 0.8);

    std::vector<std::size_t> order = detail::shuffled_indices(pooled.size(), rng);
    const std::size_t n_val = pooled.size() / 4; // validation : training = 1 : 3
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Sample& s = *pooled[order[i]];
        if (i < n_val)
            result.val.push_back(s);
        else
            result.train.push_back(s);
    }
    return result;
}

} // namespace amgann

#endif // AMGANN_DATASET_SPLIT_HPP
