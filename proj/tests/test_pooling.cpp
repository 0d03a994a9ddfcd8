// Pooling tests: bucket arithmetic against an explicit-range oracle,
// the pinned normalization examples, and mode invariants.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "amgann/pooling/pooling.hpp"
#include "amgann/rng.hpp"
#include "amgann/sparse/csr.hpp"
#include "oracles.hpp"

using namespace amgann;

namespace {

// Independent bucketization: compute bucket start offsets directly from the
// first-p-buckets-take-q+1 rule and sum entries per explicit range.
View oracle_pooling(const CooMatrix& a, index_t m) {
    const index_t n = a.n_rows;
    const index_t q = n / m, p = n % m;
    std::vector<index_t> start(static_cast<std::size_t>(m) + 1, 0);
    for (index_t i = 0; i < m; ++i)
        start[static_cast<std::size_t>(i) + 1] =
            start[static_cast<std::size_t>(i)] + (i < p ? q + 1 : q);
    View v;
    v.m = m;
    v.n = n;
    v.sums.assign(static_cast<std::size_t>(m * m), 0.0);
    v.counts.assign(static_cast<std::size_t>(m * m), 0);
    for (index_t bi = 0; bi < m; ++bi)
        for (index_t bj = 0; bj < m; ++bj)
            for (const auto& e : a.entries)
                if (e.row >= start[static_cast<std::size_t>(bi)] &&
                    e.row < start[static_cast<std::size_t>(bi) + 1] &&
                    e.col >= start[static_cast<std::size_t>(bj)] &&
                    e.col < start[static_cast<std::size_t>(bj) + 1]) {
                    v.sums[static_cast<std::size_t>(bi * m + bj)] += e.value;
                    v.counts[static_cast<std::size_t>(bi * m + bj)] += 1;
                }
    return v;
}

View make_view(index_t m, std::vector<real_t> sums, std::vector<index_t> counts) {
    View v;
    v.m = m;
    v.n = m;
    v.sums = std::move(sums);
    v.counts = std::move(counts);
    return v;
}

} // namespace

// ==========================================================================
// pooling
// ==========================================================================

TEST_CASE("identity 4x4 pools to diagonal twos at m=2", "[pooling]") {
    CooMatrix a(4, 4);
    for (index_t i = 0; i < 4; ++i) a.add(i, i, 1.0);
    const View v = pooling(a, 2);
    REQUIRE(v.sums == std::vector<real_t>{2.0, 0.0, 0.0, 2.0});
    REQUIRE(v.counts == std::vector<index_t>{2, 0, 0, 2});
}

TEST_CASE("bucket split of five rows into two buckets", "[pooling]") {
    // q=2, p=1, t=3: bucket 0 gets rows {0,1,2}, bucket 1 gets {3,4}.
    REQUIRE(bucket_index(0, 5, 2) == 0);
    REQUIRE(bucket_index(1, 5, 2) == 0);
    REQUIRE(bucket_index(2, 5, 2) == 0);
    REQUIRE(bucket_index(3, 5, 2) == 1);
    REQUIRE(bucket_index(4, 5, 2) == 1);
}

TEST_CASE("m equal to n reproduces the dense matrix with indicator counts", "[pooling]") {
    Rng rng(808);
    const CooMatrix coo = oracle::random_coo(9, 9, 0.3, rng);
    const CsrMatrix a = coo_to_csr(coo); // canonical: no duplicates
    const CooMatrix canonical = csr_to_coo(a);
    const View v = pooling(canonical, 9);
    const oracle::Dense d = oracle::dense_from_csr(a);
    for (index_t i = 0; i < 9; ++i)
        for (index_t j = 0; j < 9; ++j) {
            REQUIRE(v.sum_at(i, j) == d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            const bool present = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0.0;
            REQUIRE(v.count_at(i, j) == (present ? 1 : 0));
        }
}

TEST_CASE("pooling matches the explicit-range oracle across sizes", "[pooling]") {
    Rng rng(999);
    for (const index_t n : {1, 2, 3, 5, 8, 13, 20, 37, 50, 60}) {
        const CooMatrix a = oracle::random_coo(n, n, 0.25, rng);
        std::vector<index_t> ms{1, n};
        if (n > 1) ms.push_back(n / 2 + 1);
        if (n > 7) ms.push_back(7);
        for (const index_t m : ms) {
            const View got = pooling(a, m);
            const View expected = oracle_pooling(a, m);
            REQUIRE(got.sums == expected.sums);
            REQUIRE(got.counts == expected.counts);
        }
    }
}

TEST_CASE("view totals preserve nnz and value sum", "[pooling]") {
    Rng rng(1234);
    CooMatrix a = oracle::random_coo(23, 23, 0.4, rng);
    a.add(5, 7, 1.5); // duplicate entries count separately
    a.add(5, 7, -0.5);
    const View v = pooling(a, 6);
    index_t count_total = 0;
    real_t sum_total = 0.0;
    for (index_t c : v.counts) count_total += c;
    for (real_t s : v.sums) sum_total += s;
    REQUIRE(count_total == a.nnz());
    real_t expected_sum = 0.0;
    for (const auto& e : a.entries) expected_sum += e.value;
    REQUIRE(sum_total == Catch::Approx(expected_sum).margin(1e-12));
}

TEST_CASE("views wider than the matrix leave trailing buckets empty", "[pooling]") {
    CooMatrix a(3, 3);
    a.add(0, 0, 1.0);
    a.add(1, 2, 2.0);
    a.add(2, 1, -3.0);
    const View v = pooling(a, 5);
    REQUIRE(v.sum_at(0, 0) == 1.0);
    REQUIRE(v.sum_at(1, 2) == 2.0);
    REQUIRE(v.sum_at(2, 1) == -3.0);
    for (index_t i = 0; i < 5; ++i)
        for (index_t j = 0; j < 5; ++j)
            if (i >= 3 || j >= 3) {
                REQUIRE(v.sum_at(i, j) == 0.0);
                REQUIRE(v.count_at(i, j) == 0);
            }
}

TEST_CASE("pooling rejects m = 0 and non-square input", "[pooling]") {
    CooMatrix a(3, 3);
    a.add(0, 0, 1.0);
    REQUIRE_THROWS_AS(pooling(a, 0), InvalidParameterError);
    CooMatrix rect(3, 4);
    REQUIRE_THROWS_AS(pooling(rect, 2), DimensionError);
}

// ==========================================================================
// normalize
// ==========================================================================

TEST_CASE("sum-standard normalization of the 2x2 example", "[pooling]") {
    const View v = make_view(2, {1.0, 3.0, 5.0, 7.0}, {1, 1, 1, 1});
    const NormalizedView nv = normalize(v, NormalizationMode::SumStandard);
    const real_t s = std::sqrt(5.0);
    REQUIRE(nv.values[0] == Catch::Approx(-3.0 / s).epsilon(1e-15));
    REQUIRE(nv.values[1] == Catch::Approx(-1.0 / s).epsilon(1e-15));
    REQUIRE(nv.values[2] == Catch::Approx(1.0 / s).epsilon(1e-15));
    REQUIRE(nv.values[3] == Catch::Approx(3.0 / s).epsilon(1e-15));
}

TEST_CASE("sum-scaled divides by the largest magnitude", "[pooling]") {
    const View v = make_view(2, {0.0, -2.0, 4.0, 0.0}, {0, 1, 2, 0});
    const NormalizedView nv = normalize(v, NormalizationMode::SumScaled);
    REQUIRE(nv.values == std::vector<real_t>{0.0, -0.5, 1.0, 0.0});
}

TEST_CASE("mean-scaled divides bucket means by their largest magnitude", "[pooling]") {
    const View v = make_view(2, {1.0, 4.0, 8.0, 1.0}, {1, 2, 4, 1});
    const NormalizedView nv = normalize(v, NormalizationMode::MeanScaled);
    REQUIRE(nv.values == std::vector<real_t>{0.5, 1.0, 1.0, 0.5});
}

TEST_CASE("empty buckets contribute zero to the mean view", "[pooling]") {
    const View v = make_view(2, {3.0, 9.0, 0.0, 2.0}, {1, 3, 0, 1});
    const NormalizedView nv = normalize(v, NormalizationMode::MeanScaled);
    REQUIRE(nv.values == std::vector<real_t>{1.0, 1.0, 0.0, 2.0 / 3.0});
}

TEST_CASE("standard modes produce zero mean and unit deviation", "[pooling]") {
    Rng rng(555);
    View v;
    v.m = 6;
    v.n = 6;
    for (index_t i = 0; i < 36; ++i) {
        v.sums.push_back(rng.next_unit() * 10.0 - 5.0);
        v.counts.push_back(static_cast<index_t>(rng.next_below(4)));
    }
    for (const auto mode : {NormalizationMode::SumStandard, NormalizationMode::MeanStandard}) {
        const NormalizedView nv = normalize(v, mode);
        real_t mean = 0.0;
        for (const real_t x : nv.values) mean += x;
        mean /= 36.0;
        real_t var = 0.0;
        for (const real_t x : nv.values) var += (x - mean) * (x - mean);
        var /= 36.0;
        REQUIRE(mean == Catch::Approx(0.0).margin(1e-13));
        REQUIRE(var == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("normalized view is invariant under global matrix scaling", "[pooling]") {
    Rng rng(777);
    const CooMatrix a = oracle::random_coo(30, 30, 0.2, rng);
    CooMatrix scaled(30, 30);
    for (const auto& e : a.entries) scaled.add(e.row, e.col, 1e6 * e.value);
    for (const auto mode :
         {NormalizationMode::SumStandard, NormalizationMode::SumScaled,
          NormalizationMode::MeanStandard, NormalizationMode::MeanScaled}) {
        const NormalizedView n1 = normalize(pooling(a, 9), mode);
        const NormalizedView n2 = normalize(pooling(scaled, 9), mode);
        for (std::size_t i = 0; i < n1.values.size(); ++i)
            REQUIRE(n1.values[i] == Catch::Approx(n2.values[i]).margin(1e-13));
    }
}

TEST_CASE("degenerate views are rejected", "[pooling]") {
    const View constant = make_view(2, {3.0, 3.0, 3.0, 3.0}, {1, 1, 1, 1});
    REQUIRE_THROWS_AS(normalize(constant, NormalizationMode::SumStandard), DegenerateInputError);
    const View zero = make_view(2, {0.0, 0.0, 0.0, 0.0}, {0, 0, 0, 0});
    REQUIRE_THROWS_AS(normalize(zero, NormalizationMode::SumScaled), DegenerateInputError);
    REQUIRE_THROWS_AS(normalize(zero, NormalizationMode::MeanScaled), DegenerateInputError);
}

TEST_CASE("normalization mode names round trip", "[pooling]") {
    for (const auto mode :
         {NormalizationMode::SumStandard, NormalizationMode::SumScaled,
          NormalizationMode::MeanStandard, NormalizationMode::MeanScaled})
        REQUIRE(normalization_mode_from_string(to_string(mode)) == mode);
    REQUIRE_THROWS_AS(normalization_mode_from_string("median"), InvalidParameterError);
}
