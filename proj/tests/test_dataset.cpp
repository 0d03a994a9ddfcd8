// Dataset tests: corpus frame round trips, resumable generation byte
// identity, seeded splits (plain and composite), the timing schedule, and the
// rho-time regression against an independent extended-precision oracle.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include "amgann/amg/cf_split.hpp"
#include "amgann/amg/strong_graph.hpp"
#include "amgann/dataset/benchmark.hpp"
#include "amgann/dataset/generate.hpp"
#include "amgann/dataset/sample.hpp"
#include "amgann/dataset/split.hpp"
#include "amgann/dataset/stats.hpp"
#include "amgann/fem/assemble.hpp"
#include "amgann/rng.hpp"

using namespace amgann;

namespace {

// ==========================================================================
// Independent OLS oracle (long double; t CDF by Simpson quadrature, not the
// production continued fraction)
// ==========================================================================

struct OracleOls {
    long double beta, r_squared, adj_r_squared, f_statistic, std_error, t_value, p_value, aic;
};

long double oracle_t_two_sided_p(long double t, long double df) {
    // p = 2 * integral_{|t|}^{inf} f(u) du with the Student-t density f.
    // Integrating the tail directly (instead of 1 - 2 * CDF) avoids the
    // catastrophic cancellation that would otherwise dominate small p.  The
    // density falls off like u^{-(df+1)}, so a finite upper limit well past
    // |t| leaves a negligible remainder for the df used here.
    const long double a = std::abs(t);
    const long double norm = std::exp(std::lgamma((df + 1.0L) / 2.0L) - std::lgamma(df / 2.0L)) /
                             std::sqrt(df * 3.14159265358979323846264338327950288L);
    const auto density = [&](long double u) {
        return norm * std::pow(1.0L + u * u / df, -(df + 1.0L) / 2.0L);
    };
    const long double b = a + 80.0L;
    const int n = 400000; // Simpson's rule, even interval count
    const long double h = (b - a) / n;
    long double sum = density(a) + density(b);
    for (int i = 1; i < n; ++i) sum += density(a + h * i) * (i % 2 == 1 ? 4.0L : 2.0L);
    return 2.0L * sum * h / 3.0L;
}

OracleOls oracle_ols(const std::vector<RhoTimePoint>& points) {
    // Per-test-case max normalization.
    std::map<index_t, std::pair<long double, long double>> maxima;
    for (const RhoTimePoint& p : points) {
        auto& m = maxima[p.test_case];
        m.first = std::max(m.first, static_cast<long double>(std::abs(p.rho)));
        m.second = std::max(m.second, static_cast<long double>(std::abs(p.time)));
    }
    const std::size_t n = points.size();
    std::vector<long double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& m = maxima[points[i].test_case];
        x[i] = points[i].rho / m.first;
        y[i] = points[i].time / m.second;
    }
    long double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    OracleOls o;
    o.beta = sxy / sxx;
    long double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long double e = y[i] - o.beta * x[i];
        ss_res += e * e;
    }
    const long double df = static_cast<long double>(n - 1);
    o.r_squared = 1.0L - ss_res / syy;
    o.adj_r_squared = 1.0L - (1.0L - o.r_squared) * static_cast<long double>(n) / df;
    o.std_error = std::sqrt(ss_res / df / sxx);
    o.t_value = o.beta / o.std_error;
    o.f_statistic = o.t_value * o.t_value;
    o.p_value = oracle_t_two_sided_p(o.t_value, df);
    const long double llf =
        -0.5L * static_cast<long double>(n) *
        (std::log(2.0L * 3.14159265358979323846264338327950288L) +
         std::log(ss_res / static_cast<long double>(n)) + 1.0L);
    o.aic = -2.0L * llf + 2.0L;
    return o;
}

// ==========================================================================
// Helpers
// ==========================================================================

Sample make_sample(index_t id, index_t m = 2) {
    Sample s;
    s.m = m;
    s.mode = NormalizationMode::SumStandard;
    s.k = 3 + id % 4;
    s.theta = 0.12 + 0.01 * static_cast<real_t>(id);
    s.rho = 0.05 + 0.001 * static_cast<real_t>(id);
    s.coefficient = DiffusionPattern::single(PatternKind::FourStrides, 2.0);
    s.iterations = 7 + id;
    s.converged = true;
    s.view.assign(static_cast<std::size_t>(m * m), static_cast<real_t>(id));
    return s;
}

std::string read_all_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) { std::remove(path.c_str()); }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

// ==========================================================================
// Frame format
// ==========================================================================

TEST_CASE("corpus frames round-trip bitwise", "[dataset]") {
    Sample s;
    s.m = 3;
    s.mode = NormalizationMode::MeanScaled;
    s.k = 7;
    s.theta = 0.3450000000000001;
    s.rho = 0.08437512312;
    s.coefficient = DiffusionPattern::pair(PatternKind::Checkerboard4x4, 1.5, 3.0);
    s.iterations = 13;
    s.converged = false;
    s.elapsed_mean = 1.25e-3;
    s.elapsed_std = 2.5e-5;
    s.repetitions = 10;
    s.view = {0.0, -1.5, 2.25, 1e-300, -0.0, 3.14159, 6.25e5, -7.0, 0.125};

    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    append_frame(buf, s);
    const std::optional<Sample> r = read_frame(buf);
    REQUIRE(r.has_value());
    CHECK(r->m == s.m);
    CHECK(r->mode == s.mode);
    CHECK(r->k == s.k);
    CHECK(r->theta == s.theta);
    CHECK(r->rho == s.rho);
    CHECK(r->coefficient.kind == s.coefficient.kind);
    CHECK(r->coefficient.two_exponents == s.coefficient.two_exponents);
    CHECK(r->coefficient.eps_white == s.coefficient.eps_white);
    CHECK(r->coefficient.eps_gray == s.coefficient.eps_gray);
    CHECK(r->iterations == s.iterations);
    CHECK(r->converged == s.converged);
    CHECK(r->elapsed_mean == s.elapsed_mean);
    CHECK(r->elapsed_std == s.elapsed_std);
    CHECK(r->repetitions == s.repetitions);
    CHECK(r->view == s.view);
    CHECK(r->n_grid() == 128);
    CHECK(r->neg_log2_h() == 7.0);
    CHECK(!read_frame(buf).has_value()); // clean EOF

    // A second serialization of the re-read sample is byte-identical.
    std::stringstream buf2(std::ios::in | std::ios::out | std::ios::binary);
    append_frame(buf2, *r);
    std::stringstream buf3(std::ios::in | std::ios::out | std::ios::binary);
    append_frame(buf3, s);
    CHECK(buf2.str() == buf3.str());
}

TEST_CASE("frame reading reports damage", "[dataset]") {
    std::stringstream bad(std::ios::in | std::ios::out | std::ios::binary);
    bad << "BOGUS frame";
    CHECK_THROWS_AS(read_frame(bad), IoError);

    Sample s = make_sample(1);
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    append_frame(buf, s);
    std::string bytes = buf.str();
    bytes.resize(bytes.size() - 5); // drop part of the view blob
    std::stringstream cut(bytes, std::ios::in | std::ios::binary);
    CHECK_THROWS_AS(read_frame(cut), IoError);

    Sample wrong = make_sample(1);
    wrong.view.pop_back();
    std::stringstream sink(std::ios::out | std::ios::binary);
    CHECK_THROWS_AS(append_frame(sink, wrong), DimensionError);
    CHECK_THROWS_AS(load_corpus("no_such_corpus.bin"), IoError);
}

TEST_CASE("corpus scan finds the intact prefix of a damaged file", "[dataset]") {
    const TempFile tmp("test_corpus_scan.bin");
    {
        std::ofstream out(tmp.path, std::ios::binary);
        for (index_t i = 0; i < 4; ++i) append_frame(out, make_sample(i));
    }
    const std::string full = read_all_bytes(tmp.path);
    const CorpusScan intact = scan_corpus(tmp.path);
    CHECK(intact.samples.size() == 4);
    CHECK(intact.valid_bytes == full.size());
    CHECK_FALSE(intact.truncated);

    // Chop into the last frame: three intact samples remain.
    std::filesystem::resize_file(tmp.path, full.size() - 7);
    const CorpusScan cut = scan_corpus(tmp.path);
    CHECK(cut.samples.size() == 3);
    CHECK(cut.truncated);
    CHECK(cut.valid_bytes < full.size() - 7);
    CHECK(cut.valid_bytes > 0);
}

// ==========================================================================
// Grids
// ==========================================================================

TEST_CASE("theta grid is equally spaced on the pinned interval", "[dataset]") {
    const std::vector<real_t> g25 = theta_grid(25);
    REQUIRE(g25.size() == 25);
    CHECK_THAT(g25.front(), Catch::Matchers::WithinRel(0.12, 1e-15));
    CHECK_THAT(g25.back(), Catch::Matchers::WithinRel(0.72, 1e-15));
    for (std::size_t i = 1; i < g25.size(); ++i)
        CHECK_THAT(g25[i] - g25[i - 1], Catch::Matchers::WithinAbs(0.025, 1e-12));
    CHECK(theta_grid(1) == std::vector<real_t>{0.12});
    CHECK_THROWS_AS(theta_grid(0), InvalidParameterError);
}

TEST_CASE("full-scale grids have the documented cardinalities", "[dataset]") {
    const std::vector<GenerateKey> ds1 = dataset1_keys(3, 10, 25);
    CHECK(ds1.size() == 9600); // 4 patterns x 12 epsilons x 8 levels x 25 thetas
    const std::vector<GenerateKey> ds2 = dataset2_keys(3, 10, 18);
    CHECK(ds2.size() == 5184); // 4 patterns x 9 pairs x 8 levels x 18 thetas

    CHECK(ds1.front().coefficient.kind == PatternKind::TwoStrides);
    CHECK(ds1.front().coefficient.eps_white == 0.0);
    CHECK_FALSE(ds1.front().coefficient.two_exponents);
    CHECK(ds1.front().k == 3);
    CHECK(ds1.back().coefficient.kind == PatternKind::Checkerboard4x4);
    CHECK(ds1.back().coefficient.eps_white == 9.5);
    CHECK(ds1.back().k == 10);

    CHECK(ds2.front().coefficient.two_exponents);
    CHECK(ds2.front().coefficient.eps_white == 0.5);
    CHECK(ds2.front().coefficient.eps_gray == 0.5);
    CHECK(ds2.back().coefficient.eps_white == 3.0);
    CHECK(ds2.back().coefficient.eps_gray == 3.0);

    CHECK_THROWS_AS(dataset1_keys(2, 7, 25), InvalidParameterError);
    CHECK_THROWS_AS(dataset1_keys(3, 11, 25), InvalidParameterError);
    CHECK_THROWS_AS(dataset1_keys(5, 4, 25), InvalidParameterError);
}

// ==========================================================================
// Generation
// ==========================================================================

TEST_CASE("uniform-coefficient samples are identical across patterns", "[dataset]") {
    GenerateOptions opt;
    opt.m = 10;
    std::vector<Sample> samples;
    for (PatternKind kind : all_patterns())
        samples.push_back(generate_sample(DiffusionPattern::single(kind, 0.0), 3, 0.24, opt));
    // The matrix is the plain Laplacian for every pattern, so the pooled views
    // agree bitwise.  The manufactured right-hand side differs between the
    // stride and checkerboard families, so rho only matches within a family.
    for (std::size_t i = 1; i < samples.size(); ++i)
        CHECK(samples[i].view == samples[0].view);
    CHECK(samples[1].rho == samples[0].rho);
    CHECK(samples[1].iterations == samples[0].iterations);
    CHECK(samples[3].rho == samples[2].rho);
    CHECK(samples[3].iterations == samples[2].iterations);
}

TEST_CASE("equal-exponent pairs match the uniform case structurally", "[dataset]") {
    const ProblemSpec uniform(StructuredMesh(16),
                              DiffusionPattern::single(PatternKind::FourStrides, 0.0));
    const ProblemSpec pair(StructuredMesh(16),
                           DiffusionPattern::pair(PatternKind::FourStrides, 1.5, 1.5));
    const auto [a0, f0] = assemble(uniform);
    const auto [a1, f1] = assemble(pair);

    // Same sparsity, values scaled by 10^1.5.
    REQUIRE(a0.row_ptr == a1.row_ptr);
    REQUIRE(a0.col_idx == a1.col_idx);
    const real_t scale = std::pow(10.0, 1.5);
    for (std::size_t i = 0; i < a0.values.size(); ++i)
        CHECK_THAT(a1.values[i], Catch::Matchers::WithinRel(scale * a0.values[i], 1e-12));

    // Strong-connection graph and splitting agree at every theta.
    for (real_t theta : {0.12, 0.24, 0.45, 0.72}) {
        const StrongGraph g0 = strong_connections(a0, theta);
        const StrongGraph g1 = strong_connections(a1, theta);
        REQUIRE(g0.rows == g1.rows);
        const CfSplitting s0 = cf_split(g0);
        const CfSplitting s1 = cf_split(g1);
        REQUIRE(s0.labels == s1.labels);
    }
}

TEST_CASE("spot sample lands in the published band", "[dataset]") {
    GenerateOptions opt;
    opt.m = 50;
    const Sample s =
        generate_sample(DiffusionPattern::single(PatternKind::FourStrides, 9.5), 3, 0.24, opt);
    CHECK(s.converged);
    CHECK(s.rho >= 0.03);
    CHECK(s.rho <= 0.25);
    CHECK(s.iterations > 0);
    CHECK(s.view.size() == 2500);
    CHECK(s.repetitions == 0); // untimed by default
}

TEST_CASE("generation is resumable and interruption-independent", "[dataset]") {
    GenerateOptions opt;
    opt.m = 10;
    std::vector<GenerateKey> keys;
    for (real_t eps : {0.0, 2.0})
        for (real_t theta : {0.24, 0.48, 0.72})
            keys.push_back({DiffusionPattern::single(PatternKind::FourStrides, eps), 3, theta});

    const TempFile one_shot("test_corpus_oneshot.bin");
    const GenerateReport r1 = generate_corpus(one_shot.path, keys, opt);
    CHECK(r1.written == 6);
    CHECK(r1.skipped == 0);
    CHECK(r1.total == 6);
    const std::string reference = read_all_bytes(one_shot.path);

    SECTION("interrupted after a frame boundary") {
        const TempFile resumed("test_corpus_resumed.bin");
        const std::vector<GenerateKey> prefix(keys.begin(), keys.begin() + 2);
        generate_corpus(resumed.path, prefix, opt);
        const GenerateReport r2 = generate_corpus(resumed.path, keys, opt);
        CHECK(r2.written == 4);
        CHECK(r2.skipped == 2);
        CHECK(read_all_bytes(resumed.path) == reference);
    }

    SECTION("interrupted mid-frame") {
        const TempFile damaged("test_corpus_damaged.bin");
        std::ofstream(damaged.path, std::ios::binary) << reference.substr(0, reference.size() - 9);
        const GenerateReport r3 = generate_corpus(damaged.path, keys, opt);
        CHECK(r3.written == 1); // the chopped final frame is regenerated
        CHECK(r3.skipped == 5);
        CHECK(read_all_bytes(damaged.path) == reference);
    }

    SECTION("rerun on a complete file writes nothing") {
        const GenerateReport r4 = generate_corpus(one_shot.path, keys, opt);
        CHECK(r4.written == 0);
        CHECK(r4.skipped == 6);
        CHECK(read_all_bytes(one_shot.path) == reference);
    }

    SECTION("view size or mode mismatch is rejected") {
        GenerateOptions other = opt;
        other.m = 12;
        CHECK_THROWS_AS(generate_corpus(one_shot.path, keys, other), InvalidParameterError);
        other = opt;
        other.mode = NormalizationMode::MeanStandard;
        CHECK_THROWS_AS(generate_corpus(one_shot.path, keys, other), InvalidParameterError);
    }

    // Strict load agrees with the tolerant scan on the intact file.
    const std::vector<Sample> loaded = load_corpus(one_shot.path);
    REQUIRE(loaded.size() == 6);
    CHECK(loaded[0].theta == 0.24);
    CHECK(loaded[5].coefficient.eps_white == 2.0);
}

// ==========================================================================
// Splits
// ==========================================================================

TEST_CASE("plain split respects fractions, disjointness, and the seed", "[dataset]") {
    std::vector<Sample> corpus;
    for (index_t i = 0; i < 100; ++i) corpus.push_back(make_sample(i));

    const SplitResult r = split(corpus, SplitSpec{}, 42);
    CHECK(r.train.size() == 60);
    CHECK(r.val.size() == 20);
    CHECK(r.test.size() == 20);

    std::multiset<real_t> seen;
    for (const std::vector<Sample>* part : {&r.train, &r.val, &r.test})
        for (const Sample& s : *part) seen.insert(s.view[0]);
    std::multiset<real_t> expected;
    for (const Sample& s : corpus) expected.insert(s.view[0]);
    CHECK(seen == expected); // exhaustive, no duplicates

    const SplitResult again = split(corpus, SplitSpec{}, 42);
    REQUIRE(again.train.size() == r.train.size());
    for (std::size_t i = 0; i < r.train.size(); ++i)
        CHECK(again.train[i].view[0] == r.train[i].view[0]);

    const SplitResult other = split(corpus, SplitSpec{}, 43);
    bool any_differs = false;
    for (std::size_t i = 0; i < r.train.size(); ++i)
        any_differs = any_differs || other.train[i].view[0] != r.train[i].view[0];
    CHECK(any_differs);

    CHECK_THROWS_AS(split(corpus, SplitSpec{0.5, 0.2, 0.2}, 1), InvalidParameterError);
    CHECK_THROWS_AS(split({}, SplitSpec{}, 1), DegenerateInputError);
}

TEST_CASE("composite split implements the 50/20 test rule with 1:3 val:train", "[dataset]") {
    std::vector<Sample> c1, c2;
    for (index_t i = 0; i < 96; ++i) c1.push_back(make_sample(i));
    for (index_t i = 0; i < 54; ++i) c2.push_back(make_sample(1000 + i));

    const SplitResult r = split_composite(c1, c2, 7);
    // Kept: floor(0.5 * 96) = 48 and floor(0.8 * 54) = 43; test gets the rest.
    CHECK(r.test.size() == 48 + 11);
    // Pooled 91 -> val floor(91/4) = 22, train 69.
    CHECK(r.val.size() == 22);
    CHECK(r.train.size() == 69);

    std::multiset<real_t> seen;
    for (const std::vector<Sample>* part : {&r.train, &r.val, &r.test})
        for (const Sample& s : *part) seen.insert(s.view[0]);
    std::multiset<real_t> expected;
    for (const Sample& s : c1) expected.insert(s.view[0]);
    for (const Sample& s : c2) expected.insert(s.view[0]);
    CHECK(seen == expected);

    const SplitResult again = split_composite(c1, c2, 7);
    REQUIRE(again.train.size() == r.train.size());
    for (std::size_t i = 0; i < r.train.size(); ++i)
        CHECK(again.train[i].view[0] == r.train[i].view[0]);

    CHECK_THROWS_AS(split_composite({}, c2, 7), DegenerateInputError);
}

TEST_CASE("full-scale composite arithmetic matches the documented counts", "[dataset]") {
    // floor(0.5 * 9600) = 4800 kept from corpus 1; floor(0.8 * 5184) = 4147
    // kept from corpus 2; pooled 8947 -> val 2236, train 6711.
    const std::size_t keep1 = static_cast<std::size_t>(std::floor(0.5 * 9600));
    const std::size_t keep2 = static_cast<std::size_t>(std::floor(0.8 * 5184));
    CHECK(keep1 == 4800);
    CHECK(keep2 == 4147);
    CHECK((keep1 + keep2) / 4 == 2236);
    CHECK(keep1 + keep2 - (keep1 + keep2) / 4 == 6711);
}

// ==========================================================================
// Timing
// ==========================================================================

TEST_CASE("repetition schedule matches the printed table", "[dataset]") {
    CHECK(repetition_count(3) == 200);
    CHECK(repetition_count(4) == 100);
    CHECK(repetition_count(5) == 50);
    CHECK(repetition_count(6) == 20);
    CHECK(repetition_count(7) == 10);
    CHECK(repetition_count(8) == 7);
    CHECK(repetition_count(9) == 5);
    CHECK(repetition_count(10) == 4);
    CHECK_THROWS_AS(repetition_count(2), InvalidParameterError);
    CHECK_THROWS_AS(repetition_count(11), InvalidParameterError);
}

TEST_CASE("mean and deviation of raw timings", "[dataset]") {
    const auto [m1, s1] = mean_std({1.0, 2.0, 3.0});
    CHECK(m1 == 2.0);
    CHECK_THAT(s1, Catch::Matchers::WithinRel(std::sqrt(2.0 / 3.0), 1e-15));
    const auto [m2, s2] = mean_std({5.0});
    CHECK(m2 == 5.0);
    CHECK(s2 == 0.0);
    CHECK_THROWS_AS(mean_std({}), DegenerateInputError);
}

TEST_CASE("timing benchmark measures every grid point", "[dataset]") {
    const std::vector<DiffusionPattern> problems = {
        DiffusionPattern::single(PatternKind::TwoStrides, 0.0)};
    const std::vector<BenchmarkPoint> points = timing_benchmark(problems, 3, 3, {0.24, 0.72});
    REQUIRE(points.size() == 2);
    for (const BenchmarkPoint& p : points) {
        CHECK(p.k == 3);
        CHECK(p.repetitions == 200);
        CHECK(p.converged);
        CHECK(p.rho > 0.0);
        CHECK(p.rho < 1.0);
        CHECK(p.time_mean > 0.0);
        CHECK(p.time_std >= 0.0);
        CHECK(p.iterations > 0);
    }
    CHECK(points[0].theta == 0.24);
    CHECK(points[1].theta == 0.72);
    CHECK_THROWS_AS(timing_benchmark({}, 3, 3, {0.24}), DegenerateInputError);
    CHECK_THROWS_AS(timing_benchmark(problems, 4, 3, {0.24}), InvalidParameterError);
}

// ==========================================================================
// Regression statistics
// ==========================================================================

TEST_CASE("exact linear data gives R squared of one", "[dataset]") {
    std::vector<RhoTimePoint> pts;
    for (int i = 1; i <= 6; ++i)
        pts.push_back({0, 0.1 * i, 0.35 * i}); // t = 3.5 rho exactly
    const OlsReport r = least_squares_rho_time(pts);
    CHECK_THAT(r.r_squared, Catch::Matchers::WithinAbs(1.0, 1e-12));
    // Normalized by maxima, the slope becomes max_rho/max_t * 3.5 = 1.
    CHECK_THAT(r.beta, Catch::Matchers::WithinRel(1.0, 1e-12));
    CHECK(r.p_value < 1e-12); // rounding leaves SS_res tiny but possibly nonzero
    CHECK(r.n == 6);
}

TEST_CASE("regression report matches the extended-precision oracle", "[dataset]") {
    Rng rng(55);
    std::vector<RhoTimePoint> pts;
    for (index_t tc = 0; tc < 3; ++tc) {
        const real_t slope = 1.5 + 0.8 * static_cast<real_t>(tc);
        for (int i = 0; i < 12; ++i) {
            const real_t rho = 0.1 + 0.85 * rng.next_unit();
            const real_t noise = 0.25 * rng.next_normal();
            const real_t t = slope * rho * (1.0 + 0.2 * std::abs(noise)) + 0.05 * std::abs(noise);
            pts.push_back({tc, rho, t});
        }
    }
    const OlsReport got = least_squares_rho_time(pts);
    const OracleOls want = oracle_ols(pts);

    const auto close = [](real_t a, long double b) {
        return std::abs(a - static_cast<real_t>(b)) <=
               1e-10 * std::max<real_t>(1e-12, std::abs(static_cast<real_t>(b)));
    };
    CHECK(close(got.beta, want.beta));
    CHECK(close(got.r_squared, want.r_squared));
    CHECK(close(got.adj_r_squared, want.adj_r_squared));
    CHECK(close(got.f_statistic, want.f_statistic));
    CHECK(close(got.std_error, want.std_error));
    CHECK(close(got.t_value, want.t_value));
    CHECK(close(got.p_value, want.p_value));
    CHECK(close(got.aic, want.aic));
}

TEST_CASE("regression rejects degenerate inputs", "[dataset]") {
    CHECK_THROWS_AS(least_squares_rho_time({{0, 0.1, 0.2}, {0, 0.2, 0.3}}),
                    DegenerateInputError); // fewer than 3 points
    std::vector<RhoTimePoint> zeros = {{0, 0.0, 0.1}, {0, 0.0, 0.2}, {0, 0.0, 0.3}};
    CHECK_THROWS_AS(least_squares_rho_time(zeros), DegenerateInputError);
    std::vector<RhoTimePoint> zero_time = {{0, 0.1, 0.0}, {0, 0.2, 0.0}, {0, 0.3, 0.0}};
    CHECK_THROWS_AS(least_squares_rho_time(zero_time), DegenerateInputError);
}

TEST_CASE("regression report serializes to json", "[dataset]") {
    std::vector<RhoTimePoint> pts;
    for (int i = 1; i <= 5; ++i) pts.push_back({0, 0.1 * i, 0.2 * i + 0.01 * (i % 2)});
    const nlohmann::json j = to_json(least_squares_rho_time(pts));
    for (const char* key : {"n", "beta", "r_squared", "adj_r_squared", "f_statistic",
                            "std_error", "t_value", "p_value", "aic"})
        CHECK(j.contains(key));
    CHECK(j["n"] == 5);
}

// ==========================================================================
// Conversion to training samples
// ==========================================================================

TEST_CASE("samples convert to network inputs", "[dataset]") {
    const Sample s = make_sample(5, 3);
    const TrainSample t = to_train_sample(s);
    CHECK(t.input == s.view);
    CHECK(t.log_h == static_cast<real_t>(s.k));
    CHECK(t.theta == s.theta);
    CHECK(t.target == s.rho);
    const std::vector<TrainSample> ts = to_train_samples({make_sample(1), make_sample(2)});
    CHECK(ts.size() == 2);
}
