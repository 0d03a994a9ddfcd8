#ifndef AMGANN_DATASET_STATS_HPP
#define AMGANN_DATASET_STATS_HPP

/// @file stats.hpp
/// @brief Least-squares analysis of solve time against the convergence
///        factor, with the usual regression statistics.

#include <cmath>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "amgann/core.hpp"

namespace amgann {

/// One (convergence factor, CPU time) observation tagged with the test case
/// (problem instance) it came from.
struct RhoTimePoint {
    index_t test_case = 0;
    real_t rho = 0.0;
    real_t time = 0.0;
};

/// Through-origin OLS report for normalized time against normalized rho.
struct OlsReport {
    index_t n = 0;          ///< pooled observation count
    real_t beta = 0.0;      ///< slope of t = beta * rho
    real_t r_squared = 0.0; ///< uncentered (through-origin) R^2
    real_t adj_r_squared = 0.0;
    real_t f_statistic = 0.0;
    real_t std_error = 0.0;
    real_t t_value = 0.0;
    real_t p_value = 0.0;
    real_t aic = 0.0;
};

namespace detail {

/// Continued fraction for the regularized incomplete beta (Lentz's method).
inline real_t beta_continued_fraction(real_t a, real_t b, real_t x) {
    const real_t tiny = 1e-300;
    const real_t qab = a + b, qap = a + 1.0, qam = a - 1.0;
    real_t c = 1.0;
    real_t d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    real_t h = d;
    for (int m = 1; m <= 300; ++m) {
        const real_t m2 = 2.0 * m;
        real_t aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const real_t del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 3e-16) break;
    }
    return h;
}

inline real_t incomplete_beta(real_t a, real_t b, real_t x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const real_t ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const real_t front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Two-sided p-value of a Student-t statistic with `df` degrees of freedom.
inline real_t student_t_p_value(real_t t, real_t df) {
    return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

} // namespace detail

/// Normalizes (rho, time) by the per-test-case maxima, pools the points, and
/// fits time = beta * rho through the origin.  Reports the slope with its
/// standard error, t-value, two-sided p-value, F statistic, plain and
/// adjusted (uncentered) R^2, and the Gaussian AIC.
inline OlsReport least_squares_rho_time(const std::vector<RhoTimePoint>& points) {
    if (points.size() < 3)
        throw DegenerateInputError("least_squares_rho_time: need at least 3 points");

    std::map<index_t, std::pair<real_t, real_t>> maxima; // test case -> (max rho, max time)
    for (const RhoTimePoint& p : points) {
        auto& m = maxima[p.test_case];
        m.first = std::max(m.first, std::abs(p.rho));
        m.second = std::max(m.second, std::abs(p.time));
    }
    for (const auto& [id, m] : maxima)
        if (m.first == 0.0 || m.second == 0.0)
            throw DegenerateInputError("least_squares_rho_time: test case " + std::to_string(id) +
                                       " has all-zero rho or time");

    const std::size_t n = points.size();
    std::vector<real_t> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& m = maxima[points[i].test_case];
        x[i] = points[i].rho / m.first;
        y[i] = points[i].time / m.second;
    }

    real_t sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInputError("least_squares_rho_time: degenerate variance");

    OlsReport r;
    r.n = static_cast<index_t>(n);
    r.beta = sxy / sxx;
    real_t ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const real_t e = y[i] - r.beta * x[i];
        ss_res += e * e;
    }
    const real_t df = static_cast<real_t>(n - 1); // one fitted parameter
    r.r_squared = 1.0 - ss_res / syy;
    r.adj_r_squared = 1.0 - (1.0 - r.r_squared) * static_cast<real_t>(n) / df;
    const real_t sigma2 = ss_res / df;
    r.std_error = std::sqrt(sigma2 / sxx);
    r.t_value = r.beta / r.std_error; // +inf on an exact fit
    r.f_statistic = r.t_value * r.t_value;
    r.p_value = ss_res == 0.0 ? 0.0 : detail::student_t_p_value(r.t_value, df);
    // Gaussian log-likelihood with the ML variance estimate; one regressor.
    const real_t llf = -0.5 * static_cast<real_t>(n) *
                       (std::log(2.0 * 3.14159265358979323846) +
                        std::log(ss_res / static_cast<real_t>(n)) + 1.0);
    r.aic = -2.0 * llf + 2.0;
    return r;
}

inline nlohmann::json to_json(const OlsReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["beta"] = r.beta;
    j["r_squared"] = r.r_squared;
    j["adj_r_squared"] = r.adj_r_squared;
    j["f_statistic"] = r.f_statistic;
    j["std_error"] = r.std_error;
    j["t_value"] = r.t_value;
    j["p_value"] = r.p_value;
    j["aic"] = r.aic;
    return j;
}

} // namespace amgann

#endif // AMGANN_DATASET_STATS_HPP
