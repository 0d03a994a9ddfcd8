#ifndef AMGANN_FEM_PROBLEM_HPP
#define AMGANN_FEM_PROBLEM_HPP

/// @file problem.hpp
/// @brief Model-problem description: structured mesh on (-1,1)^2, piecewise
///        constant diffusion patterns on half-unit tiles, manufactured solutions.

#include <cmath>
#include <string>

#include <json.hpp>

#include "amgann/core.hpp"

namespace amgann {

// ============================================================================
// Mesh
// ============================================================================

/// Uniform N x N cell grid on (-1,1)^2, each cell split into two triangles by
/// the bottom-left -> top-right diagonal.  The reported mesh size is h = 1/N
/// (unit-square convention); the geometric cell edge is 2/N.
struct StructuredMesh {
    index_t cells_per_side = 0;

    explicit StructuredMesh(index_t n) : cells_per_side(n) {
        if (n < 2 || (n & (n - 1)) != 0)
            throw DimensionError("StructuredMesh: N=" + std::to_string(n) +
                                 " must be a power of two >= 2 so tile interfaces align with cells");
    }

    index_t nodes_per_side() const { return cells_per_side + 1; }
    index_t interior_per_side() const { return cells_per_side - 1; }
    index_t n_interior() const { return interior_per_side() * interior_per_side(); }

    real_t node_x(index_t i) const { return -1.0 + 2.0 * static_cast<real_t>(i) / static_cast<real_t>(cells_per_side); }
    real_t node_y(index_t j) const { return node_x(j); }

    /// Reported mesh size h = 1/N, so -log2(h) = log2(N).
    real_t h() const { return 1.0 / static_cast<real_t>(cells_per_side); }
    real_t neg_log2_h() const { return std::log2(static_cast<real_t>(cells_per_side)); }
};

// ============================================================================
// Diffusion patterns
// ============================================================================

/// Tile layouts: vertical strides or checkerboards, at one- or half-unit pitch.
/// "White" tiles carry 10^eps_white, "gray" tiles 10^eps_gray; the single-
/// exponent variant is eps_white = eps, eps_gray = 0 (so gray means mu = 1).
enum class PatternKind { TwoStrides, Checkerboard2x2, FourStrides, Checkerboard4x4 };

inline std::string pattern_name(PatternKind k) {
    switch (k) {
        case PatternKind::TwoStrides:      return "two_strides";
        case PatternKind::Checkerboard2x2: return "checkerboard_2x2";
        case PatternKind::FourStrides:     return "four_strides";
        case PatternKind::Checkerboard4x4: return "checkerboard_4x4";
    }
    throw Error("pattern_name: invalid kind");
}

inline PatternKind pattern_from_name(const std::string& s) {
    if (s == "two_strides" || s == "a")      return PatternKind::TwoStrides;
    if (s == "checkerboard_2x2" || s == "b") return PatternKind::Checkerboard2x2;
    if (s == "four_strides" || s == "c")     return PatternKind::FourStrides;
    if (s == "checkerboard_4x4" || s == "d") return PatternKind::Checkerboard4x4;
    throw DegenerateInputError("unknown diffusion pattern '" + s + "'");
}

struct DiffusionPattern {
    PatternKind kind = PatternKind::TwoStrides;
    real_t eps_white = 0.0;
    real_t eps_gray  = 0.0;
    bool two_exponents = false; ///< true when built from an (eps1, eps2) pair

    static DiffusionPattern single(PatternKind k, real_t eps) {
        DiffusionPattern p;
        p.kind = k;
        p.eps_white = eps;
        p.eps_gray = 0.0;
        p.two_exponents = false;
        return p;
    }

    /// Two-exponent variant: white tiles 10^eps1, gray tiles 10^eps2.
    static DiffusionPattern pair(PatternKind k, real_t eps1, real_t eps2) {
        DiffusionPattern p;
        p.kind = k;
        p.eps_white = eps1;
        p.eps_gray = eps2;
        p.two_exponents = true;
        return p;
    }

    /// Tile pitch: whole units for the 2-tile layouts, half units for the 4-tile ones.
    real_t tile_width() const {
        return (kind == PatternKind::TwoStrides || kind == PatternKind::Checkerboard2x2) ? 1.0 : 0.5;
    }
};

/// Diffusion coefficient at an off-interface point.  Strides alternate
/// white/gray from the left edge; checkerboards are gray at the bottom-left
/// corner and alternate in both directions.
inline real_t mu_eval(const DiffusionPattern& p, real_t x, real_t y) {
    if (x < -1.0 || x > 1.0 || y < -1.0 || y > 1.0)
        throw DimensionError("mu_eval: point outside the closed domain");
    const real_t w = p.tile_width();
    const index_t tiles = static_cast<index_t>(2.0 / w + 0.5);

    const auto tile_index = [&](real_t c) {
        const real_t t = (c + 1.0) / w;
        const real_t fl = std::floor(t);
        if (t == fl && fl > 0.0 && fl < static_cast<real_t>(tiles))
            throw DegenerateInputError("mu_eval: point lies exactly on a tile interface; "
                                       "evaluate at element barycenters");
        index_t i = static_cast<index_t>(fl);
        if (i >= tiles) i = tiles - 1; // domain edge c = +1
        return i;
    };

    bool gray = false;
    switch (p.kind) {
        case PatternKind::TwoStrides:
        case PatternKind::FourStrides:
            gray = (tile_index(x) % 2 == 1); // leftmost stride is white
            break;
        case PatternKind::Checkerboard2x2:
        case PatternKind::Checkerboard4x4:
            gray = ((tile_index(x) + tile_index(y)) % 2 == 0); // bottom-left tile is gray
            break;
    }
    return std::pow(10.0, gray ? p.eps_gray : p.eps_white);
}

// ============================================================================
// Problem specification
// ============================================================================

/// Manufactured exact solutions.
enum class SolutionId { CosPi, Cos2Pi };

/// Stride/2x2 layouts pair with cos(pi x)cos(pi y); the half-unit layouts with
/// cos(2 pi x)cos(2 pi y), whose period matches their tile pitch.
inline SolutionId canonical_solution(PatternKind k) {
    return (k == PatternKind::TwoStrides || k == PatternKind::Checkerboard2x2)
               ? SolutionId::CosPi
               : SolutionId::Cos2Pi;
}

struct ProblemSpec {
    StructuredMesh mesh;
    DiffusionPattern pattern;
    SolutionId solution;

    ProblemSpec(StructuredMesh m, DiffusionPattern p)
        : mesh(m), pattern(p), solution(canonical_solution(p.kind)) {}

    real_t exact(real_t x, real_t y) const {
        const real_t k = (solution == SolutionId::CosPi) ? 3.14159265358979323846
                                                         : 2.0 * 3.14159265358979323846;
        return std::cos(k * x) * std::cos(k * y);
    }

    /// -laplace(u) = c * u for the product-of-cosines solutions.
    real_t forcing_constant() const {
        const real_t pi = 3.14159265358979323846;
        return (solution == SolutionId::CosPi) ? 2.0 * pi * pi : 8.0 * pi * pi;
    }
};

inline nlohmann::json to_json(const ProblemSpec& s) {
    nlohmann::json j;
    j["pattern"] = pattern_name(s.pattern.kind);
    if (s.pattern.two_exponents)
        j["epsilon"] = {s.pattern.eps_white, s.pattern.eps_gray};
    else
        j["epsilon"] = s.pattern.eps_white;
    j["N"] = s.mesh.cells_per_side;
    j["solution"] = (s.solution == SolutionId::CosPi) ? "cos_pi" : "cos_2pi";
    return j;
}

inline ProblemSpec problem_from_json(const nlohmann::json& j) {
    const PatternKind kind = pattern_from_name(j.at("pattern").get<std::string>());
    DiffusionPattern p;
    if (j.at("epsilon").is_array()) {
        const auto eps = j.at("epsilon");
        p = DiffusionPattern::pair(kind, eps.at(0).get<real_t>(), eps.at(1).get<real_t>());
    } else {
        p = DiffusionPattern::single(kind, j.at("epsilon").get<real_t>());
    }
    ProblemSpec spec(StructuredMesh(j.at("N").get<index_t>()), p);
    if (j.contains("solution")) {
        const std::string sol = j.at("solution").get<std::string>();
        const std::string expect = (spec.solution == SolutionId::CosPi) ? "cos_pi" : "cos_2pi";
        if (sol != expect)
            throw DegenerateInputError("problem_from_json: pattern " + pattern_name(kind) +
                                       " pairs with " + expect + ", got " + sol);
    }
    return spec;
}

} // namespace amgann

#endif // AMGANN_FEM_PROBLEM_HPP
