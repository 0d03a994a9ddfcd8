#ifndef AMGANN_FEM_ASSEMBLE_HPP
#define AMGANN_FEM_ASSEMBLE_HPP

/// @file assemble.hpp
/// @brief P1 stiffness/load assembly with Dirichlet lifting, and the L2 error.
///
/// Each square cell is split into two triangles by its bottom-left -> top-right
/// diagonal.  Dirichlet values (the manufactured solution on the boundary) are
/// eliminated: the system has one unknown per interior node and the lifting
/// contribution is folded into the right-hand side.  The forcing is taken
/// tile-wise from the manufactured solution, f = -mu * laplace(u) per tile;
/// interface jump terms are deliberately not added — the solver study needs a
/// right-hand side, not PDE consistency across interfaces.

#include <array>
#include <utility>
#include <vector>

#include "amgann/core.hpp"
#include "amgann/fem/problem.hpp"
#include "amgann/sparse/coo.hpp"
#include "amgann/sparse/csr.hpp"

namespace amgann {

namespace detail {

/// P1 stiffness of one triangle with constant coefficient mu:
/// K_pq = mu * area * (grad phi_p . grad phi_q).
inline std::array<std::array<real_t, 3>, 3>
triangle_stiffness(const std::array<real_t, 3>& xs, const std::array<real_t, 3>& ys, real_t mu) {
    const real_t det = (xs[1] - xs[0]) * (ys[2] - ys[0]) - (xs[2] - xs[0]) * (ys[1] - ys[0]);
    const real_t area = 0.5 * std::abs(det);
    // Gradients of the barycentric basis functions.
    const std::array<real_t, 3> bx{(ys[1] - ys[2]) / det, (ys[2] - ys[0]) / det, (ys[0] - ys[1]) / det};
    const std::array<real_t, 3> by{(xs[2] - xs[1]) / det, (xs[0] - xs[2]) / det, (xs[1] - xs[0]) / det};
    std::array<std::array<real_t, 3>, 3> k{};
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            k[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                mu * area * (bx[static_cast<std::size_t>(p)] * bx[static_cast<std::size_t>(q)] +
                             by[static_cast<std::size_t>(p)] * by[static_cast<std::size_t>(q)]);
    return k;
}

/// The two triangles of cell (ci, cj), each as three (i, j) node coordinates.
/// Vertex order: lower triangle (bl, br, tr), upper triangle (bl, tr, tl).
inline std::array<std::array<std::pair<index_t, index_t>, 3>, 2>
cell_triangles(index_t ci, index_t cj) {
    const std::pair<index_t, index_t> bl{ci, cj}, br{ci + 1, cj}, tr{ci + 1, cj + 1}, tl{ci, cj + 1};
    return {{{bl, br, tr}, {bl, tr, tl}}};
}

} // namespace detail

/// Interior-node index for grid node (i, j), or -1 on the boundary.
inline index_t interior_dof(const StructuredMesh& mesh, index_t i, index_t j) {
    const index_t n = mesh.cells_per_side;
    if (i <= 0 || i >= n || j <= 0 || j >= n) return -1;
    return (j - 1) * (n - 1) + (i - 1);
}

/// Assemble the stiffness matrix (interior unknowns only) and the load vector
/// including the Dirichlet lifting contribution.
inline std::pair<CsrMatrix, std::vector<real_t>> assemble(const ProblemSpec& spec) {
    const StructuredMesh& mesh = spec.mesh;
    const index_t n_cells = mesh.cells_per_side;
    const index_t n_dof = mesh.n_interior();
    const real_t c_force = spec.forcing_constant();

    CooMatrix a(n_dof, n_dof);
    a.entries.reserve(static_cast<std::size_t>(n_cells) * static_cast<std::size_t>(n_cells) * 18);
    std::vector<real_t> f(static_cast<std::size_t>(n_dof), 0.0);

    for (index_t cj = 0; cj < n_cells; ++cj) {
        for (index_t ci = 0; ci < n_cells; ++ci) {
            for (const auto& tri : detail::cell_triangles(ci, cj)) {
                std::array<real_t, 3> xs{}, ys{};
                std::array<index_t, 3> dof{};
                for (int p = 0; p < 3; ++p) {
                    xs[static_cast<std::size_t>(p)] = mesh.node_x(tri[static_cast<std::size_t>(p)].first);
                    ys[static_cast<std::size_t>(p)] = mesh.node_y(tri[static_cast<std::size_t>(p)].second);
                    dof[static_cast<std::size_t>(p)] =
                        interior_dof(mesh, tri[static_cast<std::size_t>(p)].first,
                                     tri[static_cast<std::size_t>(p)].second);
                }
                const real_t bx = (xs[0] + xs[1] + xs[2]) / 3.0;
                const real_t by = (ys[0] + ys[1] + ys[2]) / 3.0;
                const real_t mu = mu_eval(spec.pattern, bx, by);
                const auto k = detail::triangle_stiffness(xs, ys, mu);

                const real_t det = (xs[1] - xs[0]) * (ys[2] - ys[0]) - (xs[2] - xs[0]) * (ys[1] - ys[0]);
                const real_t area = 0.5 * std::abs(det);
                // Degree-2 Gauss rule: edge midpoints, weight area/3.
                const std::array<std::pair<real_t, real_t>, 3> mids{{
                    {0.5 * (xs[0] + xs[1]), 0.5 * (ys[0] + ys[1])},
                    {0.5 * (xs[1] + xs[2]), 0.5 * (ys[1] + ys[2])},
                    {0.5 * (xs[0] + xs[2]), 0.5 * (ys[0] + ys[2])},
                }};
                // phi_p at the three midpoints: 1/2 on the two edges touching p.
                const std::array<std::array<real_t, 3>, 3> phi_mid{{
                    {0.5, 0.0, 0.5},
                    {0.5, 0.5, 0.0},
                    {0.0, 0.5, 0.5},
                }};

                for (int p = 0; p < 3; ++p) {
                    const index_t di = dof[static_cast<std::size_t>(p)];
                    if (di < 0) continue;
                    for (int q = 0; q < 3; ++q) {
                        const index_t dj = dof[static_cast<std::size_t>(q)];
                        const real_t kpq = k[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                        if (dj >= 0) {
                            a.add(di, dj, kpq);
                        } else {
                            // Dirichlet lifting: move known boundary values right.
                            const real_t g = spec.exact(xs[static_cast<std::size_t>(q)],
                                                        ys[static_cast<std::size_t>(q)]);
                            f[static_cast<std::size_t>(di)] -= kpq * g;
                        }
                    }
                    real_t load = 0.0;
                    for (int q = 0; q < 3; ++q)
                        load += phi_mid[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] *
                                mu * c_force * spec.exact(mids[static_cast<std::size_t>(q)].first,
                                                          mids[static_cast<std::size_t>(q)].second);
                    f[static_cast<std::size_t>(di)] += area / 3.0 * load;
                }
            }
        }
    }
    return {coo_to_csr(a), std::move(f)};
}

/// L2 distance between the discrete solution (interior values u_h, boundary
/// values from the exact Dirichlet data) and the exact solution, integrated
/// with the degree-2 edge-midpoint rule per element.
inline real_t l2_error(const ProblemSpec& spec, const std::vector<real_t>& u_h) {
    const StructuredMesh& mesh = spec.mesh;
    if (static_cast<index_t>(u_h.size()) != mesh.n_interior())
        throw DimensionError("l2_error: u_h has length " + std::to_string(u_h.size()) +
                             ", expected " + std::to_string(mesh.n_interior()));

    const auto nodal = [&](index_t i, index_t j) {
        const index_t d = interior_dof(mesh, i, j);
        if (d >= 0) return u_h[static_cast<std::size_t>(d)];
        return spec.exact(mesh.node_x(i), mesh.node_y(j));
    };

    real_t err2 = 0.0;
    for (index_t cj = 0; cj < mesh.cells_per_side; ++cj) {
        for (index_t ci = 0; ci < mesh.cells_per_side; ++ci) {
            for (const auto& tri : detail::cell_triangles(ci, cj)) {
                std::array<real_t, 3> xs{}, ys{}, uv{};
                for (int p = 0; p < 3; ++p) {
                    xs[static_cast<std::size_t>(p)] = mesh.node_x(tri[static_cast<std::size_t>(p)].first);
                    ys[static_cast<std::size_t>(p)] = mesh.node_y(tri[static_cast<std::size_t>(p)].second);
                    uv[static_cast<std::size_t>(p)] = nodal(tri[static_cast<std::size_t>(p)].first,
                                                            tri[static_cast<std::size_t>(p)].second);
                }
                const real_t det = (xs[1] - xs[0]) * (ys[2] - ys[0]) - (xs[2] - xs[0]) * (ys[1] - ys[0]);
                const real_t area = 0.5 * std::abs(det);
                // P1 at an edge midpoint is the mean of the edge's endpoints.
                const std::array<std::array<int, 2>, 3> edges{{{0, 1}, {1, 2}, {0, 2}}};
                for (const auto& e : edges) {
                    const real_t mx = 0.5 * (xs[static_cast<std::size_t>(e[0])] + xs[static_cast<std::size_t>(e[1])]);
                    const real_t my = 0.5 * (ys[static_cast<std::size_t>(e[0])] + ys[static_cast<std::size_t>(e[1])]);
                    const real_t um = 0.5 * (uv[static_cast<std::size_t>(e[0])] + uv[static_cast<std::size_t>(e[1])]);
                    const real_t d = um - spec.exact(mx, my);
                    err2 += area / 3.0 * d * d;
                }
            }
        }
    }
    return std::sqrt(err2);
}

/// Exact solution sampled at the interior nodes (testing aid).
inline std::vector<real_t> exact_interior_values(const ProblemSpec& spec) {
    const StructuredMesh& mesh = spec.mesh;
    std::vector<real_t> u(static_cast<std::size_t>(mesh.n_interior()), 0.0);
    for (index_t j = 1; j < mesh.cells_per_side; ++j)
        for (index_t i = 1; i < mesh.cells_per_side; ++i)
            u[static_cast<std::size_t>(interior_dof(mesh, i, j))] =
                spec.exact(mesh.node_x(i), mesh.node_y(j));
    return u;
}

} // namespace amgann

#endif // AMGANN_FEM_ASSEMBLE_HPP
