#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hosim/projection.hpp"
#include "hosim/solvers.hpp"
#include "hosim/triangles.hpp"

namespace hosim {

// Boundary-style operators of the complex formed by the projected graph's
// edges and the closed triangles. Edges are oriented low-to-high (i < j) and
// triangles low-to-mid-to-high (i < j < k):
//   G[(i,j), x] = +1 at x = j, -1 at x = i          (|E| x |V|)
//   C[(i,j,k), e] = +1 at (i,j) and (j,k), -1 at (i,k) (|T| x |E|)
//   D = diag(unweighted node degree), M_e = 2 + #closed triangles on e
//   Lhat = (G D^-1 G^T + C^T C) M^-1
struct HodgeOperators {
    std::int64_t num_nodes = 0;
    std::int64_t num_edges = 0;
    std::int64_t num_triangles = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;      // sorted lexicographically
    std::vector<std::array<NodeId, 3>> triangles;      // sorted
    std::vector<std::array<std::int64_t, 3>> tri_edges; // edge ids (ij, jk, ik)
    std::vector<double> inv_degree; // 0 where untouched by any edge
    std::vector<double> inv_m;

    static HodgeOperators build(const ProjectedGraph& g,
                                const std::vector<std::array<NodeId, 3>>& closed_triangles);

    std::int64_t edge_id(NodeId u, NodeId v) const; // -1 when the edge is absent

    void apply_grad(std::span<const double> x, std::span<double> y) const;    // y = G x
    void apply_grad_t(std::span<const double> x, std::span<double> y) const;  // y = G^T x
    void apply_curl(std::span<const double> x, std::span<double> y) const;    // y = C x
    void apply_curl_t(std::span<const double> x, std::span<double> y) const;  // y = C^T x
    void apply_lhat(std::span<const double> x, std::span<double> y) const;

private:
    std::unordered_map<std::uint64_t, std::int64_t> edge_ids_;
};

enum class HodgeComponent { Combined, Grad, Curl, Harm };

// Simplicial personalized PageRank on edge space:
//   P = (I - Lhat) / 2,  S = (I - alpha P)^-1 (1 - alpha).
// Columns are solved on demand and cached; the three-node score sums the
// absolute values of the six off-column entries over the triple's edges.
class SimplicialPpr {
public:
    SimplicialPpr(HodgeOperators ops, double alpha, double solver_tol = 1e-10);

    const HodgeOperators& ops() const { return ops_; }
    double alpha() const { return alpha_; }

    // Full column of S (and its Hodge pieces) for the given edge.
    const std::vector<double>& column(std::int64_t edge, HodgeComponent c = HodgeComponent::Combined);

    double triple_score(const std::array<NodeId, 3>& triple,
                        HodgeComponent c = HodgeComponent::Combined);

private:
    HodgeOperators ops_;
    double alpha_;
    double solver_tol_;
    std::unordered_map<std::int64_t, std::array<std::vector<double>, 4>> cache_;
};

// Least-squares split of one edge-space column: s = G x* + C^T y* + harm.
// Returns {grad, curl, harm}; grad/curl solved by LSQR at `tol`.
std::array<std::vector<double>, 3> hodge_decompose_column(const HodgeOperators& ops,
                                                          std::span<const double> s,
                                                          double tol = 1e-3);

} // namespace hosim
