#include "hosim/hodge.hpp"

#include <algorithm>
#include <cmath>

namespace hosim {

namespace {
std::uint64_t pack_edge(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}
} // namespace

HodgeOperators HodgeOperators::build(const ProjectedGraph& g,
                                     const std::vector<std::array<NodeId, 3>>& closed_triangles) {
    HodgeOperators h;
    h.num_nodes = g.num_ids;
    for (std::int64_t u = 0; u < g.num_ids; ++u) {
        for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
            if (static_cast<NodeId>(u) < v) h.edges.emplace_back(static_cast<NodeId>(u), v);
        }
    }
    std::sort(h.edges.begin(), h.edges.end());
    h.num_edges = static_cast<std::int64_t>(h.edges.size());
    for (std::int64_t e = 0; e < h.num_edges; ++e) {
        h.edge_ids_.emplace(pack_edge(h.edges[e].first, h.edges[e].second), e);
    }

    h.triangles = closed_triangles;
    std::sort(h.triangles.begin(), h.triangles.end());
    h.num_triangles = static_cast<std::int64_t>(h.triangles.size());

    std::vector<std::int64_t> tri_per_edge(h.num_edges, 0);
    h.tri_edges.reserve(h.triangles.size());
    for (const auto& t : h.triangles) {
        const std::int64_t ij = h.edge_id(t[0], t[1]);
        const std::int64_t jk = h.edge_id(t[1], t[2]);
        const std::int64_t ik = h.edge_id(t[0], t[2]);
        if (ij < 0 || jk < 0 || ik < 0) {
            throw DataError("HodgeOperators: a closed triangle references a missing edge");
        }
        h.tri_edges.push_back({ij, jk, ik});
        ++tri_per_edge[ij];
        ++tri_per_edge[jk];
        ++tri_per_edge[ik];
    }

    h.inv_degree.assign(h.num_nodes, 0.0);
    for (std::int64_t u = 0; u < h.num_nodes; ++u) {
        const auto d = g.degree(static_cast<NodeId>(u));
        if (d > 0) h.inv_degree[u] = 1.0 / static_cast<double>(d);
    }
    h.inv_m.resize(h.num_edges);
    for (std::int64_t e = 0; e < h.num_edges; ++e) {
        h.inv_m[e] = 1.0 / (2.0 + static_cast<double>(tri_per_edge[e]));
    }
    return h;
}

std::int64_t HodgeOperators::edge_id(NodeId u, NodeId v) const {
    if (u > v) std::swap(u, v);
    const auto it = edge_ids_.find(pack_edge(u, v));
    return it == edge_ids_.end() ? -1 : it->second;
}

void HodgeOperators::apply_grad(std::span<const double> x, std::span<double> y) const {
    for (std::int64_t e = 0; e < num_edges; ++e) {
        y[e] = x[edges[e].second] - x[edges[e].first];
    }
}

void HodgeOperators::apply_grad_t(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::int64_t e = 0; e < num_edges; ++e) {
        y[edges[e].second] += x[e];
        y[edges[e].first] -= x[e];
    }
}

void HodgeOperators::apply_curl(std::span<const double> x, std::span<double> y) const {
    for (std::int64_t t = 0; t < num_triangles; ++t) {
        const auto& te = tri_edges[t];
        y[t] = x[te[0]] + x[te[1]] - x[te[2]];
    }
}

void HodgeOperators::apply_curl_t(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::int64_t t = 0; t < num_triangles; ++t) {
        const auto& te = tri_edges[t];
        y[te[0]] += x[t];
        y[te[1]] += x[t];
        y[te[2]] -= x[t];
    }
}

void HodgeOperators::apply_lhat(std::span<const double> x, std::span<double> y) const {
    std::vector<double> xm(num_edges);
    for (std::int64_t e = 0; e < num_edges; ++e) xm[e] = x[e] * inv_m[e];

    std::vector<double> node(num_nodes, 0.0);
    apply_grad_t(xm, node);
    for (std::int64_t u = 0; u < num_nodes; ++u) node[u] *= inv_degree[u];
    apply_grad(node, y);

    if (num_triangles > 0) {
        std::vector<double> tri(num_triangles, 0.0);
        apply_curl(xm, tri);
        std::vector<double> back(num_edges, 0.0);
        apply_curl_t(tri, back);
        for (std::int64_t e = 0; e < num_edges; ++e) y[e] += back[e];
    }
}

SimplicialPpr::SimplicialPpr(HodgeOperators ops, double alpha, double solver_tol)
    : ops_(std::move(ops)), alpha_(alpha), solver_tol_(solver_tol) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("simplicial PPR: alpha must be in (0, 1)");
}

const std::vector<double>& SimplicialPpr::column(std::int64_t edge, HodgeComponent c) {
    auto it = cache_.find(edge);
    if (it == cache_.end()) {
        const std::int64_t ne = ops_.num_edges;
        std::vector<double> b(ne, 0.0), s(ne, 0.0);
        b[edge] = 1.0 - alpha_;
        const LinOp apply = [this](std::span<const double> x, std::span<double> y) {
            // y = (I - alpha P) x with P = (I - Lhat) / 2
            std::vector<double> lx(ops_.num_edges);
            ops_.apply_lhat(x, lx);
            const double half_alpha = 0.5 * alpha_;
            for (std::int64_t e = 0; e < ops_.num_edges; ++e) {
                y[e] = x[e] - half_alpha * (x[e] - lx[e]);
            }
        };
        const auto rep = bicgstab(ne, apply, b, s, solver_tol_);
        if (!rep.converged) {
            throw NumericError("simplicial PPR column solve did not converge (residual " +
                               std::to_string(rep.relative_residual) + ")");
        }
        auto decomp = hodge_decompose_column(ops_, s);
        std::array<std::vector<double>, 4> slot;
        slot[static_cast<int>(HodgeComponent::Combined)] = std::move(s);
        slot[static_cast<int>(HodgeComponent::Grad)] = std::move(decomp[0]);
        slot[static_cast<int>(HodgeComponent::Curl)] = std::move(decomp[1]);
        slot[static_cast<int>(HodgeComponent::Harm)] = std::move(decomp[2]);
        it = cache_.emplace(edge, std::move(slot)).first;
    }
    return it->second[static_cast<int>(c)];
}

double SimplicialPpr::triple_score(const std::array<NodeId, 3>& triple, HodgeComponent c) {
    std::array<NodeId, 3> t = triple;
    std::sort(t.begin(), t.end());
    const std::int64_t e01 = ops_.edge_id(t[0], t[1]);
    const std::int64_t e02 = ops_.edge_id(t[0], t[2]);
    const std::int64_t e12 = ops_.edge_id(t[1], t[2]);
    if (e01 < 0 || e02 < 0 || e12 < 0) {
        throw DataError("simplicial PPR: requested triple has a missing edge");
    }
    const auto& c01 = column(e01, c);
    const auto& c02 = column(e02, c);
    const auto& c12 = column(e12, c);
    // |S_{a,b}| summed over the six ordered pairs; S_{row,col} = column(col)[row]
    return std::abs(c01[e02]) + std::abs(c02[e01]) + std::abs(c01[e12]) + std::abs(c12[e01]) +
           std::abs(c02[e12]) + std::abs(c12[e02]);
}

std::array<std::vector<double>, 3> hodge_decompose_column(const HodgeOperators& ops,
                                                          std::span<const double> s, double tol) {
    const std::int64_t ne = ops.num_edges;
    const std::int64_t nv = ops.num_nodes;
    const std::int64_t nt = ops.num_triangles;

    std::array<std::vector<double>, 3> out;
    auto& grad = out[0];
    auto& curl = out[1];
    auto& harm = out[2];
    grad.assign(ne, 0.0);
    curl.assign(ne, 0.0);

    {
        std::vector<double> xstar(nv, 0.0);
        const LinOp g_op = [&ops](std::span<const double> x, std::span<double> y) {
            ops.apply_grad(x, y);
        };
        const LinOp gt_op = [&ops](std::span<const double> x, std::span<double> y) {
            ops.apply_grad_t(x, y);
        };
        const auto rep = lsqr(ne, nv, g_op, gt_op, s, xstar, tol);
        if (!rep.converged) {
            throw NumericError("Hodge gradient least squares did not converge (residual " +
                               std::to_string(rep.relative_residual) + ")");
        }
        ops.apply_grad(xstar, grad);
    }
    if (nt > 0) {
        std::vector<double> ystar(nt, 0.0);
        const LinOp ct_op = [&ops](std::span<const double> x, std::span<double> y) {
            ops.apply_curl_t(x, y);
        };
        const LinOp c_op = [&ops](std::span<const double> x, std::span<double> y) {
            ops.apply_curl(x, y);
        };
        const auto rep = lsqr(ne, nt, ct_op, c_op, s, ystar, tol);
        if (!rep.converged) {
            throw NumericError("Hodge curl least squares did not converge (residual " +
                               std::to_string(rep.relative_residual) + ")");
        }
        ops.apply_curl_t(ystar, curl);
    }
    harm.resize(ne);
    for (std::int64_t e = 0; e < ne; ++e) harm[e] = s[e] - grad[e] - curl[e];
    return out;
}

} // namespace hosim
