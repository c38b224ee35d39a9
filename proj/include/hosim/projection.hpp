#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hosim/dataset.hpp"

namespace hosim {

// Per-node list R(u) of the simplex indices containing u, in time order.
class IncidenceIndex {
public:
    static IncidenceIndex build(const SimplexDataset& ds);

    std::span<const std::int64_t> simplices_of(NodeId u) const {
        return {ids_.data() + offsets_[u], ids_.data() + offsets_[u + 1]};
    }
    std::int64_t simplicial_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
    std::int64_t num_ids() const { return static_cast<std::int64_t>(offsets_.size()) - 1; }

private:
    std::vector<std::int64_t> offsets_;
    std::vector<std::int64_t> ids_;
};

IncidenceIndex build_incidence(const SimplexDataset& ds);

enum class TieStrength { Absent = 0, Weak = 1, Strong = 2 };

// Weighted projection: W_uv = number of simplices containing both u and v.
// CSR with neighbor lists sorted by id; immutable once built.
struct ProjectedGraph {
    std::int64_t num_ids = 0;    // id-space size of the source dataset
    std::int64_t num_active = 0; // nodes appearing in >= 1 simplex
    std::vector<std::int64_t> offsets;
    std::vector<NodeId> nbrs;
    std::vector<std::uint32_t> wts;
    std::vector<std::uint32_t> deg_weak;   // d1(u): incident ties with W = 1
    std::vector<std::uint32_t> deg_strong; // d2(u): incident ties with W >= 2
    std::int64_t m_weak = 0;
    std::int64_t m_strong = 0;

    std::int64_t degree(NodeId u) const { return offsets[u + 1] - offsets[u]; }
    std::span<const NodeId> neighbors(NodeId u) const {
        return {nbrs.data() + offsets[u], nbrs.data() + offsets[u + 1]};
    }
    std::span<const std::uint32_t> neighbor_weights(NodeId u) const {
        return {wts.data() + offsets[u], wts.data() + offsets[u + 1]};
    }
    std::uint32_t weight(NodeId u, NodeId v) const; // 0 if not adjacent
    std::int64_t num_edges() const { return m_weak + m_strong; }

    static TieStrength strength(std::uint32_t w) {
        return w == 0 ? TieStrength::Absent : (w == 1 ? TieStrength::Weak : TieStrength::Strong);
    }
};

ProjectedGraph build_projected_graph(const SimplexDataset& ds);

struct GraphMetrics {
    double edge_density = 0.0;   // m / C(n, 2), n = active nodes
    double average_degree = 0.0; // 2m / n
};

GraphMetrics graph_metrics(const ProjectedGraph& g);

} // namespace hosim
