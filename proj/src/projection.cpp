#include "hosim/projection.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace hosim {

IncidenceIndex IncidenceIndex::build(const SimplexDataset& ds) {
    IncidenceIndex idx;
    idx.offsets_.assign(ds.num_ids() + 1, 0);
    for (const auto& s : ds.simplices()) {
        for (NodeId u : s.nodes) ++idx.offsets_[u + 1];
    }
    for (std::size_t i = 1; i < idx.offsets_.size(); ++i) idx.offsets_[i] += idx.offsets_[i - 1];
    idx.ids_.resize(idx.offsets_.back());
    std::vector<std::int64_t> cursor(idx.offsets_.begin(), idx.offsets_.end() - 1);
    const auto& simplices = ds.simplices();
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(simplices.size()); ++i) {
        for (NodeId u : simplices[i].nodes) idx.ids_[cursor[u]++] = i;
    }
    return idx;
}

IncidenceIndex build_incidence(const SimplexDataset& ds) { return IncidenceIndex::build(ds); }

std::uint32_t ProjectedGraph::weight(NodeId u, NodeId v) const {
    const auto nb = neighbors(u);
    const auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return 0;
    return wts[offsets[u] + (it - nb.begin())];
}

ProjectedGraph build_projected_graph(const SimplexDataset& ds) {
    const std::int64_t n = ds.num_ids();
    std::unordered_map<std::uint64_t, std::uint64_t> pair_counts;
    std::vector<bool> active(n, false);
    for (const auto& s : ds.simplices()) {
        const auto& v = s.nodes;
        for (NodeId u : v) active[u] = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                pair_counts[(static_cast<std::uint64_t>(v[i]) << 32) | v[j]] += 1;
            }
        }
    }

    ProjectedGraph g;
    g.num_ids = n;
    g.num_active = std::count(active.begin(), active.end(), true);
    g.offsets.assign(n + 1, 0);
    for (const auto& [key, w] : pair_counts) {
        if (w > std::numeric_limits<std::uint32_t>::max()) {
            throw NumericError("edge weight exceeds 32-bit range");
        }
        const NodeId u = static_cast<NodeId>(key >> 32);
        const NodeId v = static_cast<NodeId>(key & 0xffffffffu);
        ++g.offsets[u + 1];
        ++g.offsets[v + 1];
    }
    for (std::int64_t i = 1; i <= n; ++i) g.offsets[i] += g.offsets[i - 1];
    g.nbrs.resize(g.offsets.back());
    g.wts.resize(g.offsets.back());
    std::vector<std::int64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (const auto& [key, w] : pair_counts) {
        const NodeId u = static_cast<NodeId>(key >> 32);
        const NodeId v = static_cast<NodeId>(key & 0xffffffffu);
        const auto wu = static_cast<std::uint32_t>(w);
        g.nbrs[cursor[u]] = v;
        g.wts[cursor[u]++] = wu;
        g.nbrs[cursor[v]] = u;
        g.wts[cursor[v]++] = wu;
    }
    // sort each row by neighbor id, weights in lockstep
    for (NodeId u = 0; u < n; ++u) {
        const std::int64_t b = g.offsets[u], e = g.offsets[u + 1];
        std::vector<std::pair<NodeId, std::uint32_t>> row;
        row.reserve(e - b);
        for (std::int64_t i = b; i < e; ++i) row.emplace_back(g.nbrs[i], g.wts[i]);
        std::sort(row.begin(), row.end());
        for (std::int64_t i = b; i < e; ++i) {
            g.nbrs[i] = row[i - b].first;
            g.wts[i] = row[i - b].second;
        }
    }

    g.deg_weak.assign(n, 0);
    g.deg_strong.assign(n, 0);
    for (const auto& [key, w] : pair_counts) {
        const NodeId u = static_cast<NodeId>(key >> 32);
        const NodeId v = static_cast<NodeId>(key & 0xffffffffu);
        if (w == 1) {
            ++g.deg_weak[u];
            ++g.deg_weak[v];
            ++g.m_weak;
        } else {
            ++g.deg_strong[u];
            ++g.deg_strong[v];
            ++g.m_strong;
        }
    }
    return g;
}

GraphMetrics graph_metrics(const ProjectedGraph& g) {
    const double n = static_cast<double>(g.num_active);
    if (g.num_active < 2) throw DataError("graph_metrics: need at least 2 nodes");
    const double m = static_cast<double>(g.num_edges());
    GraphMetrics out;
    out.edge_density = m / (n * (n - 1.0) / 2.0);
    out.average_degree = 2.0 * m / n;
    return out;
}

} // namespace hosim
