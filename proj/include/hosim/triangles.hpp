#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hosim/dataset.hpp"
#include "hosim/projection.hpp"

namespace hosim {

struct TriangleRecord {
    std::array<NodeId, 3> nodes;         // sorted ascending
    std::array<std::uint32_t, 3> weights; // (W_uv, W_uw, W_vw)
    bool closed = false;
};

namespace detail {
struct TripleKey {
    NodeId a, b, c; // sorted
    bool operator==(const TripleKey&) const = default;
};
struct QuadKey {
    NodeId a, b, c, d; // sorted
    bool operator==(const QuadKey&) const = default;
};
struct TripleHash {
    std::size_t operator()(const TripleKey& k) const;
};
struct QuadHash {
    std::size_t operator()(const QuadKey& k) const;
};
} // namespace detail

// How often small node subsets co-appear inside one simplex, with counts
// capped at 2 (the strength binning never needs more). Quad tracking is
// optional since it is only needed for 4-node configurations.
class CooccurrenceIndex {
public:
    static CooccurrenceIndex build(const SimplexDataset& ds, bool with_quads = false);

    // 0 = never together, 1 = exactly one simplex, 2 = two or more.
    int triple_count(NodeId u, NodeId v, NodeId w) const;
    bool triple_closed(NodeId u, NodeId v, NodeId w) const { return triple_count(u, v, w) > 0; }
    bool quad_closed(NodeId a, NodeId b, NodeId c, NodeId d) const;
    bool has_quads() const { return has_quads_; }

    // Sorted list of all closed triples (the 2-simplices of the complex).
    std::vector<std::array<NodeId, 3>> closed_triples() const;

private:
    std::unordered_map<detail::TripleKey, std::uint8_t, detail::TripleHash> triples_;
    std::unordered_map<detail::QuadKey, std::uint8_t, detail::QuadHash> quads_;
    bool has_quads_ = false;
};

// Forward (rank-ordered) triangle enumeration: every 3-clique visited exactly
// once. Callback receives sorted node ids and matching edge weights
// (w01 = W(n0,n1), w02 = W(n0,n2), w12 = W(n1,n2)).
template <typename Fn>
void for_each_triangle(const ProjectedGraph& g, Fn&& fn);

// 4-clique extension of the same pass; callback receives sorted ids.
template <typename Fn>
void for_each_four_clique(const ProjectedGraph& g, Fn&& fn);

// Rank permutation used by the enumeration: ascending degree, id tiebreak.
std::vector<std::int64_t> degree_order_rank(const ProjectedGraph& g);

// True iff some simplex contains all three nodes; galloping intersection of
// the (already sorted) incidence lists.
bool classify_closed(const std::array<NodeId, 3>& triple, const IncidenceIndex& inc);

struct TriangleTally {
    std::int64_t open = 0;
    std::int64_t closed = 0;
    double fraction_open = 0.0;
};

TriangleTally fraction_open(const SimplexDataset& ds);
TriangleTally fraction_open(const ProjectedGraph& g, const CooccurrenceIndex& cooc);

std::vector<TriangleRecord> enumerate_triangles(const ProjectedGraph& g);

// ---- implementation of the enumeration templates ----

namespace detail {

struct ForwardLists {
    std::vector<std::int64_t> offsets;
    std::vector<NodeId> nbrs;
    std::vector<std::uint32_t> wts;
    std::vector<std::int64_t> rank;
};

ForwardLists build_forward_lists(const ProjectedGraph& g);

} // namespace detail

template <typename Fn>
void for_each_triangle(const ProjectedGraph& g, Fn&& fn) {
    const auto fwd = detail::build_forward_lists(g);
    const std::int64_t n = g.num_ids;
    for (std::int64_t u = 0; u < n; ++u) {
        const std::int64_t ub = fwd.offsets[u], ue = fwd.offsets[u + 1];
        for (std::int64_t i = ub; i < ue; ++i) {
            const NodeId v = fwd.nbrs[i];
            const std::uint32_t wuv = fwd.wts[i];
            // merge F(u) and F(v), both sorted by id
            std::int64_t p = ub, q = fwd.offsets[v];
            const std::int64_t pe = ue, qe = fwd.offsets[v + 1];
            while (p < pe && q < qe) {
                if (fwd.nbrs[p] < fwd.nbrs[q]) {
                    ++p;
                } else if (fwd.nbrs[p] > fwd.nbrs[q]) {
                    ++q;
                } else {
                    const NodeId w = fwd.nbrs[p];
                    std::array<NodeId, 3> nodes{static_cast<NodeId>(u), v, w};
                    std::array<std::uint32_t, 3> wt{wuv, fwd.wts[p], fwd.wts[q]};
                    // sort nodes ascending, keeping weights aligned to pairs:
                    // wt = (w01, w02, w12) for sorted nodes
                    if (nodes[0] > nodes[1]) { std::swap(nodes[0], nodes[1]); std::swap(wt[1], wt[2]); }
                    if (nodes[1] > nodes[2]) { std::swap(nodes[1], nodes[2]); std::swap(wt[0], wt[1]); }
                    if (nodes[0] > nodes[1]) { std::swap(nodes[0], nodes[1]); std::swap(wt[1], wt[2]); }
                    fn(nodes, wt);
                    ++p;
                    ++q;
                }
            }
        }
    }
}

template <typename Fn>
void for_each_four_clique(const ProjectedGraph& g, Fn&& fn) {
    const auto fwd = detail::build_forward_lists(g);
    const std::int64_t n = g.num_ids;
    std::vector<NodeId> common;
    for (std::int64_t u = 0; u < n; ++u) {
        const std::int64_t ub = fwd.offsets[u], ue = fwd.offsets[u + 1];
        for (std::int64_t i = ub; i < ue; ++i) {
            const NodeId v = fwd.nbrs[i];
            common.clear();
            std::int64_t p = ub, q = fwd.offsets[v];
            const std::int64_t pe = ue, qe = fwd.offsets[v + 1];
            while (p < pe && q < qe) {
                if (fwd.nbrs[p] < fwd.nbrs[q]) ++p;
                else if (fwd.nbrs[p] > fwd.nbrs[q]) ++q;
                else { common.push_back(fwd.nbrs[p]); ++p; ++q; }
            }
            // the two lowest-rank vertices of any 4-clique are u and v, so
            // each clique surfaces exactly once as an adjacent pair in common
            for (std::size_t a = 0; a < common.size(); ++a) {
                for (std::size_t b = a + 1; b < common.size(); ++b) {
                    if (g.weight(common[a], common[b]) == 0) continue;
                    std::array<NodeId, 4> nodes{static_cast<NodeId>(u), v, common[a], common[b]};
                    std::sort(nodes.begin(), nodes.end());
                    fn(nodes);
                }
            }
        }
    }
}

} // namespace hosim
