#include "hosim/triangles.hpp"

#include <algorithm>

#include "hosim/rng.hpp"

namespace hosim {

namespace detail {

std::size_t TripleHash::operator()(const TripleKey& k) const {
    std::uint64_t h = splitmix64((static_cast<std::uint64_t>(k.a) << 32) | k.b);
    return splitmix64(h ^ k.c);
}

std::size_t QuadHash::operator()(const QuadKey& k) const {
    std::uint64_t h = splitmix64((static_cast<std::uint64_t>(k.a) << 32) | k.b);
    return splitmix64(h ^ ((static_cast<std::uint64_t>(k.c) << 32) | k.d));
}

ForwardLists build_forward_lists(const ProjectedGraph& g) {
    ForwardLists f;
    f.rank = degree_order_rank(g);
    const std::int64_t n = g.num_ids;
    f.offsets.assign(n + 1, 0);
    for (std::int64_t u = 0; u < n; ++u) {
        for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
            if (f.rank[v] > f.rank[u]) ++f.offsets[u + 1];
        }
    }
    for (std::int64_t i = 1; i <= n; ++i) f.offsets[i] += f.offsets[i - 1];
    f.nbrs.resize(f.offsets.back());
    f.wts.resize(f.offsets.back());
    std::int64_t pos = 0;
    for (std::int64_t u = 0; u < n; ++u) {
        const auto nbrs = g.neighbors(static_cast<NodeId>(u));
        const auto wts = g.neighbor_weights(static_cast<NodeId>(u));
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (f.rank[nbrs[i]] > f.rank[u]) {
                f.nbrs[pos] = nbrs[i];
                f.wts[pos] = wts[i];
                ++pos;
            }
        }
    }
    return f;
}

} // namespace detail

std::vector<std::int64_t> degree_order_rank(const ProjectedGraph& g) {
    const std::int64_t n = g.num_ids;
    std::vector<std::int64_t> order(n);
    for (std::int64_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&g](std::int64_t a, std::int64_t b) {
        const auto da = g.degree(static_cast<NodeId>(a));
        const auto db = g.degree(static_cast<NodeId>(b));
        return da != db ? da < db : a < b;
    });
    std::vector<std::int64_t> rank(n);
    for (std::int64_t i = 0; i < n; ++i) rank[order[i]] = i;
    return rank;
}

CooccurrenceIndex CooccurrenceIndex::build(const SimplexDataset& ds, bool with_quads) {
    CooccurrenceIndex idx;
    idx.has_quads_ = with_quads;
    auto bump = [](std::uint8_t& slot) {
        if (slot < 2) ++slot;
    };
    for (const auto& s : ds.simplices()) {
        const auto& v = s.nodes; // sorted
        const std::size_t k = v.size();
        if (k < 3) continue;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                for (std::size_t l = j + 1; l < k; ++l) {
                    bump(idx.triples_[detail::TripleKey{v[i], v[j], v[l]}]);
                    if (!with_quads) continue;
                    for (std::size_t m = l + 1; m < k; ++m) {
                        bump(idx.quads_[detail::QuadKey{v[i], v[j], v[l], v[m]}]);
                    }
                }
            }
        }
    }
    return idx;
}

int CooccurrenceIndex::triple_count(NodeId u, NodeId v, NodeId w) const {
    NodeId a = u, b = v, c = w;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const auto it = triples_.find(detail::TripleKey{a, b, c});
    return it == triples_.end() ? 0 : it->second;
}

bool CooccurrenceIndex::quad_closed(NodeId a, NodeId b, NodeId c, NodeId d) const {
    if (!has_quads_) throw DataError("CooccurrenceIndex built without quad tracking");
    std::array<NodeId, 4> k{a, b, c, d};
    std::sort(k.begin(), k.end());
    return quads_.find(detail::QuadKey{k[0], k[1], k[2], k[3]}) != quads_.end();
}

std::vector<std::array<NodeId, 3>> CooccurrenceIndex::closed_triples() const {
    std::vector<std::array<NodeId, 3>> out;
    out.reserve(triples_.size());
    for (const auto& [k, cnt] : triples_) out.push_back({k.a, k.b, k.c});
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// galloping advance: first position in [lo, hi) with value >= target
std::size_t gallop(std::span<const std::int64_t> v, std::size_t lo, std::int64_t target) {
    std::size_t step = 1, hi = lo;
    while (hi < v.size() && v[hi] < target) {
        lo = hi + 1;
        hi += step;
        step <<= 1;
    }
    if (hi > v.size()) hi = v.size();
    return std::lower_bound(v.begin() + lo, v.begin() + hi, target) - v.begin();
}

} // namespace

bool classify_closed(const std::array<NodeId, 3>& triple, const IncidenceIndex& inc) {
    std::array<std::span<const std::int64_t>, 3> lists{
        inc.simplices_of(triple[0]), inc.simplices_of(triple[1]), inc.simplices_of(triple[2])};
    std::sort(lists.begin(), lists.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });

    std::size_t p1 = 0, p2 = 0;
    for (std::int64_t id : lists[0]) {
        p1 = gallop(lists[1], p1, id);
        if (p1 == lists[1].size()) return false;
        if (lists[1][p1] != id) continue;
        p2 = gallop(lists[2], p2, id);
        if (p2 == lists[2].size()) return false;
        if (lists[2][p2] == id) return true;
    }
    return false;
}

TriangleTally fraction_open(const ProjectedGraph& g, const CooccurrenceIndex& cooc) {
    TriangleTally t;
    for_each_triangle(g, [&](const std::array<NodeId, 3>& nodes, const std::array<std::uint32_t, 3>&) {
        if (cooc.triple_closed(nodes[0], nodes[1], nodes[2])) ++t.closed;
        else ++t.open;
    });
    if (t.open + t.closed == 0) {
        throw DataError("fraction_open: the projected graph has no triangles");
    }
    t.fraction_open = static_cast<double>(t.open) / static_cast<double>(t.open + t.closed);
    return t;
}

TriangleTally fraction_open(const SimplexDataset& ds) {
    const auto g = build_projected_graph(ds);
    const auto cooc = CooccurrenceIndex::build(ds);
    return fraction_open(g, cooc);
}

std::vector<TriangleRecord> enumerate_triangles(const ProjectedGraph& g) {
    std::vector<TriangleRecord> out;
    for_each_triangle(g, [&](const std::array<NodeId, 3>& nodes, const std::array<std::uint32_t, 3>& w) {
        out.push_back(TriangleRecord{nodes, w, false});
    });
    std::sort(out.begin(), out.end(),
              [](const TriangleRecord& a, const TriangleRecord& b) { return a.nodes < b.nodes; });
    return out;
}

} // namespace hosim
