#include "hosim/closure.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hosim/projection.hpp"
#include "hosim/rng.hpp"

namespace hosim {

const char* lifecycle_state_name(LifecycleState s) {
    switch (s) {
        case LifecycleState::Empty: return "empty";
        case LifecycleState::OneEdgeWeak: return "one-edge(1)";
        case LifecycleState::OneEdgeStrong: return "one-edge(2)";
        case LifecycleState::TwoEdges11: return "wedge(1,1)";
        case LifecycleState::TwoEdges12: return "wedge(1,2)";
        case LifecycleState::TwoEdges22: return "wedge(2,2)";
        case LifecycleState::OpenTri111: return "open-triangle(1,1,1)";
        case LifecycleState::OpenTri112: return "open-triangle(1,1,2)";
        case LifecycleState::OpenTri122: return "open-triangle(1,2,2)";
        case LifecycleState::OpenTri222: return "open-triangle(2,2,2)";
        case LifecycleState::Closed: return "closed";
    }
    return "?";
}

namespace {

LifecycleState state_from_pair_counts(std::uint64_t cuv, std::uint64_t cuw, std::uint64_t cvw) {
    const int edges = (cuv > 0) + (cuw > 0) + (cvw > 0);
    std::array<int, 3> s{};
    int p = 0;
    for (std::uint64_t c : {cuv, cuw, cvw}) {
        if (c > 0) s[p++] = c >= 2 ? 2 : 1;
    }
    std::sort(s.begin(), s.begin() + edges);
    switch (edges) {
        case 0: return LifecycleState::Empty;
        case 1: return s[0] == 1 ? LifecycleState::OneEdgeWeak : LifecycleState::OneEdgeStrong;
        case 2:
            if (s[0] == 1 && s[1] == 1) return LifecycleState::TwoEdges11;
            if (s[0] == 1) return LifecycleState::TwoEdges12;
            return LifecycleState::TwoEdges22;
        default: {
            const int strong = (s[0] == 2) + (s[1] == 2) + (s[2] == 2);
            switch (strong) {
                case 0: return LifecycleState::OpenTri111;
                case 1: return LifecycleState::OpenTri112;
                case 2: return LifecycleState::OpenTri122;
                default: return LifecycleState::OpenTri222;
            }
        }
    }
}

} // namespace

std::vector<std::pair<double, LifecycleState>> lifecycle_trace(const std::array<NodeId, 3>& triple,
                                                               const SimplexDataset& ds) {
    std::array<NodeId, 3> t = triple;
    std::sort(t.begin(), t.end());
    std::vector<std::pair<double, LifecycleState>> out;
    std::uint64_t cuv = 0, cuw = 0, cvw = 0;
    LifecycleState state = LifecycleState::Empty;
    for (const auto& s : ds.simplices()) {
        const bool has_u = std::binary_search(s.nodes.begin(), s.nodes.end(), t[0]);
        const bool has_v = std::binary_search(s.nodes.begin(), s.nodes.end(), t[1]);
        const bool has_w = std::binary_search(s.nodes.begin(), s.nodes.end(), t[2]);
        const int hits = has_u + has_v + has_w;
        if (hits < 2) continue;
        if (hits == 3) {
            out.emplace_back(s.time, LifecycleState::Closed);
            return out;
        }
        if (has_u && has_v) ++cuv;
        else if (has_u && has_w) ++cuw;
        else ++cvw;
        const LifecycleState next = state_from_pair_counts(cuv, cuw, cvw);
        if (next != state) {
            state = next;
            out.emplace_back(s.time, state);
        }
    }
    return out;
}

namespace {

// classify a triple's train configuration into reference numbers 1..10
int classify3_ref(const ProjectedGraph& g, NodeId u, NodeId v, NodeId w) {
    const std::uint32_t wuv = g.weight(u, v);
    const std::uint32_t wuw = g.weight(u, w);
    const std::uint32_t wvw = g.weight(v, w);
    const int edges = (wuv > 0) + (wuw > 0) + (wvw > 0);
    std::array<int, 3> s{};
    int p = 0;
    for (std::uint32_t x : {wuv, wuw, wvw}) {
        if (x > 0) s[p++] = x >= 2 ? 2 : 1;
    }
    std::sort(s.begin(), s.begin() + edges);
    switch (edges) {
        case 0: return 1;
        case 1: return s[0] == 1 ? 2 : 3;
        case 2:
            if (s[0] == 1 && s[1] == 1) return 4;
            if (s[0] == 1) return 5;
            return 6;
        default:
            return 7 + tri_strength_index(s[0], s[1], s[2]);
    }
}

// classify a 4-set's train configuration into reference numbers 1..27;
// returns 0 when the four nodes contain no train triangle (outside the 27)
int classify4_ref(const ProjectedGraph& g, const CooccurrenceIndex& cooc,
                  const std::array<NodeId, 4>& q) {
    const bool e01 = g.weight(q[0], q[1]) > 0;
    const bool e02 = g.weight(q[0], q[2]) > 0;
    const bool e03 = g.weight(q[0], q[3]) > 0;
    const bool e12 = g.weight(q[1], q[2]) > 0;
    const bool e13 = g.weight(q[1], q[3]) > 0;
    const bool e23 = g.weight(q[2], q[3]) > 0;
    const int edges = e01 + e02 + e03 + e12 + e13 + e23;
    std::vector<int> ts;
    if (e01 && e02 && e12) ts.push_back(cooc.triple_count(q[0], q[1], q[2]));
    if (e01 && e03 && e13) ts.push_back(cooc.triple_count(q[0], q[1], q[3]));
    if (e02 && e03 && e23) ts.push_back(cooc.triple_count(q[0], q[2], q[3]));
    if (e12 && e13 && e23) ts.push_back(cooc.triple_count(q[1], q[2], q[3]));
    if (ts.empty()) return 0;
    std::sort(ts.begin(), ts.end());
    if (edges == 3) return 1 + ts[0];
    if (edges == 4) return 4 + ts[0];
    if (edges == 5) return 7 + pair_index(ts[0], ts[1]);
    return 13 + quad_strength_index(ts[0], ts[1], ts[2], ts[3]);
}

template <std::size_t K>
struct SetKey {
    std::array<NodeId, K> v;
    bool operator==(const SetKey&) const = default;
};

template <std::size_t K>
struct SetKeyHash {
    std::size_t operator()(const SetKey<K>& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (NodeId x : k.v) h = splitmix64(h ^ x);
        return h;
    }
};

} // namespace

ClosureTable closure_probabilities(const DatasetSplit& split, int arity) {
    if (arity != 3 && arity != 4) throw DataError("closure_probabilities: arity must be 3 or 4");

    const auto g = build_projected_graph(split.train);
    const auto cooc = CooccurrenceIndex::build(split.train, arity == 4);
    const auto active = split.train.active_mask();

    ClosureTable table;
    table.arity = arity;
    const int n_refs = arity == 3 ? 10 : 27;
    std::vector<std::int64_t> instances(n_refs + 1, 0), closures(n_refs + 1, 0);

    if (arity == 3) {
        const auto c3 = count_configs3(g, cooc);
        for (int ref = 1; ref <= 10; ++ref) instances[ref] = config3_count(c3, ref);

        std::unordered_set<SetKey<3>, SetKeyHash<3>> credited;
        for (const auto& s : split.test.simplices()) {
            const auto& v = s.nodes;
            if (v.size() < 3) continue;
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (std::size_t j = i + 1; j < v.size(); ++j) {
                    for (std::size_t k = j + 1; k < v.size(); ++k) {
                        if (!active[v[i]] || !active[v[j]] || !active[v[k]]) continue;
                        if (cooc.triple_closed(v[i], v[j], v[k])) continue; // closed in train
                        const SetKey<3> key{{v[i], v[j], v[k]}};
                        if (!credited.insert(key).second) continue;
                        ++closures[classify3_ref(g, v[i], v[j], v[k])];
                    }
                }
            }
        }
    } else {
        const auto c4 = count_configs4(g, cooc);
        for (int ref = 1; ref <= 27; ++ref) instances[ref] = config4_count(c4, ref);

        std::unordered_set<SetKey<4>, SetKeyHash<4>> credited;
        for (const auto& s : split.test.simplices()) {
            const auto& v = s.nodes;
            if (v.size() < 4) continue;
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (std::size_t j = i + 1; j < v.size(); ++j) {
                    for (std::size_t k = j + 1; k < v.size(); ++k) {
                        for (std::size_t l = k + 1; l < v.size(); ++l) {
                            if (!active[v[i]] || !active[v[j]] || !active[v[k]] || !active[v[l]]) continue;
                            if (cooc.quad_closed(v[i], v[j], v[k], v[l])) continue;
                            const SetKey<4> key{{v[i], v[j], v[k], v[l]}};
                            if (!credited.insert(key).second) continue;
                            const int ref = classify4_ref(g, cooc, {v[i], v[j], v[k], v[l]});
                            if (ref > 0) ++closures[ref];
                        }
                    }
                }
            }
        }
    }

    for (int ref = 1; ref <= n_refs; ++ref) {
        ClosureRow row;
        row.ref = ref;
        row.symbol = arity == 3 ? config3_symbol(ref) : config4_symbol(ref);
        row.instances = instances[ref];
        row.closures = closures[ref];
        row.defined = instances[ref] > 0;
        row.probability = row.defined
                              ? static_cast<double>(closures[ref]) / static_cast<double>(instances[ref])
                              : 0.0;
        row.low_support = instances[ref] < 25;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<std::pair<double, ClosureTable>> closure_over_time(const SimplexDataset& ds,
                                                               const std::vector<double>& x_grid,
                                                               int arity) {
    std::vector<std::pair<double, ClosureTable>> out;
    for (double x : x_grid) {
        const auto filtered = prefix_filter(ds, x);
        const auto split = temporal_split(filtered, 0.8);
        out.emplace_back(x, closure_probabilities(split, arity));
    }
    return out;
}

OverlapCensus temporal_overlap_census(const SimplexDataset& ds) {
    const auto g = build_projected_graph(ds);
    const auto cooc = CooccurrenceIndex::build(ds);

    // active interval per edge, aligned with the upper-triangle CSR slots
    std::unordered_map<std::uint64_t, ActiveInterval> intervals;
    auto edge_key = [](NodeId u, NodeId v) {
        return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    };
    for (const auto& s : ds.simplices()) {
        const auto& v = s.nodes;
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                auto [it, inserted] = intervals.try_emplace(edge_key(v[i], v[j]),
                                                            ActiveInterval{s.time, s.time});
                if (!inserted) {
                    it->second.lo = std::min(it->second.lo, s.time);
                    it->second.hi = std::max(it->second.hi, s.time);
                }
            }
        }
    }

    OverlapCensus census;
    for_each_triangle(g, [&](const std::array<NodeId, 3>& t, const std::array<std::uint32_t, 3>&) {
        if (cooc.triple_closed(t[0], t[1], t[2])) return;
        const ActiveInterval a = intervals.at(edge_key(t[0], t[1]));
        const ActiveInterval b = intervals.at(edge_key(t[0], t[2]));
        const ActiveInterval c = intervals.at(edge_key(t[1], t[2]));
        const int overlaps = a.overlaps(b) + a.overlaps(c) + b.overlaps(c);
        ++census.counts[overlaps];
        ++census.open_triangles;
    });
    if (census.open_triangles > 0) {
        for (int i = 0; i < 4; ++i) {
            census.fractions[i] =
                static_cast<double>(census.counts[i]) / static_cast<double>(census.open_triangles);
        }
    }
    return census;
}

} // namespace hosim
