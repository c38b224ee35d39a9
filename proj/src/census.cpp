#include "hosim/census.hpp"

#include <algorithm>
#include <unordered_map>

namespace hosim {

const std::array<std::array<int, 3>, 4> kTriStrengthTuples{{{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}}};
const std::array<std::array<int, 2>, 6> kPairTuples{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
const std::array<std::array<int, 4>, 15> kQuadStrengthTuples{{
    {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 2}, {0, 0, 1, 1}, {0, 0, 1, 2},
    {0, 0, 2, 2}, {0, 1, 1, 1}, {0, 1, 1, 2}, {0, 1, 2, 2}, {0, 2, 2, 2},
    {1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 2}, {1, 2, 2, 2}, {2, 2, 2, 2},
}};

int tri_strength_index(int i, int j, int k) {
    // sorted (i<=j<=k) over {1,2}: number of strong edges identifies the bin
    return (i - 1) + (j - 1) + (k - 1);
}

int pair_index(int i, int j) {
    for (std::size_t t = 0; t < kPairTuples.size(); ++t) {
        if (kPairTuples[t][0] == i && kPairTuples[t][1] == j) return static_cast<int>(t);
    }
    throw NumericError("pair_index: tuple not sorted or out of range");
}

int quad_strength_index(int i, int j, int k, int l) {
    for (std::size_t t = 0; t < kQuadStrengthTuples.size(); ++t) {
        const auto& q = kQuadStrengthTuples[t];
        if (q[0] == i && q[1] == j && q[2] == k && q[3] == l) return static_cast<int>(t);
    }
    throw NumericError("quad_strength_index: tuple not sorted or out of range");
}

namespace {

std::int64_t choose2(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
std::int64_t choose3(std::int64_t n) { return n < 3 ? 0 : n * (n - 1) / 2 * (n - 2) / 3; }

void require_nonnegative(std::int64_t v, const char* what) {
    if (v < 0) {
        throw NumericError(std::string("census internal consistency: ") + what +
                           " came out negative (" + std::to_string(v) + ")");
    }
}

int edge_strength(std::uint32_t w) { return w >= 2 ? 2 : 1; }

} // namespace

Config3Counts count_configs3(const ProjectedGraph& g, const CooccurrenceIndex& cooc) {
    Config3Counts c;
    for_each_triangle(g, [&](const std::array<NodeId, 3>& nodes, const std::array<std::uint32_t, 3>& w) {
        std::array<int, 3> s{edge_strength(w[0]), edge_strength(w[1]), edge_strength(w[2])};
        std::sort(s.begin(), s.end());
        const int idx = tri_strength_index(s[0], s[1], s[2]);
        ++c.total_tri[idx];
        if (!cooc.triple_closed(nodes[0], nodes[1], nodes[2])) ++c.open_tri[idx];
    });

    // wedges: non-induced 2-edge stars minus the ones sitting in triangles
    std::int64_t sum_c2_d1 = 0, sum_c2_d2 = 0, sum_d1d2 = 0;
    for (std::int64_t u = 0; u < g.num_ids; ++u) {
        const std::int64_t d1 = g.deg_weak[u];
        const std::int64_t d2 = g.deg_strong[u];
        sum_c2_d1 += choose2(d1);
        sum_c2_d2 += choose2(d2);
        sum_d1d2 += d1 * d2;
    }
    const auto& T = c.total_tri;
    c.w11 = sum_c2_d1 - 3 * T[0] - T[1];
    c.w22 = sum_c2_d2 - 3 * T[3] - T[2];
    c.w12 = sum_d1d2 - 2 * T[1] - 2 * T[2];
    require_nonnegative(c.w11, "w11");
    require_nonnegative(c.w12, "w12");
    require_nonnegative(c.w22, "w22");

    // single-edge configurations by inclusion-exclusion over n-2 third nodes
    const std::int64_t n = g.num_active;
    c.eta1 = g.m_weak * (n - 2) - 2 * c.w11 - c.w12 - 3 * T[0] - 2 * T[1] - T[2];
    c.eta2 = g.m_strong * (n - 2) - 2 * c.w22 - c.w12 - 3 * T[3] - 2 * T[2] - T[1];
    require_nonnegative(c.eta1, "eta1");
    require_nonnegative(c.eta2, "eta2");

    c.empty = choose3(n) - c.eta1 - c.eta2 - c.w11 - c.w12 - c.w22 - T[0] - T[1] - T[2] - T[3];
    require_nonnegative(c.empty, "empty");
    return c;
}

Config4Counts count_configs4(const ProjectedGraph& g, const CooccurrenceIndex& cooc) {
    if (!cooc.has_quads()) {
        throw DataError("count_configs4 needs a CooccurrenceIndex built with quad tracking");
    }
    Config4Counts c;

    // One triangle pass: per-strength totals |T_s|, their degree sums, and
    // the per-edge strength counters Y^(s).
    std::array<std::int64_t, 3> tri_count{};  // |T_s|
    std::array<std::int64_t, 3> tri_degsum{}; // sum over T_s of d_u+d_v+d_w
    std::unordered_map<std::uint64_t, std::array<std::int64_t, 3>> y; // edge (u<v) -> Y^(0..2)
    auto edge_key = [](NodeId u, NodeId v) {
        return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    };
    for_each_triangle(g, [&](const std::array<NodeId, 3>& t, const std::array<std::uint32_t, 3>&) {
        const int s = cooc.triple_count(t[0], t[1], t[2]);
        ++tri_count[s];
        tri_degsum[s] += g.degree(t[0]) + g.degree(t[1]) + g.degree(t[2]);
        y[edge_key(t[0], t[1])][s] += 1;
        y[edge_key(t[0], t[2])][s] += 1;
        y[edge_key(t[1], t[2])][s] += 1;
    });

    // 4-clique pass: tetrahedral wireframes by the four triangle strengths.
    for_each_four_clique(g, [&](const std::array<NodeId, 4>& q) {
        std::array<int, 4> s{
            cooc.triple_count(q[0], q[1], q[2]),
            cooc.triple_count(q[0], q[1], q[3]),
            cooc.triple_count(q[0], q[2], q[3]),
            cooc.triple_count(q[1], q[2], q[3]),
        };
        std::sort(s.begin(), s.end());
        const int idx = quad_strength_index(s[0], s[1], s[2], s[3]);
        ++c.total_tetra[idx];
        if (!cooc.quad_closed(q[0], q[1], q[2], q[3])) ++c.open_tetra[idx];
    });

    // five-edge configurations: two triangles sharing an edge. Non-induced
    // counts from Y, then subtract the pairs of faces inside tetrahedra.
    std::array<std::int64_t, 6> phi{};
    for (const auto& [key, ys] : y) {
        (void)key;
        for (int s = 0; s <= 2; ++s) phi[pair_index(s, s)] += choose2(ys[s]);
        phi[pair_index(0, 1)] += ys[0] * ys[1];
        phi[pair_index(0, 2)] += ys[0] * ys[2];
        phi[pair_index(1, 2)] += ys[1] * ys[2];
    }
    for (std::size_t t = 0; t < kQuadStrengthTuples.size(); ++t) {
        const auto& s = kQuadStrengthTuples[t];
        const std::int64_t tau = c.total_tetra[t];
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                phi[pair_index(s[a], s[b])] -= tau; // s sorted, so s[a] <= s[b]
            }
        }
    }
    for (int i = 0; i < 6; ++i) require_nonnegative(phi[i], "phi");
    c.five_edge = phi;

    // incidence totals of strength-s triangles in 5- and 6-edge patterns
    std::array<std::int64_t, 3> a_s{}, b_s{};
    for (std::size_t t = 0; t < kPairTuples.size(); ++t) {
        for (int s = 0; s <= 2; ++s) {
            const int hits = (kPairTuples[t][0] == s) + (kPairTuples[t][1] == s);
            a_s[s] += hits * phi[t];
        }
    }
    for (std::size_t t = 0; t < kQuadStrengthTuples.size(); ++t) {
        for (int s = 0; s <= 2; ++s) {
            int hits = 0;
            for (int p = 0; p < 4; ++p) hits += (kQuadStrengthTuples[t][p] == s);
            b_s[s] += hits * c.total_tetra[t];
        }
    }

    // triangle + pendant edge, then triangle + isolated node
    const std::int64_t n = g.num_active;
    for (int s = 0; s <= 2; ++s) {
        const std::int64_t rho = (tri_degsum[s] - 6 * tri_count[s]) - 2 * a_s[s] - 3 * b_s[s];
        require_nonnegative(rho, "rho");
        c.tri_pendant[s] = rho;
        const std::int64_t pi = tri_count[s] * (n - 3) - rho - a_s[s] - b_s[s];
        require_nonnegative(pi, "pi");
        c.tri_iso[s] = pi;
    }
    return c;
}

namespace {

struct BruteContext {
    const ProjectedGraph g;
    const CooccurrenceIndex cooc;
    std::vector<NodeId> nodes; // active nodes
};

BruteContext make_brute_context(const SimplexDataset& ds, std::int64_t node_cap, bool quads) {
    const auto active = ds.active_mask();
    std::vector<NodeId> nodes;
    for (std::size_t u = 0; u < active.size(); ++u) {
        if (active[u]) nodes.push_back(static_cast<NodeId>(u));
    }
    if (static_cast<std::int64_t>(nodes.size()) > node_cap) {
        throw DataError("brute_force_configs: " + std::to_string(nodes.size()) +
                        " active nodes exceed the cap of " + std::to_string(node_cap));
    }
    return BruteContext{build_projected_graph(ds), CooccurrenceIndex::build(ds, quads), std::move(nodes)};
}

} // namespace

Config3Counts brute_force_configs3(const SimplexDataset& ds, std::int64_t node_cap) {
    const auto ctx = make_brute_context(ds, node_cap, false);
    Config3Counts c;
    const auto& nodes = ctx.nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const std::uint32_t wij = ctx.g.weight(nodes[i], nodes[j]);
            for (std::size_t k = j + 1; k < nodes.size(); ++k) {
                const std::uint32_t wik = ctx.g.weight(nodes[i], nodes[k]);
                const std::uint32_t wjk = ctx.g.weight(nodes[j], nodes[k]);
                const int edges = (wij > 0) + (wik > 0) + (wjk > 0);
                if (edges == 0) {
                    ++c.empty;
                } else if (edges == 1) {
                    const std::uint32_t w = wij + wik + wjk; // only one is nonzero
                    (edge_strength(w) == 1 ? c.eta1 : c.eta2)++;
                } else if (edges == 2) {
                    std::array<int, 2> s{};
                    int p = 0;
                    for (std::uint32_t w : {wij, wik, wjk}) {
                        if (w > 0) s[p++] = edge_strength(w);
                    }
                    std::sort(s.begin(), s.end());
                    if (s[0] == 1 && s[1] == 1) ++c.w11;
                    else if (s[0] == 1) ++c.w12;
                    else ++c.w22;
                } else {
                    std::array<int, 3> s{edge_strength(wij), edge_strength(wik), edge_strength(wjk)};
                    std::sort(s.begin(), s.end());
                    const int idx = tri_strength_index(s[0], s[1], s[2]);
                    ++c.total_tri[idx];
                    if (!ctx.cooc.triple_closed(nodes[i], nodes[j], nodes[k])) ++c.open_tri[idx];
                }
            }
        }
    }
    return c;
}

Config4Counts brute_force_configs4(const SimplexDataset& ds, std::int64_t node_cap) {
    const auto ctx = make_brute_context(ds, node_cap, true);
    Config4Counts c;
    const auto& nodes = ctx.nodes;
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                for (std::size_t l = k + 1; l < n; ++l) {
                    const std::array<NodeId, 4> q{nodes[i], nodes[j], nodes[k], nodes[l]};
                    // six pair weights, four candidate triangles
                    const bool e01 = ctx.g.weight(q[0], q[1]) > 0;
                    const bool e02 = ctx.g.weight(q[0], q[2]) > 0;
                    const bool e03 = ctx.g.weight(q[0], q[3]) > 0;
                    const bool e12 = ctx.g.weight(q[1], q[2]) > 0;
                    const bool e13 = ctx.g.weight(q[1], q[3]) > 0;
                    const bool e23 = ctx.g.weight(q[2], q[3]) > 0;
                    const int edges = e01 + e02 + e03 + e12 + e13 + e23;
                    std::vector<int> tri_strengths;
                    if (e01 && e02 && e12) tri_strengths.push_back(ctx.cooc.triple_count(q[0], q[1], q[2]));
                    if (e01 && e03 && e13) tri_strengths.push_back(ctx.cooc.triple_count(q[0], q[1], q[3]));
                    if (e02 && e03 && e23) tri_strengths.push_back(ctx.cooc.triple_count(q[0], q[2], q[3]));
                    if (e12 && e13 && e23) tri_strengths.push_back(ctx.cooc.triple_count(q[1], q[2], q[3]));
                    if (tri_strengths.empty()) continue; // no triangle: outside the 27
                    std::sort(tri_strengths.begin(), tri_strengths.end());
                    if (edges == 3) {
                        ++c.tri_iso[tri_strengths[0]];
                    } else if (edges == 4) {
                        ++c.tri_pendant[tri_strengths[0]];
                    } else if (edges == 5) {
                        ++c.five_edge[pair_index(tri_strengths[0], tri_strengths[1])];
                    } else {
                        const int idx = quad_strength_index(tri_strengths[0], tri_strengths[1],
                                                            tri_strengths[2], tri_strengths[3]);
                        ++c.total_tetra[idx];
                        if (!ctx.cooc.quad_closed(q[0], q[1], q[2], q[3])) ++c.open_tetra[idx];
                    }
                }
            }
        }
    }
    return c;
}

std::string config3_symbol(int ref) {
    switch (ref) {
        case 1: return "empty";
        case 2: return "eta_1";
        case 3: return "eta_2";
        case 4: return "w_11";
        case 5: return "w_12";
        case 6: return "w_22";
        case 7: return "o_111";
        case 8: return "o_112";
        case 9: return "o_122";
        case 10: return "o_222";
    }
    throw DataError("config3_symbol: reference number out of range");
}

std::int64_t config3_count(const Config3Counts& c, int ref) {
    switch (ref) {
        case 1: return c.empty;
        case 2: return c.eta1;
        case 3: return c.eta2;
        case 4: return c.w11;
        case 5: return c.w12;
        case 6: return c.w22;
        case 7: return c.open_tri[0];
        case 8: return c.open_tri[1];
        case 9: return c.open_tri[2];
        case 10: return c.open_tri[3];
    }
    throw DataError("config3_count: reference number out of range");
}

std::string config4_symbol(int ref) {
    if (ref >= 1 && ref <= 3) return "pi_" + std::to_string(ref - 1);
    if (ref >= 4 && ref <= 6) return "rho_" + std::to_string(ref - 4);
    if (ref >= 7 && ref <= 12) {
        const auto& p = kPairTuples[ref - 7];
        return "phi_" + std::to_string(p[0]) + std::to_string(p[1]);
    }
    if (ref >= 13 && ref <= 27) {
        const auto& q = kQuadStrengthTuples[ref - 13];
        return "q_" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]) +
               std::to_string(q[3]);
    }
    throw DataError("config4_symbol: reference number out of range");
}

std::int64_t config4_count(const Config4Counts& c, int ref) {
    if (ref >= 1 && ref <= 3) return c.tri_iso[ref - 1];
    if (ref >= 4 && ref <= 6) return c.tri_pendant[ref - 4];
    if (ref >= 7 && ref <= 12) return c.five_edge[ref - 7];
    if (ref >= 13 && ref <= 27) return c.open_tetra[ref - 13];
    throw DataError("config4_count: reference number out of range");
}

} // namespace hosim
