#include <doctest.h>

#include <map>

#include "hosim/closure.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hosim;

TEST_CASE("lifecycle walks edge growth to closure") {
    const auto ds = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[2,3],"time":3}
{"nodes":[1,2,3],"time":4}
)");
    const auto trace = lifecycle_trace({0, 1, 2}, ds);
    REQUIRE(trace.size() == 4);
    CHECK(trace[0].second == LifecycleState::OneEdgeWeak);
    CHECK(trace[1].second == LifecycleState::TwoEdges11);
    CHECK(trace[2].second == LifecycleState::OpenTri111);
    CHECK(trace[3].second == LifecycleState::Closed);
    CHECK(trace[3].first == 4.0);
}

TEST_CASE("lifecycle can close directly from empty") {
    const auto ds = testing::from_jsonl_text(R"({"nodes":[1,2,3],"time":1})");
    const auto trace = lifecycle_trace({0, 1, 2}, ds);
    REQUIRE(trace.size() == 1);
    CHECK(trace[0].second == LifecycleState::Closed);
}

TEST_CASE("lifecycle records tie strengthening") {
    const auto ds = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,2],"time":2}
)");
    const auto trace = lifecycle_trace({0, 1, 2}, ds);
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].second == LifecycleState::OneEdgeWeak);
    CHECK(trace[1].second == LifecycleState::OneEdgeStrong);
}

TEST_CASE("lifecycle states are monotone and closure is absorbing") {
    Rng rng(71);
    const auto ds = testing::random_dataset(rng, 12, 50, 5);
    for (int t = 0; t < 30; ++t) {
        NodeId a = rng.below(12), b = rng.below(12), c = rng.below(12);
        if (a == b || b == c || a == c) continue;
        const auto trace = lifecycle_trace({a, b, c}, ds);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            CHECK(static_cast<int>(trace[i].second) > static_cast<int>(trace[i - 1].second));
            CHECK(trace[i].first >= trace[i - 1].first);
            CHECK(trace[i - 1].second != LifecycleState::Closed);
        }
    }
}

TEST_CASE("closure probability of a wedge-free toy split") {
    const auto ds = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[2,3],"time":3}
{"nodes":[1,2,3],"time":4}
)");
    const auto split = temporal_split(ds, 0.75);
    REQUIRE(split.train.size() == 3);
    const auto table = closure_probabilities(split, 3);
    const auto& open_weak = table.rows[6]; // ref 7 = weak open triangle
    CHECK(open_weak.instances == 1);
    CHECK(open_weak.closures == 1);
    CHECK(open_weak.probability == 1.0);
    CHECK(open_weak.low_support);
}

TEST_CASE("empty test window means zero closure probability") {
    const auto ds = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[2,3],"time":3}
{"nodes":[4,5],"time":4}
)");
    const auto split = temporal_split(ds, 0.75);
    const auto table = closure_probabilities(split, 3);
    CHECK(table.rows[6].instances == 1);
    CHECK(table.rows[6].closures == 0);
    CHECK(table.rows[6].probability == 0.0);
}

namespace {

// direct oracle: classify every train triple, then test closure by scanning
std::map<int, std::pair<std::int64_t, std::int64_t>> brute_closure3(const DatasetSplit& split) {
    const auto g = build_projected_graph(split.train);
    const auto active = split.train.active_mask();
    std::map<int, std::pair<std::int64_t, std::int64_t>> table; // ref -> (n, x)
    for (int ref = 1; ref <= 10; ++ref) table[ref] = {0, 0};

    std::vector<NodeId> nodes;
    for (std::size_t u = 0; u < active.size(); ++u) {
        if (active[u]) nodes.push_back(static_cast<NodeId>(u));
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            for (std::size_t k = j + 1; k < nodes.size(); ++k) {
                const NodeId a = nodes[i], b = nodes[j], c = nodes[k];
                if (testing::naive_triple_cocount(split.train, a, b, c) > 0) continue;
                const std::uint32_t wab = g.weight(a, b), wac = g.weight(a, c), wbc = g.weight(b, c);
                const int edges = (wab > 0) + (wac > 0) + (wbc > 0);
                std::vector<int> s;
                for (std::uint32_t w : {wab, wac, wbc}) {
                    if (w > 0) s.push_back(w >= 2 ? 2 : 1);
                }
                std::sort(s.begin(), s.end());
                int ref = 0;
                if (edges == 0) ref = 1;
                else if (edges == 1) ref = s[0] == 1 ? 2 : 3;
                else if (edges == 2) ref = s[0] == 1 ? (s[1] == 1 ? 4 : 5) : 6;
                else ref = 7 + (s[0] - 1) + (s[1] - 1) + (s[2] - 1);
                ++table[ref].first;
                if (testing::naive_triple_cocount(split.test, a, b, c) > 0) ++table[ref].second;
            }
        }
    }
    return table;
}

} // namespace

TEST_CASE("closure table equals the per-triple brute force on synthetic streams") {
    Rng rng(201);
    for (int trial = 0; trial < 5; ++trial) {
        const auto ds = testing::random_dataset(rng, 14, 200, 5);
        const auto split = temporal_split(ds, 0.8);
        const auto table = closure_probabilities(split, 3);
        const auto oracle = brute_closure3(split);
        CAPTURE(trial);
        std::int64_t total_x = 0;
        for (const auto& row : table.rows) {
            CHECK(row.instances == oracle.at(row.ref).first);
            CHECK(row.closures == oracle.at(row.ref).second);
            total_x += row.closures;
        }
        // each closure is attributed exactly once
        std::int64_t distinct_closures = 0;
        for (const auto& [ref, nx] : oracle) distinct_closures += nx.second;
        CHECK(total_x == distinct_closures);
    }
}

TEST_CASE("four-node closure attribution stays within the 27 configurations") {
    Rng rng(77);
    const auto ds = testing::random_dataset(rng, 16, 220, 6);
    const auto split = temporal_split(ds, 0.8);
    const auto table = closure_probabilities(split, 4);
    REQUIRE(table.rows.size() == 27);
    const auto c4 = count_configs4(build_projected_graph(split.train),
                                   CooccurrenceIndex::build(split.train, true));
    for (const auto& row : table.rows) {
        CHECK(row.instances == config4_count(c4, row.ref));
        CHECK(row.closures >= 0);
        CHECK(row.closures <= std::max<std::int64_t>(row.instances, 0));
    }
}

TEST_CASE("closure_over_time at X=1 reproduces the direct table") {
    Rng rng(307);
    const auto ds = testing::random_dataset(rng, 15, 150, 4);
    const auto direct = closure_probabilities(temporal_split(ds, 0.8), 3);
    const auto tables = closure_over_time(ds, {0.4, 1.0}, 3);
    REQUIRE(tables.size() == 2);
    CHECK(tables[1].first == 1.0);
    for (std::size_t i = 0; i < direct.rows.size(); ++i) {
        CHECK(tables[1].second.rows[i].instances == direct.rows[i].instances);
        CHECK(tables[1].second.rows[i].closures == direct.rows[i].closures);
    }
}

TEST_CASE("overlap census on hand-built interval patterns") {
    // three disjoint activity windows: pairs at times far apart
    const auto zero = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,2],"time":2}
{"nodes":[1,3],"time":3}
{"nodes":[1,3],"time":4}
{"nodes":[2,3],"time":5}
{"nodes":[2,3],"time":6}
)");
    const auto c0 = temporal_overlap_census(zero);
    CHECK(c0.open_triangles == 1);
    CHECK(c0.counts[0] == 1);

    const auto three = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[2,3],"time":3}
{"nodes":[1,2],"time":10}
{"nodes":[1,3],"time":9}
{"nodes":[2,3],"time":8}
)");
    const auto c3 = temporal_overlap_census(three);
    CHECK(c3.open_triangles == 1);
    CHECK(c3.counts[3] == 1);
    CHECK(c3.fractions[3] == 1.0);
}

TEST_CASE("full pairwise overlap admits a common moment") {
    Rng rng(99);
    const auto ds = testing::random_dataset(rng, 15, 120, 4);
    // rebuild the intervals the census uses and assert the 1-D Helly property
    std::map<std::pair<NodeId, NodeId>, ActiveInterval> intervals;
    for (const auto& s : ds.simplices()) {
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < s.nodes.size(); ++j) {
                const auto key = std::make_pair(s.nodes[i], s.nodes[j]);
                auto it = intervals.find(key);
                if (it == intervals.end()) intervals.emplace(key, ActiveInterval{s.time, s.time});
                else {
                    it->second.lo = std::min(it->second.lo, s.time);
                    it->second.hi = std::max(it->second.hi, s.time);
                }
            }
        }
    }
    const auto cooc = CooccurrenceIndex::build(ds);
    const auto g = build_projected_graph(ds);
    std::int64_t full_overlap_triangles = 0;
    for (const auto& rec : enumerate_triangles(g)) {
        if (cooc.triple_closed(rec.nodes[0], rec.nodes[1], rec.nodes[2])) continue;
        const auto a = intervals.at({rec.nodes[0], rec.nodes[1]});
        const auto b = intervals.at({rec.nodes[0], rec.nodes[2]});
        const auto c = intervals.at({rec.nodes[1], rec.nodes[2]});
        if (a.overlaps(b) && a.overlaps(c) && b.overlaps(c)) {
            ++full_overlap_triangles;
            const double lo = std::max({a.lo, b.lo, c.lo});
            const double hi = std::min({a.hi, b.hi, c.hi});
            CHECK(lo <= hi);
        }
    }
    const auto census = temporal_overlap_census(ds);
    CHECK(census.counts[3] == full_overlap_triangles);
}
