#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "hosim/dataset.hpp"
#include "hosim/rng.hpp"

namespace hosim::testing {

inline SimplexDataset from_jsonl_text(const std::string& text) {
    std::istringstream in(text);
    return parse_jsonl(in, "<fixture>");
}

// The bundled nine-node example: one 4-node simplex, three 3-node
// simplices, four pairs. Seven closed triangles and the open {1,5,8}.
inline SimplexDataset fig1_dataset() {
    return from_jsonl_text(R"(
{"nodes":[1,2,3,4],"time":1}
{"nodes":[1,3,5],"time":2}
{"nodes":[1,6],"time":3}
{"nodes":[2,6],"time":4}
{"nodes":[1,7,8],"time":5}
{"nodes":[7,9],"time":6}
{"nodes":[5,8],"time":7}
{"nodes":[1,2,6],"time":8}
)");
}

// Eight-node variant: same trios, pairs {1,5},{1,8},{5,8},{2,3}. Same
// triangle census as fig1_dataset.
inline SimplexDataset fig1_variant_dataset() {
    return from_jsonl_text(R"(
{"nodes":[1,2,3,4],"time":1}
{"nodes":[1,3,5],"time":2}
{"nodes":[1,2,6],"time":3}
{"nodes":[1,7,8],"time":4}
{"nodes":[1,5],"time":5}
{"nodes":[1,8],"time":6}
{"nodes":[5,8],"time":7}
{"nodes":[2,3],"time":8}
)");
}

// Random dataset with mixed simplex sizes and repeated simplices so that
// edge weights climb to ~5. Labels are identity.
inline SimplexDataset random_dataset(Rng& rng, int n_nodes, int n_simplices, int max_size = 5) {
    std::vector<Simplex> out;
    double t = 0.0;
    while (static_cast<int>(out.size()) < n_simplices) {
        const int k = 1 + static_cast<int>(rng.below(max_size));
        Simplex s;
        for (int i = 0; i < k; ++i) s.nodes.push_back(static_cast<NodeId>(rng.below(n_nodes)));
        s.time = t;
        t += 1.0;
        out.push_back(s);
        // repeat some simplices to build up multiplicity
        while (static_cast<int>(out.size()) < n_simplices && rng.uniform01() < 0.25) {
            Simplex dup = out.back();
            dup.time = t;
            t += 1.0;
            out.push_back(dup);
        }
    }
    return SimplexDataset::from_simplices(std::move(out), n_nodes);
}

// Planted prediction stream: `strong` open triangles whose three edges
// repeat (weight 2) and `weak` ones seen once, all on disjoint node sets.
// Strong ones close in the test window with probability p_strong, weak with
// p_weak. Filler pairs pad the stream so the 0.8 time-percentile lands
// exactly on the train/test boundary.
inline SimplexDataset planted_stream(std::uint64_t seed, int strong = 100, int weak = 900,
                                     double p_strong = 0.5, double p_weak = 0.05) {
    Rng rng(seed);
    std::vector<Simplex> out;
    double t = 0.0;
    NodeId next = 0;
    std::vector<std::array<NodeId, 3>> triples;
    std::vector<bool> is_strong;
    for (int i = 0; i < strong + weak; ++i) {
        const std::array<NodeId, 3> tri{next, static_cast<NodeId>(next + 1),
                                        static_cast<NodeId>(next + 2)};
        next += 3;
        triples.push_back(tri);
        is_strong.push_back(i < strong);
        const int reps = i < strong ? 2 : 1;
        for (int r = 0; r < reps; ++r) {
            out.push_back(Simplex{{tri[0], tri[1]}, t++});
            out.push_back(Simplex{{tri[0], tri[2]}, t++});
            out.push_back(Simplex{{tri[1], tri[2]}, t++});
        }
    }
    const std::int64_t train_count = static_cast<std::int64_t>(out.size());
    // choose N with ceil(0.8 N) == train_count
    const std::int64_t total = (train_count * 5) / 4;
    std::int64_t test_budget = total - train_count;

    for (std::size_t i = 0; i < triples.size() && test_budget > 0; ++i) {
        const double p = is_strong[i] ? p_strong : p_weak;
        if (rng.uniform01() < p) {
            out.push_back(Simplex{{triples[i][0], triples[i][1], triples[i][2]}, t++});
            --test_budget;
        }
    }
    const NodeId f1 = next, f2 = next + 1;
    while (test_budget-- > 0) out.push_back(Simplex{{f1, f2}, t++});
    return SimplexDataset::from_simplices(std::move(out), f2 + 1);
}

} // namespace hosim::testing
