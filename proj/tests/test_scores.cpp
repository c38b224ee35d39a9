#include <doctest.h>

#include <cmath>
#include <set>

#include "hosim/scores.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hosim;

TEST_CASE("generalized mean closed forms") {
    CHECK(generalized_mean({2, 2, 2}, 3.7) == 2.0);
    CHECK(generalized_mean({1, 4, 16}, 0.0) == doctest::Approx(4.0));
    CHECK(generalized_mean({1, 2, 3}, -1.0) == doctest::Approx(18.0 / 11.0));
    CHECK(generalized_mean({1, 2, 3}, 1.0) == doctest::Approx(2.0));
    CHECK(generalized_mean({1, 2, 5}, std::numeric_limits<double>::infinity()) == 5.0);
    CHECK(generalized_mean({1, 2, 5}, -std::numeric_limits<double>::infinity()) == 1.0);
    CHECK_THROWS_AS(generalized_mean({0, 1, 2}, 1.0), DataError);
}

TEST_CASE("generalized mean is monotone in p and in each weight") {
    Rng rng(404);
    for (int trial = 0; trial < 300; ++trial) {
        const std::array<double, 3> w{1.0 + static_cast<double>(rng.below(9)),
                                      1.0 + static_cast<double>(rng.below(9)),
                                      1.0 + static_cast<double>(rng.below(9))};
        const double p = -4.0 + 8.0 * rng.uniform01();
        const double q = p + 0.25 + 3.0 * rng.uniform01();
        CHECK(generalized_mean(w, p) <= generalized_mean(w, q));

        auto bigger = w;
        bigger[rng.below(3)] += 1.0;
        CHECK(generalized_mean(w, p) <= generalized_mean(bigger, p));
    }
}

TEST_CASE("local scores on the K4 missing its closing simplex") {
    // all six pairs of {1,2,3,4} interact pairwise; nothing closes
    const auto ds = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[1,4],"time":3}
{"nodes":[2,3],"time":4}
{"nodes":[2,4],"time":5}
{"nodes":[3,4],"time":6}
)");
    const auto g = build_projected_graph(ds);
    const auto inc = build_incidence(ds);
    const std::array<NodeId, 3> t{0, 1, 2}; // labels 1,2,3
    CHECK(score_local(t, g, inc, LocalScoreKind::CommonNeighbors) == 1.0);
    CHECK(score_local(t, g, inc, LocalScoreKind::AdamicAdar) ==
          doctest::Approx(1.0 / std::log(3.0)));
    CHECK(score_local(t, g, inc, LocalScoreKind::Jaccard) == doctest::Approx(1.0 / 4.0));
    CHECK(score_local(t, g, inc, LocalScoreKind::PrefAttachProjDeg) == 27.0);
    CHECK(score_local(t, g, inc, LocalScoreKind::PrefAttachSimpDeg) == 27.0);
}

TEST_CASE("local scores on disjoint triangles are zero") {
    const auto ds = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[2,3],"time":3}
{"nodes":[4,5],"time":4}
{"nodes":[4,6],"time":5}
{"nodes":[5,6],"time":6}
)");
    const auto g = build_projected_graph(ds);
    const auto inc = build_incidence(ds);
    CHECK(score_local({0, 1, 2}, g, inc, LocalScoreKind::CommonNeighbors) == 0.0);
    CHECK(score_local({0, 1, 2}, g, inc, LocalScoreKind::Jaccard) == 0.0);
    // degrees (2, 3, 4) multiply to 24
    const auto pa = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[2,3],"time":3}
{"nodes":[2,4],"time":4}
{"nodes":[3,4],"time":5}
{"nodes":[3,5],"time":6}
)");
    // labels 1,2,3 are ids 0,1,2 with degrees 2,3,4
    CHECK(score_local({0, 1, 2}, build_projected_graph(pa), build_incidence(pa),
                      LocalScoreKind::PrefAttachProjDeg) == 24.0);
}

namespace {

testing::Dense dense_adjacency(const ProjectedGraph& g, bool weighted) {
    testing::Dense m{g.num_ids, std::vector<double>(g.num_ids * g.num_ids, 0.0)};
    for (NodeId u = 0; u < g.num_ids; ++u) {
        const auto nbrs = g.neighbors(u);
        const auto wts = g.neighbor_weights(u);
        for (std::size_t t = 0; t < nbrs.size(); ++t) {
            m.at(u, nbrs[t]) = weighted ? static_cast<double>(wts[t]) : 1.0;
        }
    }
    return m;
}

} // namespace

TEST_CASE("katz single edge matches the geometric series") {
    const auto ds = testing::from_jsonl_text(R"({"nodes":[1,2],"time":1})");
    const auto g = build_projected_graph(ds);
    KatzScores katz(g, false, 0.25);
    CHECK(katz.pair_score(0, 1) == doctest::Approx(0.25 / (1 - 0.0625)).epsilon(1e-9));
    CHECK(katz.sigma1() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("katz rejects divergent damping") {
    const auto ds = testing::from_jsonl_text(R"({"nodes":[1,2],"time":1})");
    const auto g = build_projected_graph(ds);
    CHECK_THROWS_AS(KatzScores(g, false, 1.5), DataError);
}

TEST_CASE("katz matches the dense inverse on random graphs") {
    Rng rng(500);
    for (const bool weighted : {false, true}) {
        const auto ds = testing::random_dataset(rng, 20, 70, 4);
        const auto g = build_projected_graph(ds);
        KatzScores katz(g, weighted);
        const double beta = katz.beta();
        REQUIRE(beta > 0.0);

        auto m = dense_adjacency(g, weighted);
        testing::Dense shifted{m.n, std::vector<double>(m.n * m.n, 0.0)};
        for (std::int64_t i = 0; i < m.n; ++i) {
            for (std::int64_t j = 0; j < m.n; ++j) shifted.at(i, j) = -beta * m.at(i, j);
            shifted.at(i, i) += 1.0;
        }
        const auto inv = testing::dense_inverse(shifted);
        for (NodeId u = 0; u < g.num_ids; ++u) {
            for (NodeId v : g.neighbors(u)) {
                const double expect = inv.at(u, v) - (u == v ? 1.0 : 0.0);
                CHECK(std::abs(katz.pair_score(u, v) - expect) <= 1e-8);
            }
        }
    }
}

TEST_CASE("katz truncated series increases towards the solve") {
    const auto ds = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[2,3],"time":2}
{"nodes":[1,3],"time":3}
{"nodes":[3,4],"time":4}
)");
    const auto g = build_projected_graph(ds);
    KatzScores katz(g, false);
    const double beta = katz.beta();
    const auto m = dense_adjacency(g, false);
    // sum beta^l A^l by repeated multiplication
    const std::int64_t n = m.n;
    testing::Dense power = testing::Dense::identity(n);
    testing::Dense partial{n, std::vector<double>(n * n, 0.0)};
    double prev = 0.0;
    for (int l = 1; l <= 40; ++l) {
        testing::Dense next{n, std::vector<double>(n * n, 0.0)};
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t k = 0; k < n; ++k) {
                for (std::int64_t j = 0; j < n; ++j) {
                    next.at(i, j) += power.at(i, k) * m.at(k, j);
                }
            }
        }
        power = next;
        const double scale = std::pow(beta, l);
        for (std::int64_t i = 0; i < n * n; ++i) partial.a[i] += scale * power.a[i];
        const double current = partial.at(0, 1);
        CHECK(current >= prev);
        prev = current;
    }
    CHECK(prev == doctest::Approx(katz.pair_score(0, 1)).epsilon(1e-6));
}

TEST_CASE("ppr columns are stochastic and symmetric cases work out") {
    const auto pair = testing::from_jsonl_text(R"({"nodes":[1,2],"time":1})");
    const auto g2 = build_projected_graph(pair);
    PprScores ppr2(g2, false, 0.7);
    CHECK(ppr2.entry(0, 1) == doctest::Approx(ppr2.entry(1, 0)));
    double sum = 0.0;
    for (double v : ppr2.column(0)) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

    const auto k3 = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[2,3],"time":3}
)");
    const auto g3 = build_projected_graph(k3);
    PprScores ppr3(g3, false, 0.85);
    CHECK(ppr3.entry(1, 0) == doctest::Approx(ppr3.entry(2, 0)));
    CHECK(ppr3.entry(0, 1) == doctest::Approx(ppr3.entry(2, 1)));
}

TEST_CASE("ppr matches the dense solve and flags isolated nodes") {
    Rng rng(600);
    const auto base = testing::random_dataset(rng, 15, 50, 4);
    // add an isolated node via a singleton simplex
    auto sims = base.simplices();
    sims.push_back(Simplex{{static_cast<NodeId>(15)}, 999.0});
    const auto ds = SimplexDataset::from_simplices(std::move(sims), 16);
    const auto g = build_projected_graph(ds);
    const double alpha = 0.85;
    PprScores ppr(g, false, alpha);

    const auto m = dense_adjacency(g, false);
    testing::Dense op{m.n, std::vector<double>(m.n * m.n, 0.0)};
    std::vector<double> colsum(m.n, 0.0);
    for (std::int64_t j = 0; j < m.n; ++j) {
        for (std::int64_t i = 0; i < m.n; ++i) colsum[j] += m.at(i, j);
    }
    for (std::int64_t i = 0; i < m.n; ++i) {
        for (std::int64_t j = 0; j < m.n; ++j) {
            op.at(i, j) = -alpha * (colsum[j] > 0 ? m.at(i, j) / colsum[j] : 0.0);
        }
        op.at(i, i) += 1.0;
    }
    const auto inv = testing::dense_inverse(op);
    for (NodeId u = 0; u < 15; ++u) {
        if (g.degree(u) == 0) continue;
        const auto& col = ppr.column(u);
        for (std::int64_t i = 0; i < m.n; ++i) {
            CHECK(std::abs(col[i] - (1.0 - alpha) * inv.at(i, u)) <= 1e-8);
            CHECK(col[i] >= -1e-12);
        }
        double sum = 0.0;
        for (double v : col) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_WITH_AS(ppr.column(15), doctest::Contains("15"), DataError);
    CHECK_THROWS_AS(PprScores(g, false, 1.0), DataError);
}

TEST_CASE("the 26 features match an independent recomputation") {
    Rng rng(700);
    const auto ds = testing::random_dataset(rng, 15, 60, 4);
    const auto ctx = TrainContext::build(ds);
    std::vector<std::array<NodeId, 3>> opens;
    for_each_triangle(ctx.graph, [&](const std::array<NodeId, 3>& t, const auto&) {
        if (!ctx.cooc.triple_closed(t[0], t[1], t[2])) opens.push_back(t);
    });
    REQUIRE(!opens.empty());

    const auto pairw = testing::naive_pair_weights(ds);
    auto naive_w = [&pairw](NodeId a, NodeId b) {
        const auto it = pairw.find({std::min(a, b), std::max(a, b)});
        return it == pairw.end() ? 0.0 : static_cast<double>(it->second);
    };
    auto naive_deg = [&pairw](NodeId a) {
        std::set<NodeId> nb;
        for (const auto& [p, w] : pairw) {
            if (p.first == a) nb.insert(p.second);
            if (p.second == a) nb.insert(p.first);
        }
        return static_cast<double>(nb.size());
    };
    auto naive_simp_deg = [&ds](NodeId a) {
        double d = 0.0;
        for (const auto& s : ds.simplices()) {
            d += std::binary_search(s.nodes.begin(), s.nodes.end(), a) ? 1.0 : 0.0;
        }
        return d;
    };
    auto common = [&pairw, &ds](std::vector<NodeId> nodes) {
        std::set<NodeId> out;
        for (NodeId cand = 0; cand < ds.num_ids(); ++cand) {
            bool all = true;
            for (NodeId a : nodes) {
                if (cand == a || !pairw.count({std::min(a, cand), std::max(a, cand)})) {
                    all = false;
                    break;
                }
            }
            if (all) out.insert(cand);
        }
        return static_cast<double>(out.size());
    };

    for (const auto& t : opens) {
        const auto f = extract_features(t, ctx);
        const auto [i, j, k] = t;
        CHECK(f[0] == naive_w(i, j));
        CHECK(f[1] == naive_w(i, k));
        CHECK(f[2] == naive_w(j, k));
        CHECK(f[3] == naive_deg(i));
        CHECK(f[4] == naive_deg(j));
        CHECK(f[5] == naive_deg(k));
        CHECK(f[6] == naive_simp_deg(i));
        CHECK(f[7] == naive_simp_deg(j));
        CHECK(f[8] == naive_simp_deg(k));
        CHECK(f[9] == common({i, j}));
        CHECK(f[10] == common({i, k}));
        CHECK(f[11] == common({j, k}));
        CHECK(f[12] == common({i, j, k}));
        for (int a = 0; a < 9; ++a) CHECK(f[13 + a] == doctest::Approx(std::log(f[a])));
        for (int a = 9; a < 13; ++a) CHECK(f[13 + a] == doctest::Approx(std::log1p(f[a])));
    }
}

TEST_CASE("logistic training separates separable synthetic features") {
    std::vector<double> X;
    std::vector<int> y;
    Rng rng(800);
    for (int i = 0; i < 200; ++i) {
        const double cls = i % 2 == 0 ? 1.0 : -1.0;
        X.push_back(cls * (1.0 + rng.uniform01()));
        X.push_back(rng.uniform01());
        y.push_back(cls > 0 ? 1 : 0);
    }
    const auto model = fit_binary_logistic(X, y, 2, 1e-3);
    int correct = 0;
    for (int i = 0; i < 200; ++i) {
        const std::span<const double> x(X.data() + 2 * i, 2);
        correct += (model.prob(x) > 0.5) == (y[i] == 1);
    }
    CHECK(correct == 200);
}

TEST_CASE("rank_candidates orders by score with lexicographic ties") {
    const auto ds = testing::planted_stream(3, 4, 12);
    const auto split = temporal_split(ds, 0.8);
    const auto set = rank_candidates(split, ScoreSpec{ScoreKind::Harmonic});
    REQUIRE(set.ranked.size() == 16);
    for (std::size_t i = 1; i < set.ranked.size(); ++i) {
        const auto& prev = set.ranked[i - 1];
        const auto& cur = set.ranked[i];
        const bool ordered =
            prev.score > cur.score || (prev.score == cur.score && prev.nodes < cur.nodes);
        CHECK(ordered);
    }
    // strong block (weight 2) first
    CHECK(set.ranked[0].score == doctest::Approx(2.0));
    CHECK(set.ranked.back().score == doctest::Approx(1.0));
}

TEST_CASE("rank_candidates labels match a direct test-closure check") {
    Rng rng(900);
    const auto ds = testing::random_dataset(rng, 15, 150, 4);
    const auto split = temporal_split(ds, 0.8);
    const auto set = rank_candidates(split, ScoreSpec{ScoreKind::Arithmetic});
    for (const auto& cand : set.ranked) {
        const bool closes =
            testing::naive_triple_cocount(split.test, cand.nodes[0], cand.nodes[1], cand.nodes[2]) > 0;
        CHECK(cand.label == closes);
        CHECK(testing::naive_triple_cocount(split.train, cand.nodes[0], cand.nodes[1],
                                            cand.nodes[2]) == 0);
    }
}

TEST_CASE("single candidate that closes") {
    const auto ds = testing::from_jsonl_text(R"(
{"nodes":[1,2],"time":1}
{"nodes":[1,3],"time":2}
{"nodes":[2,3],"time":3}
{"nodes":[1,2,3],"time":4}
)");
    const auto split = temporal_split(ds, 0.75);
    const auto set = rank_candidates(split, ScoreSpec{ScoreKind::Harmonic});
    REQUIRE(set.ranked.size() == 1);
    CHECK(set.ranked[0].label);
}

TEST_CASE("score spec parsing and aliases") {
    CHECK(parse_score_spec("harmonic").kind == ScoreKind::Harmonic);
    CHECK(parse_score_spec("genmean:-1").p == -1.0);
    CHECK(parse_score_spec("katz:w").kind == ScoreKind::KatzWeighted);
    CHECK(parse_score_spec("sppr-curl").kind == ScoreKind::SimplicialPprCurl);
    CHECK(parse_score_spec("logreg").kind == ScoreKind::Supervised);
    CHECK_THROWS_AS(parse_score_spec("nope"), DataError);
    CHECK_THROWS_AS(parse_score_spec("genmean"), DataError);

    // genmean:-1 is bit-identical to harmonic
    const auto ds = testing::planted_stream(5, 3, 9);
    const auto split = temporal_split(ds, 0.8);
    const auto a = rank_candidates(split, parse_score_spec("harmonic"));
    const auto b = rank_candidates(split, parse_score_spec("genmean:-1"));
    REQUIRE(a.ranked.size() == b.ranked.size());
    for (std::size_t i = 0; i < a.ranked.size(); ++i) {
        CHECK(a.ranked[i].score == b.ranked[i].score);
        CHECK(a.ranked[i].nodes == b.ranked[i].nodes);
    }
}
