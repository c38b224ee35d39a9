#include "hosim/genmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_set>

#include "hosim/parallel.hpp"
#include "hosim/projection.hpp"
#include "hosim/rng.hpp"
#include "hosim/triangles.hpp"

namespace hosim {

double expected_open_indicator(std::int64_t n, double b) {
    if (n < 3 || !(b > 0.0)) throw DataError("expected_open_indicator: need n >= 3 and b > 0");
    const double p = std::pow(static_cast<double>(n), -b);
    const double edge = 1.0 - std::pow(1.0 - p, static_cast<double>(n));
    return edge * edge * edge;
}

namespace {

std::int64_t choose3(std::int64_t n) { return n < 3 ? 0 : n * (n - 1) / 2 * (n - 2) / 3; }

// triple with rank `r` in colex order over 0 <= a < b < c < n
std::array<NodeId, 3> unrank_triple(std::int64_t r) {
    std::int64_t c = 2;
    while (choose3(c + 1) <= r) ++c;
    r -= choose3(c);
    std::int64_t b = 1;
    while ((b + 1) * b / 2 <= r) ++b;
    r -= b * (b - 1) / 2;
    return {static_cast<NodeId>(r), static_cast<NodeId>(b), static_cast<NodeId>(c)};
}

// Binomial(count, p) draw by inversion on the log scale; exact enough for
// count * p within the model's ranges and fully deterministic.
std::int64_t draw_binomial(Rng& rng, std::int64_t count, double p) {
    if (p <= 0.0 || count <= 0) return 0;
    if (p >= 1.0) return count;
    // waiting-time method: number of Bernoulli successes via geometric skips
    std::int64_t draws = 0, successes = 0;
    const double log1mp = std::log1p(-p);
    while (true) {
        const double u = rng.uniform01();
        const double skip = std::floor(std::log(1.0 - u) / log1mp);
        if (skip >= static_cast<double>(count - draws)) return successes; // past the end
        draws += static_cast<std::int64_t>(skip) + 1;
        ++successes;
    }
}

} // namespace

SimplexDataset sample_model(const GenModelParams& params) {
    if (params.n < 3 || !(params.b > 0.0)) throw DataError("sample_model: need n >= 3 and b > 0");
    const double p = std::pow(static_cast<double>(params.n), -params.b);
    const std::int64_t total = choose3(params.n);
    Rng rng(params.seed);

    std::vector<Simplex> out;
    if (p >= 1.0 / 64.0) {
        // dense regime: one Bernoulli per triple
        double t = 0.0;
        const NodeId n = static_cast<NodeId>(params.n);
        for (NodeId c = 2; c < n; ++c) {
            for (NodeId b = 1; b < c; ++b) {
                for (NodeId a = 0; a < b; ++a) {
                    if (rng.bernoulli(p)) {
                        out.push_back(Simplex{{a, b, c}, t});
                        t += 1.0;
                    }
                }
            }
        }
    } else {
        // sparse regime: binomial count, then distinct triples by rejection
        const std::int64_t count = draw_binomial(rng, total, p);
        std::unordered_set<std::int64_t> chosen;
        chosen.reserve(count * 2);
        double t = 0.0;
        while (static_cast<std::int64_t>(chosen.size()) < count) {
            const std::int64_t r = static_cast<std::int64_t>(rng.below(total));
            if (!chosen.insert(r).second) continue;
            const auto tri = unrank_triple(r);
            out.push_back(Simplex{{tri[0], tri[1], tri[2]}, t});
            t += 1.0;
        }
    }
    return SimplexDataset::from_simplices(std::move(out), params.n);
}

SimplexDataset replicate_patch(const SimplexDataset& ds, std::int64_t c) {
    if (c < 1) throw DataError("replicate_patch: need c >= 1");
    const std::int64_t n = ds.num_ids();
    std::vector<Simplex> out;
    out.reserve(ds.size() * c);
    for (std::int64_t copy = 0; copy < c; ++copy) {
        const NodeId shift = static_cast<NodeId>(copy * n);
        for (const auto& s : ds.simplices()) {
            Simplex dup;
            dup.time = s.time;
            dup.nodes.reserve(s.nodes.size());
            for (NodeId u : s.nodes) dup.nodes.push_back(u + shift);
            out.push_back(std::move(dup));
        }
    }
    return SimplexDataset::from_simplices(std::move(out), n * c);
}

std::vector<SweepRow> sweep(const std::vector<std::int64_t>& n_grid,
                            const std::vector<double>& b_grid, int seeds,
                            std::uint64_t base_seed) {
    if (n_grid.empty() || b_grid.empty() || seeds < 1) {
        throw DataError("sweep: grids and seed count must be non-empty");
    }
    std::vector<SweepRow> rows;
    for (std::int64_t n : n_grid) {
        for (double b : b_grid) {
            for (int s = 0; s < seeds; ++s) {
                SweepRow row;
                row.n = n;
                row.b = b;
                row.seed = static_cast<std::uint64_t>(s);
                rows.push_back(row);
            }
        }
    }

    parallel_chunks(
        static_cast<std::int64_t>(rows.size()),
        [&](std::int64_t, std::int64_t begin, std::int64_t end) {
            for (std::int64_t i = begin; i < end; ++i) {
                auto& row = rows[i];
                // per-row stream keyed by (n, b, seed) so a row's sample does
                // not depend on where it sits in the grid
                std::uint64_t bbits = 0;
                std::memcpy(&bbits, &row.b, sizeof(bbits));
                std::uint64_t stream = splitmix64(static_cast<std::uint64_t>(row.n));
                stream = splitmix64(stream ^ bbits);
                stream = splitmix64(stream ^ row.seed);
                GenModelParams params{row.n, row.b, base_seed ^ stream};
                const auto ds = sample_model(params);
                const auto g = build_projected_graph(ds);
                if (g.num_active >= 2) {
                    const auto metrics = graph_metrics(g);
                    row.edge_density = metrics.edge_density;
                    row.average_degree = metrics.average_degree;
                }
                const auto cooc = CooccurrenceIndex::build(ds);
                TriangleTally tally;
                bool any = true;
                try {
                    tally = fraction_open(g, cooc);
                } catch (const DataError&) {
                    any = false;
                }
                if (any) {
                    row.open_triangles = tally.open;
                    row.closed_triangles = tally.closed;
                    row.fraction_defined = true;
                    row.fraction_open = tally.fraction_open;
                }
            }
        },
        1);
    return rows;
}

} // namespace hosim
