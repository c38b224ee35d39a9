#pragma once

#include <cstdint>
#include <vector>

#include "hosim/dataset.hpp"

namespace hosim {

struct GenModelParams {
    std::int64_t n = 3;       // node count, >= 3
    double b = 1.0;           // simplex probability exponent, p = 1 / n^b
    std::uint64_t seed = 0;
};

// Probability that a fixed triple ends up as an open triangle:
// (1 - (1 - 1/n^b)^n)^3.
double expected_open_indicator(std::int64_t n, double b);

// Every one of the C(n,3) triples becomes a 3-node simplex independently
// with probability 1/n^b; timestamps follow draw order. Small expected
// counts switch to drawing a binomial count and sampling distinct triples,
// which is distributionally identical.
SimplexDataset sample_model(const GenModelParams& params);

// Disjoint union of c relabeled copies: c times the nodes, same average
// degree, roughly 1/c times the density.
SimplexDataset replicate_patch(const SimplexDataset& ds, std::int64_t c);

struct SweepRow {
    std::int64_t n = 0;
    double b = 0.0;
    std::uint64_t seed = 0;
    std::int64_t open_triangles = 0;
    std::int64_t closed_triangles = 0;
    bool fraction_defined = false; // false when the sample has no triangles
    double fraction_open = 0.0;
    double edge_density = 0.0;
    double average_degree = 0.0;
};

// One row per (n, b, seed); rows are independent and computed in parallel
// with per-row RNG streams derived from base_seed.
std::vector<SweepRow> sweep(const std::vector<std::int64_t>& n_grid,
                            const std::vector<double>& b_grid, int seeds,
                            std::uint64_t base_seed = 0);

} // namespace hosim
