#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "hosim/projection.hpp"
#include "hosim/triangles.hpp"

namespace hosim {

// Index helpers for sorted strength tuples.
// Edge strengths live in {1,2}; simplicial (triangle) strengths in {0,1,2}.
int tri_strength_index(int i, int j, int k);   // sorted triples over {1,2} -> 0..3
int pair_index(int i, int j);                  // sorted pairs over {0,1,2} -> 0..5
int quad_strength_index(int i, int j, int k, int l); // sorted 4-tuples over {0,1,2} -> 0..14

extern const std::array<std::array<int, 3>, 4> kTriStrengthTuples;
extern const std::array<std::array<int, 2>, 6> kPairTuples;
extern const std::array<std::array<int, 4>, 15> kQuadStrengthTuples;

// The ten 3-node configurations. `total_tri` counts open and closed
// triangles together; `open_tri` only the open ones. Indexing follows
// kTriStrengthTuples: (1,1,1), (1,1,2), (1,2,2), (2,2,2).
struct Config3Counts {
    std::int64_t empty = 0;
    std::int64_t eta1 = 0;
    std::int64_t eta2 = 0;
    std::int64_t w11 = 0;
    std::int64_t w12 = 0;
    std::int64_t w22 = 0;
    std::array<std::int64_t, 4> open_tri{};
    std::array<std::int64_t, 4> total_tri{};

    bool operator==(const Config3Counts&) const = default;
};

// The 27 open 4-node configurations plus the total tetrahedral counts.
// tri_iso = triangle + isolated node (pi_s); tri_pendant = triangle +
// pendant edge (rho_s); five_edge = two triangles sharing an edge
// (phi_{i,j}, kPairTuples order); open_tetra / total_tetra = 6-edge
// wireframes (q / tau, kQuadStrengthTuples order). Subscripts are
// simplicial tie strengths: 0 open, 1 weak, 2 strong.
struct Config4Counts {
    std::array<std::int64_t, 3> tri_iso{};
    std::array<std::int64_t, 3> tri_pendant{};
    std::array<std::int64_t, 6> five_edge{};
    std::array<std::int64_t, 15> open_tetra{};
    std::array<std::int64_t, 15> total_tetra{};

    bool operator==(const Config4Counts&) const = default;
};

// Exact counts via triangle/4-clique enumeration plus complement algebra;
// no per-configuration enumeration of wedges, single edges, or empty sets.
Config3Counts count_configs3(const ProjectedGraph& g, const CooccurrenceIndex& cooc);
Config4Counts count_configs4(const ProjectedGraph& g, const CooccurrenceIndex& cooc);

// Direct classification of every node subset; the test oracle. Refuses
// datasets with more than `node_cap` active nodes.
Config3Counts brute_force_configs3(const SimplexDataset& ds, std::int64_t node_cap = 40);
Config4Counts brute_force_configs4(const SimplexDataset& ds, std::int64_t node_cap = 40);

// Table row labels keyed by reference number (1..10 and 1..27).
std::string config3_symbol(int ref);
std::string config4_symbol(int ref);
std::int64_t config3_count(const Config3Counts& c, int ref); // open configs only
std::int64_t config4_count(const Config4Counts& c, int ref);

} // namespace hosim
