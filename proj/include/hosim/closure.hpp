#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hosim/census.hpp"
#include "hosim/dataset.hpp"

namespace hosim {

// The eleven states a triple can pass through before (possibly) closing.
enum class LifecycleState {
    Empty,
    OneEdgeWeak,
    OneEdgeStrong,
    TwoEdges11,
    TwoEdges12,
    TwoEdges22,
    OpenTri111,
    OpenTri112,
    OpenTri122,
    OpenTri222,
    Closed,
};

const char* lifecycle_state_name(LifecycleState s);

// State changes of the triple as simplices arrive, starting implicitly from
// Empty. Closed is absorbing; the trace stops there.
std::vector<std::pair<double, LifecycleState>> lifecycle_trace(const std::array<NodeId, 3>& triple,
                                                               const SimplexDataset& ds);

struct ClosureRow {
    int ref = 0;          // configuration reference number (1..10 / 1..27)
    std::string symbol;
    std::int64_t instances = 0; // n_c: open instances in train
    std::int64_t closures = 0;  // x_c: those that close in test
    bool defined = false;       // n_c > 0
    double probability = 0.0;   // x_c / n_c when defined
    bool low_support = false;   // n_c < 25
};

struct ClosureTable {
    int arity = 3;
    std::vector<ClosureRow> rows;
};

// Open-configuration census of the train window plus a scan of test
// simplices attributing each first closure to its train configuration.
// Only node sets fully inside the train window's active node set count.
ClosureTable closure_probabilities(const DatasetSplit& split, int arity);

// prefix_filter(x) then an 80/20 split then closure_probabilities, per x.
std::vector<std::pair<double, ClosureTable>> closure_over_time(const SimplexDataset& ds,
                                                               const std::vector<double>& x_grid,
                                                               int arity);

struct ActiveInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool overlaps(const ActiveInterval& o) const { return std::max(lo, o.lo) <= std::min(hi, o.hi); }
};

struct OverlapCensus {
    std::int64_t open_triangles = 0;
    std::array<std::int64_t, 4> counts{};   // by number of pairwise overlaps
    std::array<double, 4> fractions{};
};

// For every open triangle, how many of the three pairs of edge active
// intervals intersect (closed intervals; touching endpoints overlap).
OverlapCensus temporal_overlap_census(const SimplexDataset& ds);

} // namespace hosim
