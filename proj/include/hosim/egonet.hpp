#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hosim/dataset.hpp"
#include "hosim/logistic.hpp"
#include "hosim/projection.hpp"
#include "hosim/rng.hpp"

namespace hosim {

// Feature order for egonet classification.
enum EgonetFeature : int { kFractionOpen = 0, kLogAvgDegree = 1, kLogEdgeDensity = 2 };

struct EgonetSample {
    NodeId ego = 0;
    std::int64_t member_count = 0;
    std::int64_t open_triangles = 0;
    std::int64_t closed_triangles = 0;
    std::array<double, 3> features{}; // (fraction_open, log avg degree, log density)
    bool qualifies = false;           // has at least one open or closed triangle
};

// Member set = ego plus projected-graph neighbors; the induced sub-dataset
// keeps each simplex's intersection with the members when it has >= 2 nodes.
EgonetSample extract_egonet(const SimplexDataset& ds, const ProjectedGraph& g, NodeId ego);

// Uniform sample without replacement from the qualifying egos.
std::vector<EgonetSample> sample_egonets(const SimplexDataset& ds, const ProjectedGraph& g,
                                         int count, Rng& rng);
std::vector<NodeId> qualifying_egos(const SimplexDataset& ds, const ProjectedGraph& g);

// One group per source dataset: its class label and its sampled feature rows.
struct SampleGroup {
    int class_label = 0;
    std::string name;
    std::vector<std::array<double, 3>> features;
};

struct ClassifierProtocolResult {
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    std::vector<double> per_trial;
};

// The repeated-trials protocol: per trial, shuffle each group, train the
// multinomial model on `train_per_group` rows per group with an L2 penalty
// of 1/(2C), and score accuracy on the rest. feature_subset indexes into
// the three egonet features.
ClassifierProtocolResult train_domain_classifier(const std::vector<SampleGroup>& groups,
                                                 const std::vector<int>& feature_subset,
                                                 int train_per_group, int trials, double c_reg,
                                                 Rng& rng);

} // namespace hosim
