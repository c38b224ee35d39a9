#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hosim/dataset.hpp"
#include "hosim/hodge.hpp"
#include "hosim/logistic.hpp"
#include "hosim/projection.hpp"
#include "hosim/triangles.hpp"

namespace hosim {

// Power mean of the three edge weights; p = -1/0/1 give the harmonic,
// geometric, and arithmetic means, +-inf the min/max limits.
double generalized_mean(const std::array<double, 3>& w, double p);

enum class LocalScoreKind {
    CommonNeighbors,
    Jaccard,
    AdamicAdar,
    PrefAttachProjDeg,
    PrefAttachSimpDeg,
};

double score_local(const std::array<NodeId, 3>& triple, const ProjectedGraph& g,
                   const IncidenceIndex& inc, LocalScoreKind kind);

// Pairwise Katz scores K = (I - beta A)^-1 - I, restricted on demand to the
// sparsity pattern of the requested column. beta <= 0 means 1/(4 sigma_1).
class KatzScores {
public:
    KatzScores(const ProjectedGraph& g, bool weighted, double beta = 0.0, double solve_tol = 1e-8);
    double pair_score(NodeId u, NodeId v);
    double beta() const { return beta_; }
    double sigma1() const { return sigma1_; }

private:
    const std::vector<double>& column(NodeId j);
    const ProjectedGraph& g_;
    bool weighted_;
    double beta_ = 0.0;
    double sigma1_ = 0.0;
    double solve_tol_;
    std::unordered_map<NodeId, std::vector<double>> columns_; // pattern entries per column
};

// Personalized PageRank F = (1-alpha)(I - alpha A D^-1)^-1 on the subgraph
// of non-isolated nodes. pair_score_sum returns F_uv + F_vu.
class PprScores {
public:
    PprScores(const ProjectedGraph& g, bool weighted, double alpha, double solve_tol = 1e-12);
    double entry(NodeId target, NodeId source); // F_{target, source}
    double pair_score_sum(NodeId u, NodeId v);
    double alpha() const { return alpha_; }
    // full column, exposed for the stochasticity checks
    const std::vector<double>& column(NodeId source);

private:
    const ProjectedGraph& g_;
    bool weighted_;
    double alpha_;
    double solve_tol_;
    std::vector<double> inv_out_weight_;
    std::unordered_map<NodeId, std::vector<double>> columns_;
};

// Everything score functions need about the train window, built once.
struct TrainContext {
    SimplexDataset train;
    ProjectedGraph graph;
    IncidenceIndex incidence;
    CooccurrenceIndex cooc;

    static TrainContext build(SimplexDataset train_window);
};

// The 26 supervised features of an open triangle: pair weights, projected
// degrees, simplicial degrees, pairwise and 3-way common neighbors, then
// log / log1p copies of the same thirteen.
inline constexpr int kNumFeatures = 26;
using FeatureVector = std::array<double, kNumFeatures>;
FeatureVector extract_features(const std::array<NodeId, 3>& triple, const TrainContext& ctx);

enum class ScoreKind {
    Harmonic,
    Geometric,
    Arithmetic,
    GeneralizedMean,
    CommonNeighbors,
    Jaccard,
    AdamicAdar,
    PrefAttachProjDeg,
    PrefAttachSimpDeg,
    KatzUnweighted,
    KatzWeighted,
    PprUnweighted,
    PprWeighted,
    SimplicialPpr,
    SimplicialPprGrad,
    SimplicialPprCurl,
    SimplicialPprHarm,
    Supervised,
};

struct ScoreSpec {
    ScoreKind kind = ScoreKind::Harmonic;
    double p = 1.0;          // GeneralizedMean only
    double alpha = 0.85;     // PPR variants
    double l2 = 1.0;         // Supervised penalty strength
};

// "harmonic", "genmean:-0.5", "katz:w", "ppr", "sppr-grad", "logreg", ...
ScoreSpec parse_score_spec(const std::string& text);
std::string score_spec_name(const ScoreSpec& spec);

struct Candidate {
    std::array<NodeId, 3> nodes; // sorted
    double score = 0.0;
    bool label = false; // closed in the test window
};

struct ScoreSet {
    ScoreSpec spec;
    std::vector<Candidate> ranked; // descending score, lexicographic tiebreak
};

// Supervised model trained on the 60/20 sub-train/validation windows inside
// the (already 80%) train window.
struct SupervisedModel {
    LogisticModel model;
    std::int64_t sub_train_candidates = 0;
    std::int64_t positives = 0;
};
SupervisedModel train_supervised(const SimplexDataset& train_window, double l2 = 1.0);

// All open train triangles scored by `spec` and labelled by test closure.
ScoreSet rank_candidates(const DatasetSplit& split, const ScoreSpec& spec);

} // namespace hosim
