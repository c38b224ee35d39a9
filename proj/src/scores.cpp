#include "hosim/scores.hpp"

#include <algorithm>
#include <cmath>

#include "hosim/parallel.hpp"
#include "hosim/solvers.hpp"

namespace hosim {

double generalized_mean(const std::array<double, 3>& w, double p) {
    for (double x : w) {
        if (!(x > 0.0)) throw DataError("generalized_mean: weights must be positive");
    }
    if (w[0] == w[1] && w[1] == w[2]) return w[0]; // exact for equal weights
    if (std::isinf(p)) {
        return p > 0 ? std::max({w[0], w[1], w[2]}) : std::min({w[0], w[1], w[2]});
    }
    if (std::abs(p) < 1e-12) return std::cbrt(w[0] * w[1] * w[2]);
    if (p == 1.0) return (w[0] + w[1] + w[2]) / 3.0;
    if (p == -1.0) return 3.0 / (1.0 / w[0] + 1.0 / w[1] + 1.0 / w[2]);
    const double s = (std::pow(w[0], p) + std::pow(w[1], p) + std::pow(w[2], p)) / 3.0;
    return std::pow(s, 1.0 / p);
}

namespace {

std::vector<NodeId> intersect_sorted(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::vector<NodeId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

double score_local(const std::array<NodeId, 3>& triple, const ProjectedGraph& g,
                   const IncidenceIndex& inc, LocalScoreKind kind) {
    const auto [i, j, k] = triple;
    switch (kind) {
        case LocalScoreKind::PrefAttachProjDeg:
            return static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) *
                   static_cast<double>(g.degree(k));
        case LocalScoreKind::PrefAttachSimpDeg:
            return static_cast<double>(inc.simplicial_degree(i)) *
                   static_cast<double>(inc.simplicial_degree(j)) *
                   static_cast<double>(inc.simplicial_degree(k));
        default:
            break;
    }
    const auto nij = intersect_sorted(g.neighbors(i), g.neighbors(j));
    const auto common = intersect_sorted(nij, g.neighbors(k));
    switch (kind) {
        case LocalScoreKind::CommonNeighbors:
            return static_cast<double>(common.size());
        case LocalScoreKind::Jaccard: {
            std::vector<NodeId> uni(g.neighbors(i).begin(), g.neighbors(i).end());
            uni.insert(uni.end(), g.neighbors(j).begin(), g.neighbors(j).end());
            uni.insert(uni.end(), g.neighbors(k).begin(), g.neighbors(k).end());
            std::sort(uni.begin(), uni.end());
            uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
            return uni.empty() ? 0.0
                               : static_cast<double>(common.size()) / static_cast<double>(uni.size());
        }
        case LocalScoreKind::AdamicAdar: {
            double s = 0.0;
            for (NodeId l : common) {
                const auto d = g.degree(l);
                if (d <= 1) throw NumericError("Adamic-Adar: common neighbor with degree <= 1");
                s += 1.0 / std::log(static_cast<double>(d));
            }
            return s;
        }
        default:
            throw DataError("score_local: unhandled kind");
    }
}

// ---- Katz ----

namespace {

LinOp shifted_adjacency_op(const ProjectedGraph& g, bool weighted, double beta) {
    // y = (I - beta M) x with M the (un)weighted adjacency
    return [&g, weighted, beta](std::span<const double> x, std::span<double> y) {
        for (std::int64_t u = 0; u < g.num_ids; ++u) {
            const auto nbrs = g.neighbors(static_cast<NodeId>(u));
            const auto wts = g.neighbor_weights(static_cast<NodeId>(u));
            double acc = 0.0;
            for (std::size_t t = 0; t < nbrs.size(); ++t) {
                acc += (weighted ? static_cast<double>(wts[t]) : 1.0) * x[nbrs[t]];
            }
            y[u] = x[u] - beta * acc;
        }
    };
}

double adjacency_sigma1(const ProjectedGraph& g, bool weighted) {
    const LinOp op = [&g, weighted](std::span<const double> x, std::span<double> y) {
        for (std::int64_t u = 0; u < g.num_ids; ++u) {
            const auto nbrs = g.neighbors(static_cast<NodeId>(u));
            const auto wts = g.neighbor_weights(static_cast<NodeId>(u));
            double acc = 0.0;
            for (std::size_t t = 0; t < nbrs.size(); ++t) {
                acc += (weighted ? static_cast<double>(wts[t]) : 1.0) * x[nbrs[t]];
            }
            y[u] = acc;
        }
    };
    return power_iteration_sym(g.num_ids, op, 1e-6);
}

} // namespace

KatzScores::KatzScores(const ProjectedGraph& g, bool weighted, double beta, double solve_tol)
    : g_(g), weighted_(weighted), solve_tol_(solve_tol) {
    sigma1_ = adjacency_sigma1(g, weighted);
    if (beta > 0.0) {
        if (sigma1_ > 0.0 && beta >= 1.0 / sigma1_) {
            throw DataError("Katz: beta = " + std::to_string(beta) +
                            " is at or beyond 1/sigma1 = " + std::to_string(1.0 / sigma1_) +
                            "; the path series diverges");
        }
        beta_ = beta;
    } else {
        beta_ = sigma1_ > 0.0 ? 1.0 / (4.0 * sigma1_) : 0.0;
    }
}

const std::vector<double>& KatzScores::column(NodeId j) {
    auto it = columns_.find(j);
    if (it == columns_.end()) {
        const std::int64_t n = g_.num_ids;
        std::vector<double> full(n, 0.0);
        if (beta_ > 0.0) {
            std::vector<double> b(n, 0.0);
            b[j] = 1.0;
            const auto op = shifted_adjacency_op(g_, weighted_, beta_);
            const auto rep = minres(n, op, b, full, solve_tol_);
            if (!rep.converged) {
                throw NumericError("Katz column solve did not converge (residual " +
                                   std::to_string(rep.relative_residual) + ")");
            }
            full[j] -= 1.0; // K = (I - beta A)^-1 - I
        }
        // keep only the entries on the sparsity pattern of column j
        std::vector<double> pattern(g_.degree(j));
        const auto nbrs = g_.neighbors(j);
        for (std::size_t t = 0; t < nbrs.size(); ++t) pattern[t] = full[nbrs[t]];
        it = columns_.emplace(j, std::move(pattern)).first;
    }
    return it->second;
}

double KatzScores::pair_score(NodeId u, NodeId v) {
    const auto& col = column(v);
    const auto nbrs = g_.neighbors(v);
    const auto pos = std::lower_bound(nbrs.begin(), nbrs.end(), u);
    if (pos == nbrs.end() || *pos != u) {
        throw DataError("Katz: pair (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") is not an edge; only edge-pattern entries are kept");
    }
    return col[pos - nbrs.begin()];
}

// ---- PPR ----

PprScores::PprScores(const ProjectedGraph& g, bool weighted, double alpha, double solve_tol)
    : g_(g), weighted_(weighted), alpha_(alpha), solve_tol_(solve_tol) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("PPR: alpha must be in (0, 1)");
    inv_out_weight_.assign(g.num_ids, 0.0);
    for (std::int64_t u = 0; u < g.num_ids; ++u) {
        double s = 0.0;
        for (std::size_t t = 0; t < g.neighbors(static_cast<NodeId>(u)).size(); ++t) {
            s += weighted ? static_cast<double>(g.neighbor_weights(static_cast<NodeId>(u))[t]) : 1.0;
        }
        if (s > 0.0) inv_out_weight_[u] = 1.0 / s;
    }
}

const std::vector<double>& PprScores::column(NodeId source) {
    auto it = columns_.find(source);
    if (it == columns_.end()) {
        if (g_.degree(source) == 0) {
            throw DataError("PPR: node " + std::to_string(source) +
                            " is isolated in the projected graph");
        }
        const std::int64_t n = g_.num_ids;
        // y = (I - alpha A D^-1) x; the walk matrix is column-stochastic on
        // the non-isolated subgraph
        const LinOp op = [this](std::span<const double> x, std::span<double> y) {
            std::vector<double> xd(x.size());
            for (std::size_t u = 0; u < x.size(); ++u) xd[u] = x[u] * inv_out_weight_[u];
            for (std::int64_t u = 0; u < g_.num_ids; ++u) {
                const auto nbrs = g_.neighbors(static_cast<NodeId>(u));
                const auto wts = g_.neighbor_weights(static_cast<NodeId>(u));
                double acc = 0.0;
                for (std::size_t t = 0; t < nbrs.size(); ++t) {
                    acc += (weighted_ ? static_cast<double>(wts[t]) : 1.0) * xd[nbrs[t]];
                }
                y[u] = x[u] - alpha_ * acc;
            }
        };
        std::vector<double> b(n, 0.0), f(n, 0.0);
        b[source] = 1.0 - alpha_;
        const auto rep = bicgstab(n, op, b, f, solve_tol_);
        if (!rep.converged) {
            throw NumericError("PPR column solve did not converge (residual " +
                               std::to_string(rep.relative_residual) + ")");
        }
        it = columns_.emplace(source, std::move(f)).first;
    }
    return it->second;
}

double PprScores::entry(NodeId target, NodeId source) { return column(source)[target]; }

double PprScores::pair_score_sum(NodeId u, NodeId v) { return entry(u, v) + entry(v, u); }

// ---- features / supervised ----

TrainContext TrainContext::build(SimplexDataset train_window) {
    TrainContext ctx{std::move(train_window), {}, {}, {}};
    ctx.graph = build_projected_graph(ctx.train);
    ctx.incidence = build_incidence(ctx.train);
    ctx.cooc = CooccurrenceIndex::build(ctx.train);
    return ctx;
}

FeatureVector extract_features(const std::array<NodeId, 3>& triple, const TrainContext& ctx) {
    const auto [i, j, k] = triple;
    const auto& g = ctx.graph;
    FeatureVector f{};
    f[0] = g.weight(i, j);
    f[1] = g.weight(i, k);
    f[2] = g.weight(j, k);
    f[3] = static_cast<double>(g.degree(i));
    f[4] = static_cast<double>(g.degree(j));
    f[5] = static_cast<double>(g.degree(k));
    f[6] = static_cast<double>(ctx.incidence.simplicial_degree(i));
    f[7] = static_cast<double>(ctx.incidence.simplicial_degree(j));
    f[8] = static_cast<double>(ctx.incidence.simplicial_degree(k));
    const auto nij = intersect_sorted(g.neighbors(i), g.neighbors(j));
    const auto nik = intersect_sorted(g.neighbors(i), g.neighbors(k));
    const auto njk = intersect_sorted(g.neighbors(j), g.neighbors(k));
    f[9] = static_cast<double>(nij.size());
    f[10] = static_cast<double>(nik.size());
    f[11] = static_cast<double>(njk.size());
    f[12] = static_cast<double>(intersect_sorted(nij, g.neighbors(k)).size());
    for (int t = 0; t < 9; ++t) f[13 + t] = std::log(f[t]);
    for (int t = 9; t < 13; ++t) f[13 + t] = std::log1p(f[t]);
    return f;
}

namespace {

std::vector<std::array<NodeId, 3>> open_triangles_of(const TrainContext& ctx) {
    std::vector<std::array<NodeId, 3>> out;
    for_each_triangle(ctx.graph,
                      [&](const std::array<NodeId, 3>& t, const std::array<std::uint32_t, 3>&) {
                          if (!ctx.cooc.triple_closed(t[0], t[1], t[2])) out.push_back(t);
                      });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

SupervisedModel train_supervised(const SimplexDataset& train_window, double l2) {
    // sub-train = first 75% of the train window (60% of the whole dataset
    // when the window is the usual 80%), validation = the remainder
    const auto inner = temporal_split(train_window, 0.75);
    const auto sub_ctx = TrainContext::build(inner.train);
    const auto val_cooc = CooccurrenceIndex::build(inner.test);

    const auto candidates = open_triangles_of(sub_ctx);
    if (candidates.empty()) {
        throw DataError("train_supervised: no open triangles in the sub-training window");
    }
    std::vector<double> X;
    X.reserve(candidates.size() * kNumFeatures);
    std::vector<int> y;
    y.reserve(candidates.size());
    for (const auto& t : candidates) {
        const auto f = extract_features(t, sub_ctx);
        X.insert(X.end(), f.begin(), f.end());
        y.push_back(val_cooc.triple_closed(t[0], t[1], t[2]) ? 1 : 0);
    }

    SupervisedModel out;
    out.sub_train_candidates = static_cast<std::int64_t>(candidates.size());
    out.positives = std::count(y.begin(), y.end(), 1);
    out.model = fit_binary_logistic(X, y, kNumFeatures, l2);
    return out;
}

// ---- spec parsing / ranking ----

ScoreSpec parse_score_spec(const std::string& text) {
    ScoreSpec spec;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto need_no_arg = [&]() {
        if (!arg.empty() && arg != "w") throw DataError("score '" + head + "' takes no ':" + arg + "'");
    };
    if (head == "harmonic") { spec.kind = ScoreKind::Harmonic; need_no_arg(); }
    else if (head == "geometric") { spec.kind = ScoreKind::Geometric; need_no_arg(); }
    else if (head == "arithmetic") { spec.kind = ScoreKind::Arithmetic; need_no_arg(); }
    else if (head == "genmean") {
        spec.kind = ScoreKind::GeneralizedMean;
        if (arg.empty()) throw DataError("genmean needs a parameter, e.g. genmean:-0.5");
        try {
            spec.p = std::stod(arg);
        } catch (const std::exception&) {
            throw DataError("genmean: cannot parse parameter '" + arg + "'");
        }
    } else if (head == "cn") { spec.kind = ScoreKind::CommonNeighbors; }
    else if (head == "jaccard") { spec.kind = ScoreKind::Jaccard; }
    else if (head == "aa") { spec.kind = ScoreKind::AdamicAdar; }
    else if (head == "pa-deg") { spec.kind = ScoreKind::PrefAttachProjDeg; }
    else if (head == "pa-simp") { spec.kind = ScoreKind::PrefAttachSimpDeg; }
    else if (head == "katz") { spec.kind = arg == "w" ? ScoreKind::KatzWeighted : ScoreKind::KatzUnweighted; }
    else if (head == "ppr") { spec.kind = arg == "w" ? ScoreKind::PprWeighted : ScoreKind::PprUnweighted; }
    else if (head == "sppr") { spec.kind = ScoreKind::SimplicialPpr; }
    else if (head == "sppr-grad") { spec.kind = ScoreKind::SimplicialPprGrad; }
    else if (head == "sppr-curl") { spec.kind = ScoreKind::SimplicialPprCurl; }
    else if (head == "sppr-harm") { spec.kind = ScoreKind::SimplicialPprHarm; }
    else if (head == "logreg") { spec.kind = ScoreKind::Supervised; }
    else throw DataError("unknown score function '" + text + "'");
    return spec;
}

std::string score_spec_name(const ScoreSpec& spec) {
    switch (spec.kind) {
        case ScoreKind::Harmonic: return "harmonic";
        case ScoreKind::Geometric: return "geometric";
        case ScoreKind::Arithmetic: return "arithmetic";
        case ScoreKind::GeneralizedMean: return "genmean:" + std::to_string(spec.p);
        case ScoreKind::CommonNeighbors: return "cn";
        case ScoreKind::Jaccard: return "jaccard";
        case ScoreKind::AdamicAdar: return "aa";
        case ScoreKind::PrefAttachProjDeg: return "pa-deg";
        case ScoreKind::PrefAttachSimpDeg: return "pa-simp";
        case ScoreKind::KatzUnweighted: return "katz";
        case ScoreKind::KatzWeighted: return "katz:w";
        case ScoreKind::PprUnweighted: return "ppr";
        case ScoreKind::PprWeighted: return "ppr:w";
        case ScoreKind::SimplicialPpr: return "sppr";
        case ScoreKind::SimplicialPprGrad: return "sppr-grad";
        case ScoreKind::SimplicialPprCurl: return "sppr-curl";
        case ScoreKind::SimplicialPprHarm: return "sppr-harm";
        case ScoreKind::Supervised: return "logreg";
    }
    return "?";
}

ScoreSet rank_candidates(const DatasetSplit& split, const ScoreSpec& spec) {
    const auto ctx = TrainContext::build(split.train);
    const auto test_cooc = CooccurrenceIndex::build(split.test);
    const auto candidates = open_triangles_of(ctx);

    ScoreSet out;
    out.spec = spec;
    out.ranked.reserve(candidates.size());

    // per-kind scorer over the shared train context
    std::unique_ptr<KatzScores> katz;
    std::unique_ptr<PprScores> ppr;
    std::unique_ptr<SimplicialPpr> sppr;
    std::optional<SupervisedModel> supervised;
    switch (spec.kind) {
        case ScoreKind::KatzUnweighted:
            katz = std::make_unique<KatzScores>(ctx.graph, false);
            break;
        case ScoreKind::KatzWeighted:
            katz = std::make_unique<KatzScores>(ctx.graph, true);
            break;
        case ScoreKind::PprUnweighted:
            ppr = std::make_unique<PprScores>(ctx.graph, false, spec.alpha);
            break;
        case ScoreKind::PprWeighted:
            ppr = std::make_unique<PprScores>(ctx.graph, true, spec.alpha);
            break;
        case ScoreKind::SimplicialPpr:
        case ScoreKind::SimplicialPprGrad:
        case ScoreKind::SimplicialPprCurl:
        case ScoreKind::SimplicialPprHarm:
            sppr = std::make_unique<SimplicialPpr>(
                HodgeOperators::build(ctx.graph, ctx.cooc.closed_triples()), spec.alpha);
            break;
        case ScoreKind::Supervised:
            supervised = train_supervised(split.train, spec.l2);
            break;
        default:
            break;
    }

    auto score_one = [&](const std::array<NodeId, 3>& t) -> double {
        const std::array<double, 3> w{static_cast<double>(ctx.graph.weight(t[0], t[1])),
                                      static_cast<double>(ctx.graph.weight(t[0], t[2])),
                                      static_cast<double>(ctx.graph.weight(t[1], t[2]))};
        switch (spec.kind) {
            case ScoreKind::Harmonic: return generalized_mean(w, -1.0);
            case ScoreKind::Geometric: return generalized_mean(w, 0.0);
            case ScoreKind::Arithmetic: return generalized_mean(w, 1.0);
            case ScoreKind::GeneralizedMean: return generalized_mean(w, spec.p);
            case ScoreKind::CommonNeighbors:
                return score_local(t, ctx.graph, ctx.incidence, LocalScoreKind::CommonNeighbors);
            case ScoreKind::Jaccard:
                return score_local(t, ctx.graph, ctx.incidence, LocalScoreKind::Jaccard);
            case ScoreKind::AdamicAdar:
                return score_local(t, ctx.graph, ctx.incidence, LocalScoreKind::AdamicAdar);
            case ScoreKind::PrefAttachProjDeg:
                return score_local(t, ctx.graph, ctx.incidence, LocalScoreKind::PrefAttachProjDeg);
            case ScoreKind::PrefAttachSimpDeg:
                return score_local(t, ctx.graph, ctx.incidence, LocalScoreKind::PrefAttachSimpDeg);
            case ScoreKind::KatzUnweighted:
            case ScoreKind::KatzWeighted:
                return katz->pair_score(t[0], t[1]) + katz->pair_score(t[0], t[2]) +
                       katz->pair_score(t[1], t[2]);
            case ScoreKind::PprUnweighted:
            case ScoreKind::PprWeighted:
                return ppr->pair_score_sum(t[0], t[1]) + ppr->pair_score_sum(t[0], t[2]) +
                       ppr->pair_score_sum(t[1], t[2]);
            case ScoreKind::SimplicialPpr: return sppr->triple_score(t, HodgeComponent::Combined);
            case ScoreKind::SimplicialPprGrad: return sppr->triple_score(t, HodgeComponent::Grad);
            case ScoreKind::SimplicialPprCurl: return sppr->triple_score(t, HodgeComponent::Curl);
            case ScoreKind::SimplicialPprHarm: return sppr->triple_score(t, HodgeComponent::Harm);
            case ScoreKind::Supervised: {
                const auto f = extract_features(t, ctx);
                return supervised->model.logit(f);
            }
        }
        throw DataError("rank_candidates: unhandled score kind");
    };

    for (const auto& t : candidates) {
        Candidate c;
        c.nodes = t;
        c.score = score_one(t);
        c.label = test_cooc.triple_closed(t[0], t[1], t[2]);
        out.ranked.push_back(c);
    }
    std::sort(out.ranked.begin(), out.ranked.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.nodes < b.nodes;
    });
    return out;
}

} // namespace hosim
