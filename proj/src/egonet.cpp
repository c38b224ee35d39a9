#include "hosim/egonet.hpp"

#include <algorithm>
#include <cmath>

#include "hosim/triangles.hpp"

namespace hosim {

EgonetSample extract_egonet(const SimplexDataset& ds, const ProjectedGraph& g, NodeId ego) {
    if (ego >= ds.num_ids()) throw DataError("extract_egonet: unknown ego node");
    std::vector<bool> member(ds.num_ids(), false);
    member[ego] = true;
    std::int64_t members = 1;
    for (NodeId v : g.neighbors(ego)) {
        member[v] = true;
        ++members;
    }

    std::vector<Simplex> induced;
    for (const auto& s : ds.simplices()) {
        Simplex cut;
        for (NodeId u : s.nodes) {
            if (member[u]) cut.nodes.push_back(u);
        }
        if (cut.nodes.size() < 2) continue;
        cut.time = s.time;
        induced.push_back(std::move(cut));
    }

    EgonetSample sample;
    sample.ego = ego;
    sample.member_count = members;
    if (induced.empty()) return sample;

    const auto sub = SimplexDataset::from_simplices(std::move(induced), ds.num_ids());
    const auto sub_graph = build_projected_graph(sub);
    const auto sub_cooc = CooccurrenceIndex::build(sub);
    std::int64_t open = 0, closed = 0;
    for_each_triangle(sub_graph,
                      [&](const std::array<NodeId, 3>& t, const std::array<std::uint32_t, 3>&) {
                          if (sub_cooc.triple_closed(t[0], t[1], t[2])) ++closed;
                          else ++open;
                      });
    sample.open_triangles = open;
    sample.closed_triangles = closed;
    sample.qualifies = open + closed > 0;
    if (sample.qualifies) {
        const auto metrics = graph_metrics(sub_graph);
        sample.features[kFractionOpen] =
            static_cast<double>(open) / static_cast<double>(open + closed);
        sample.features[kLogAvgDegree] = std::log(metrics.average_degree);
        sample.features[kLogEdgeDensity] = std::log(metrics.edge_density);
    }
    return sample;
}

std::vector<NodeId> qualifying_egos(const SimplexDataset& ds, const ProjectedGraph& g) {
    std::vector<NodeId> out;
    const auto active = ds.active_mask();
    for (std::int64_t u = 0; u < ds.num_ids(); ++u) {
        if (!active[u]) continue;
        const auto sample = extract_egonet(ds, g, static_cast<NodeId>(u));
        if (sample.qualifies) out.push_back(static_cast<NodeId>(u));
    }
    return out;
}

std::vector<EgonetSample> sample_egonets(const SimplexDataset& ds, const ProjectedGraph& g,
                                         int count, Rng& rng) {
    auto egos = qualifying_egos(ds, g);
    if (static_cast<int>(egos.size()) < count) {
        throw DataError("sample_egonets: only " + std::to_string(egos.size()) +
                        " qualifying egonets, need " + std::to_string(count));
    }
    // partial Fisher-Yates
    for (int i = 0; i < count; ++i) {
        const std::size_t j = i + rng.below(egos.size() - i);
        std::swap(egos[i], egos[j]);
    }
    std::vector<EgonetSample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(extract_egonet(ds, g, egos[i]));
    return out;
}

ClassifierProtocolResult train_domain_classifier(const std::vector<SampleGroup>& groups,
                                                 const std::vector<int>& feature_subset,
                                                 int train_per_group, int trials, double c_reg,
                                                 Rng& rng) {
    if (groups.size() < 2) throw DataError("train_domain_classifier: need at least two groups");
    if (feature_subset.empty()) throw DataError("train_domain_classifier: empty feature subset");
    int num_classes = 0;
    for (const auto& g : groups) {
        if (g.class_label < 0) throw DataError("train_domain_classifier: negative class label");
        num_classes = std::max(num_classes, g.class_label + 1);
        if (static_cast<int>(g.features.size()) <= train_per_group) {
            throw DataError("train_domain_classifier: group '" + g.name + "' has " +
                            std::to_string(g.features.size()) + " samples, need more than " +
                            std::to_string(train_per_group));
        }
    }
    if (num_classes < 2) throw DataError("train_domain_classifier: need at least two classes");

    const std::int64_t dim = static_cast<std::int64_t>(feature_subset.size());
    const double l2 = 1.0 / c_reg; // penalty = (1/(2C)) ||w||^2

    ClassifierProtocolResult result;
    result.per_trial.reserve(trials);
    for (int trial = 0; trial < trials; ++trial) {
        Rng trial_rng = rng.fork(trial);
        std::vector<double> X_train, X_test;
        std::vector<int> y_train, y_test;
        for (const auto& group : groups) {
            std::vector<std::size_t> order(group.features.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                const std::size_t j = i + trial_rng.below(order.size() - i);
                std::swap(order[i], order[j]);
            }
            for (std::size_t i = 0; i < order.size(); ++i) {
                const auto& f = group.features[order[i]];
                auto& X = (static_cast<int>(i) < train_per_group) ? X_train : X_test;
                auto& y = (static_cast<int>(i) < train_per_group) ? y_train : y_test;
                for (int j : feature_subset) X.push_back(f[j]);
                y.push_back(group.class_label);
            }
        }

        const auto model = fit_softmax(X_train, y_train, dim, num_classes, l2);
        std::int64_t correct = 0;
        const std::int64_t n_test = static_cast<std::int64_t>(y_test.size());
        for (std::int64_t i = 0; i < n_test; ++i) {
            const std::span<const double> x(X_test.data() + i * dim, dim);
            if (model.predict(x) == y_test[i]) ++correct;
        }
        result.per_trial.push_back(static_cast<double>(correct) / static_cast<double>(n_test));
    }

    double mean = 0.0;
    for (double a : result.per_trial) mean += a;
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double a : result.per_trial) var += (a - mean) * (a - mean);
    result.mean_accuracy = mean;
    result.std_accuracy = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
    return result;
}

} // namespace hosim
