#include "hosim/evaluation.hpp"

namespace hosim {

PRCurve auc_pr(const std::vector<bool>& ranked_labels) {
    const std::int64_t n = static_cast<std::int64_t>(ranked_labels.size());
    std::int64_t positives = 0;
    for (bool l : ranked_labels) positives += l;
    if (positives == 0 || positives == n) {
        throw DataError("auc_pr: labels must contain both classes");
    }

    PRCurve curve;
    curve.prevalence = static_cast<double>(positives) / static_cast<double>(n);
    curve.points.reserve(positives);
    std::int64_t hits = 0;
    double ap = 0.0;
    for (std::int64_t r = 0; r < n; ++r) {
        if (!ranked_labels[r]) continue;
        ++hits;
        const double precision = static_cast<double>(hits) / static_cast<double>(r + 1);
        const double recall = static_cast<double>(hits) / static_cast<double>(positives);
        ap += precision;
        curve.points.emplace_back(recall, precision);
    }
    curve.auc_pr = ap / static_cast<double>(positives);
    return curve;
}

double relative_auc_pr(const PRCurve& curve) {
    if (curve.prevalence <= 0.0) throw DataError("relative_auc_pr: zero prevalence");
    return curve.auc_pr / curve.prevalence;
}

} // namespace hosim
