#pragma once

#include <cstdint>
#include <vector>

#include "hosim/errors.hpp"

namespace hosim {

struct PRCurve {
    std::vector<std::pair<double, double>> points; // (recall, precision)
    double auc_pr = 0.0;                           // average precision
    double prevalence = 0.0;                       // positives / total
};

// Average-precision integration over labels given in rank order (best
// first): precision summed at each positive's rank, divided by the number
// of positives. Needs at least one positive and one negative label.
PRCurve auc_pr(const std::vector<bool>& ranked_labels);

// AUC-PR over the random baseline, which equals the prevalence.
double relative_auc_pr(const PRCurve& curve);

} // namespace hosim
