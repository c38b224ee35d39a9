#include "hosim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hosim/errors.hpp"

namespace hosim {

double normal_upper_tail(double z) {
    if (std::isinf(z)) return z > 0 ? 0.0 : 1.0;
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

namespace {

double lchoose(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace

double fisher_exact_upper(std::int64_t x1, std::int64_t n1, std::int64_t x2, std::int64_t n2) {
    if (n1 <= 0 || n2 <= 0) throw DataError("fisher_exact_upper: empty margins");
    if (x1 < 0 || x2 < 0 || x1 > n1 || x2 > n2) throw DataError("fisher_exact_upper: bad counts");
    const std::int64_t total = n1 + n2;
    const std::int64_t successes = x1 + x2;
    const std::int64_t lo = std::max<std::int64_t>(x2, std::max<std::int64_t>(0, successes - n1));
    const std::int64_t hi = std::min(successes, n2);

    // collect log pmf terms, then sum from the smallest for accuracy
    std::vector<double> terms;
    terms.reserve(hi - lo + 1);
    const double denom = lchoose(static_cast<double>(total), static_cast<double>(n2));
    for (std::int64_t j = lo; j <= hi; ++j) {
        const double t = lchoose(static_cast<double>(successes), static_cast<double>(j)) +
                         lchoose(static_cast<double>(total - successes), static_cast<double>(n2 - j)) -
                         denom;
        terms.push_back(t);
    }
    std::sort(terms.begin(), terms.end());
    double p = 0.0;
    for (double t : terms) p += std::exp(t);
    return std::min(p, 1.0);
}

double z_test_upper(std::int64_t x1, std::int64_t n1, std::int64_t x2, std::int64_t n2) {
    if (n1 <= 0 || n2 <= 0) throw DataError("z_test_upper: empty margins");
    const double p1 = static_cast<double>(x1) / static_cast<double>(n1);
    const double p2 = static_cast<double>(x2) / static_cast<double>(n2);
    const double var = p1 * (1.0 - p1) / static_cast<double>(n2);
    if (var == 0.0) {
        if (p2 > p1) return 0.0;
        if (p2 < p1) return 1.0;
        return 0.5;
    }
    return normal_upper_tail((p2 - p1) / std::sqrt(var));
}

TestResult compare_closure(const ClosureRow& c, const ClosureRow& c_prime) {
    if (c.instances <= 0 || c_prime.instances <= 0) {
        throw DataError("compare_closure: both configurations need instances");
    }
    TestResult r;
    if (std::max(c.closures, c_prime.closures) <= 5) {
        r.method = TestMethod::FisherExact;
        r.p_value = fisher_exact_upper(c.closures, c.instances, c_prime.closures, c_prime.instances);
    } else {
        r.method = TestMethod::ZTest;
        r.p_value = z_test_upper(c.closures, c.instances, c_prime.closures, c_prime.instances);
    }
    r.significant = r.p_value < kSignificanceLevel;
    return r;
}

} // namespace hosim
