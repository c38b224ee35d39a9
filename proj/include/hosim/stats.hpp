#pragma once

#include <cstdint>

#include "hosim/closure.hpp"

namespace hosim {

enum class TestMethod { FisherExact, ZTest };

struct TestResult {
    TestMethod method = TestMethod::ZTest;
    double p_value = 1.0;
    bool significant = false; // at the 1e-5 level
};

inline constexpr double kSignificanceLevel = 1e-5;

// Standard normal upper tail P(Z >= z).
double normal_upper_tail(double z);

// One-sided Fisher's exact test for rate(c) < rate(c'): upper hypergeometric
// tail of x2 successes in n2 draws from a pool with x1+x2 successes among
// n1+n2 items.
double fisher_exact_upper(std::int64_t x1, std::int64_t n1, std::int64_t x2, std::int64_t n2);

// One-sample z statistic with the first configuration's rate as the null:
// z = (p2 - p1) / sqrt(p1 (1-p1) / n2), upper tail. Degenerate null
// variance (p1 in {0,1}) resolves by sign of p2 - p1.
double z_test_upper(std::int64_t x1, std::int64_t n1, std::int64_t x2, std::int64_t n2);

// Tests whether configuration c closes less often than c'. Fisher's exact
// test when max(x_c, x_c') <= 5, otherwise the z-test.
TestResult compare_closure(const ClosureRow& c, const ClosureRow& c_prime);

} // namespace hosim
