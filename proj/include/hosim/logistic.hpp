#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hosim {

// Row-major sample matrix: X[i*dim + j].

// Binary cross-entropy with an L2 penalty on the weights (never the
// intercept). params = (w_0..w_{d-1}, b). Returns the loss and writes the
// gradient when grad is non-empty.
double binary_logistic_loss_grad(std::span<const double> X, std::span<const int> y,
                                 std::int64_t dim, std::span<const double> params, double l2,
                                 std::span<double> grad);

struct LogisticModel {
    std::vector<double> weights;
    double intercept = 0.0;
    double l2 = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;

    double logit(std::span<const double> x) const;
    double prob(std::span<const double> x) const;
};

// Damped Newton to an absolute gradient-norm tolerance. Throws on
// single-class labels or non-convergence.
LogisticModel fit_binary_logistic(std::span<const double> X, std::span<const int> y,
                                  std::int64_t dim, double l2, double grad_tol = 1e-6,
                                  int max_iter = 200);

// Multinomial softmax; params = per-class (w_0..w_{d-1}, b), class-major.
double softmax_loss_grad(std::span<const double> X, std::span<const int> y, std::int64_t dim,
                         int num_classes, std::span<const double> params, double l2,
                         std::span<double> grad);

struct SoftmaxModel {
    int num_classes = 0;
    std::int64_t dim = 0;
    std::vector<double> params; // class-major (w..., b) blocks
    int iterations = 0;
    double gradient_norm = 0.0;

    std::vector<double> probabilities(std::span<const double> x) const;
    int predict(std::span<const double> x) const;
};

// Full-batch gradient descent with backtracking line search.
SoftmaxModel fit_softmax(std::span<const double> X, std::span<const int> y, std::int64_t dim,
                         int num_classes, double l2, double grad_tol = 1e-6,
                         int max_iter = 200000);

} // namespace hosim
