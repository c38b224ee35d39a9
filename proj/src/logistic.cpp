#include "hosim/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "hosim/errors.hpp"

namespace hosim {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

double nrm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// in-place LU solve with partial pivoting; a is n x n row-major
void solve_dense(std::vector<double>& a, std::vector<double>& b, std::int64_t n) {
    std::vector<std::int64_t> piv(n);
    for (std::int64_t i = 0; i < n; ++i) piv[i] = i;
    for (std::int64_t col = 0; col < n; ++col) {
        std::int64_t best = col;
        for (std::int64_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[best * n + col])) best = r;
        }
        if (a[best * n + col] == 0.0) throw NumericError("singular Newton system");
        if (best != col) {
            for (std::int64_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[best * n + j]);
            std::swap(b[col], b[best]);
        }
        const double d = a[col * n + col];
        for (std::int64_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / d;
            if (f == 0.0) continue;
            for (std::int64_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
            b[r] -= f * b[col];
        }
    }
    for (std::int64_t r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (std::int64_t j = r + 1; j < n; ++j) s -= a[r * n + j] * b[j];
        b[r] = s / a[r * n + r];
    }
}

} // namespace

double binary_logistic_loss_grad(std::span<const double> X, std::span<const int> y,
                                 std::int64_t dim, std::span<const double> params, double l2,
                                 std::span<double> grad) {
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    const double b = params[dim];
    double loss = 0.0;
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        const double* x = X.data() + i * dim;
        double z = b;
        for (std::int64_t j = 0; j < dim; ++j) z += params[j] * x[j];
        loss += softplus(z) - (y[i] ? z : 0.0);
        if (!grad.empty()) {
            const double r = sigmoid(z) - static_cast<double>(y[i]);
            for (std::int64_t j = 0; j < dim; ++j) grad[j] += r * x[j];
            grad[dim] += r;
        }
    }
    for (std::int64_t j = 0; j < dim; ++j) {
        loss += 0.5 * l2 * params[j] * params[j];
        if (!grad.empty()) grad[j] += l2 * params[j];
    }
    return loss;
}

double LogisticModel::logit(std::span<const double> x) const {
    double z = intercept;
    for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * x[j];
    return z;
}

double LogisticModel::prob(std::span<const double> x) const { return sigmoid(logit(x)); }

LogisticModel fit_binary_logistic(std::span<const double> X, std::span<const int> y,
                                  std::int64_t dim, double l2, double grad_tol, int max_iter) {
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    const auto pos = std::count(y.begin(), y.end(), 1);
    if (pos == 0 || pos == n) {
        throw DataError("fit_binary_logistic: labels are single-class");
    }

    const std::int64_t p = dim + 1;
    std::vector<double> params(p, 0.0), grad(p, 0.0);
    double loss = binary_logistic_loss_grad(X, y, dim, params, l2, grad);

    LogisticModel model;
    model.l2 = l2;
    for (int it = 1; it <= max_iter; ++it) {
        const double gnorm = nrm2(grad);
        model.iterations = it - 1;
        model.gradient_norm = gnorm;
        if (gnorm <= grad_tol) {
            model.weights.assign(params.begin(), params.begin() + dim);
            model.intercept = params[dim];
            return model;
        }

        // Hessian = X^T S X (+ l2 on the weight block), intercept column last
        std::vector<double> hess(p * p, 0.0);
        for (std::int64_t i = 0; i < n; ++i) {
            const double* x = X.data() + i * dim;
            double z = params[dim];
            for (std::int64_t j = 0; j < dim; ++j) z += params[j] * x[j];
            const double s = sigmoid(z);
            const double w = std::max(s * (1.0 - s), 1e-12);
            for (std::int64_t a = 0; a < dim; ++a) {
                for (std::int64_t b2 = a; b2 < dim; ++b2) hess[a * p + b2] += w * x[a] * x[b2];
                hess[a * p + dim] += w * x[a];
            }
            hess[dim * p + dim] += w;
        }
        for (std::int64_t a = 0; a < dim; ++a) hess[a * p + a] += l2;
        for (std::int64_t a = 0; a < p; ++a) {
            for (std::int64_t b2 = 0; b2 < a; ++b2) hess[a * p + b2] = hess[b2 * p + a];
        }

        std::vector<double> step(grad.begin(), grad.end());
        solve_dense(hess, step, p);

        // backtracking on the Newton direction
        double t = 1.0;
        std::vector<double> trial(p);
        for (int ls = 0; ls < 60; ++ls) {
            for (std::int64_t j = 0; j < p; ++j) trial[j] = params[j] - t * step[j];
            const double trial_loss = binary_logistic_loss_grad(X, y, dim, trial, l2, {});
            if (trial_loss <= loss) break;
            t *= 0.5;
        }
        for (std::int64_t j = 0; j < p; ++j) params[j] -= t * step[j];
        loss = binary_logistic_loss_grad(X, y, dim, params, l2, grad);
    }
    throw NumericError("fit_binary_logistic: no convergence within " + std::to_string(max_iter) +
                       " Newton steps (gradient norm " + std::to_string(nrm2(grad)) + ")");
}

double softmax_loss_grad(std::span<const double> X, std::span<const int> y, std::int64_t dim,
                         int num_classes, std::span<const double> params, double l2,
                         std::span<double> grad) {
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    const std::int64_t block = dim + 1;
    double loss = 0.0;
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);

    std::vector<double> z(num_classes);
    for (std::int64_t i = 0; i < n; ++i) {
        const double* x = X.data() + i * dim;
        double zmax = -1e300;
        for (int k = 0; k < num_classes; ++k) {
            const double* wk = params.data() + k * block;
            double s = wk[dim];
            for (std::int64_t j = 0; j < dim; ++j) s += wk[j] * x[j];
            z[k] = s;
            zmax = std::max(zmax, s);
        }
        double denom = 0.0;
        for (int k = 0; k < num_classes; ++k) denom += std::exp(z[k] - zmax);
        loss += std::log(denom) + zmax - z[y[i]];
        if (!grad.empty()) {
            for (int k = 0; k < num_classes; ++k) {
                const double pk = std::exp(z[k] - zmax) / denom;
                const double r = pk - (y[i] == k ? 1.0 : 0.0);
                double* gk = grad.data() + k * block;
                for (std::int64_t j = 0; j < dim; ++j) gk[j] += r * x[j];
                gk[dim] += r;
            }
        }
    }
    for (int k = 0; k < num_classes; ++k) {
        const double* wk = params.data() + k * block;
        for (std::int64_t j = 0; j < dim; ++j) {
            loss += 0.5 * l2 * wk[j] * wk[j];
            if (!grad.empty()) grad[k * block + j] += l2 * wk[j];
        }
    }
    return loss;
}

std::vector<double> SoftmaxModel::probabilities(std::span<const double> x) const {
    const std::int64_t block = dim + 1;
    std::vector<double> z(num_classes);
    double zmax = -1e300;
    for (int k = 0; k < num_classes; ++k) {
        const double* wk = params.data() + k * block;
        double s = wk[dim];
        for (std::int64_t j = 0; j < dim; ++j) s += wk[j] * x[j];
        z[k] = s;
        zmax = std::max(zmax, s);
    }
    double denom = 0.0;
    for (int k = 0; k < num_classes; ++k) {
        z[k] = std::exp(z[k] - zmax);
        denom += z[k];
    }
    for (int k = 0; k < num_classes; ++k) z[k] /= denom;
    return z;
}

int SoftmaxModel::predict(std::span<const double> x) const {
    const auto p = probabilities(x);
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

SoftmaxModel fit_softmax(std::span<const double> X, std::span<const int> y, std::int64_t dim,
                         int num_classes, double l2, double grad_tol, int max_iter) {
    if (num_classes < 2) throw DataError("fit_softmax: need at least two classes");
    const std::int64_t p = static_cast<std::int64_t>(num_classes) * (dim + 1);
    std::vector<double> params(p, 0.0), grad(p, 0.0), trial(p);
    double loss = softmax_loss_grad(X, y, dim, num_classes, params, l2, grad);

    SoftmaxModel model;
    model.num_classes = num_classes;
    model.dim = dim;
    double step = 1.0;
    for (int it = 1; it <= max_iter; ++it) {
        const double gnorm = nrm2(grad);
        model.iterations = it - 1;
        model.gradient_norm = gnorm;
        if (gnorm <= grad_tol) {
            model.params = params;
            return model;
        }
        // Armijo backtracking, remembering the last workable step size
        step *= 2.0;
        double trial_loss = 0.0;
        for (int ls = 0; ls < 80; ++ls) {
            for (std::int64_t j = 0; j < p; ++j) trial[j] = params[j] - step * grad[j];
            trial_loss = softmax_loss_grad(X, y, dim, num_classes, trial, l2, {});
            if (trial_loss <= loss - 1e-4 * step * gnorm * gnorm) break;
            step *= 0.5;
        }
        params.swap(trial);
        loss = softmax_loss_grad(X, y, dim, num_classes, params, l2, grad);
        (void)trial_loss;
    }
    throw NumericError("fit_softmax: no convergence within " + std::to_string(max_iter) +
                       " iterations (gradient norm " + std::to_string(nrm2(grad)) + ")");
}

} // namespace hosim
