#include "hosim/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "hosim/errors.hpp"

namespace hosim {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void scale(std::span<double> a, double s) {
    for (double& x : a) x *= s;
}

// y += s * x
void axpy(std::span<double> y, double s, std::span<const double> x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

int default_iters(std::int64_t n, int max_iter) {
    if (max_iter > 0) return max_iter;
    return static_cast<int>(std::min<std::int64_t>(10 * n + 100, 100000));
}

} // namespace

SolveReport minres(std::int64_t n, const LinOp& apply, std::span<const double> b,
                   std::span<double> x, double rel_tol, int max_iter) {
    SolveReport rep;
    rep.relative_residual = 1.0;
    std::fill(x.begin(), x.end(), 0.0);
    const double beta1 = norm2(b);
    if (beta1 == 0.0) {
        rep.converged = true;
        rep.relative_residual = 0.0;
        return rep;
    }

    std::vector<double> v(b.begin(), b.end());
    scale(v, 1.0 / beta1);
    std::vector<double> v_old(n, 0.0), p(n, 0.0);
    std::vector<double> w(n, 0.0), w_old(n, 0.0), w_new(n, 0.0);

    double eta = beta1;
    double gamma = 1.0, gamma_old = 1.0;
    double sigma = 0.0, sigma_old = 0.0;
    double beta = 0.0;
    double res = beta1;

    const int iters = default_iters(n, max_iter);
    for (int k = 1; k <= iters; ++k) {
        // Lanczos step
        apply(v, p);
        const double alpha = dot(v, p);
        for (std::int64_t i = 0; i < n; ++i) p[i] -= alpha * v[i] + beta * v_old[i];
        const double beta_new = norm2(p);

        // previous two Givens rotations applied to the new tridiagonal column
        const double delta = gamma * alpha - gamma_old * sigma * beta;
        const double rho1 = std::sqrt(delta * delta + beta_new * beta_new);
        const double rho2 = sigma * alpha + gamma_old * gamma * beta;
        const double rho3 = sigma_old * beta;
        if (rho1 == 0.0) break; // exact breakdown: solution already attained
        const double gamma_new = delta / rho1;
        const double sigma_new = beta_new / rho1;

        for (std::int64_t i = 0; i < n; ++i) {
            w_new[i] = (v[i] - rho3 * w_old[i] - rho2 * w[i]) / rho1;
        }
        axpy(x, gamma_new * eta, w_new);
        res *= std::abs(sigma_new);
        eta = -sigma_new * eta;

        rep.iterations = k;
        rep.relative_residual = res / beta1;
        if (rep.relative_residual <= rel_tol) {
            rep.converged = true;
            return rep;
        }
        if (beta_new == 0.0) break;

        std::swap(v_old, v);
        std::swap(v, p);
        scale(v, 1.0 / beta_new);
        // p now holds the old v_old storage; contents overwritten next loop
        std::swap(w_old, w);
        std::swap(w, w_new);
        gamma_old = gamma;
        gamma = gamma_new;
        sigma_old = sigma;
        sigma = sigma_new;
        beta = beta_new;
    }
    rep.converged = rep.relative_residual <= rel_tol;
    return rep;
}

SolveReport bicgstab(std::int64_t n, const LinOp& apply, std::span<const double> b,
                     std::span<double> x, double rel_tol, int max_iter) {
    SolveReport rep;
    rep.relative_residual = 1.0;
    std::fill(x.begin(), x.end(), 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        rep.converged = true;
        rep.relative_residual = 0.0;
        return rep;
    }

    std::vector<double> r(b.begin(), b.end());
    const std::vector<double> r_hat(r);
    std::vector<double> p(n, 0.0), v(n, 0.0), s(n, 0.0), t(n, 0.0);
    double rho_old = 1.0, alpha = 1.0, omega = 1.0;

    const int iters = default_iters(n, max_iter);
    for (int k = 1; k <= iters; ++k) {
        rep.iterations = k;
        const double rho = dot(r_hat, r);
        if (rho == 0.0) break; // serious breakdown
        if (k == 1) {
            p = r;
        } else {
            const double beta = (rho / rho_old) * (alpha / omega);
            for (std::int64_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        apply(p, v);
        const double rhv = dot(r_hat, v);
        if (rhv == 0.0) break;
        alpha = rho / rhv;
        for (std::int64_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (norm2(s) / bnorm <= rel_tol) {
            axpy(x, alpha, p);
            rep.relative_residual = norm2(s) / bnorm;
            rep.converged = true;
            return rep;
        }
        apply(s, t);
        const double tt = dot(t, t);
        if (tt == 0.0) break;
        omega = dot(t, s) / tt;
        for (std::int64_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i] + omega * s[i];
            r[i] = s[i] - omega * t[i];
        }
        rep.relative_residual = norm2(r) / bnorm;
        if (rep.relative_residual <= rel_tol) {
            rep.converged = true;
            return rep;
        }
        if (omega == 0.0) break;
        rho_old = rho;
    }
    return rep;
}

SolveReport lsqr(std::int64_t m, std::int64_t n, const LinOp& apply, const LinOp& apply_t,
                 std::span<const double> b, std::span<double> x, double tol, int max_iter) {
    SolveReport rep;
    std::fill(x.begin(), x.end(), 0.0);

    std::vector<double> u(b.begin(), b.end());
    double beta = norm2(u);
    if (beta == 0.0) {
        rep.converged = true;
        return rep;
    }
    scale(u, 1.0 / beta);

    std::vector<double> v(n, 0.0);
    apply_t(u, v);
    double alpha = norm2(v);
    if (alpha == 0.0) {
        rep.converged = true; // b orthogonal to range(A): x = 0 is optimal
        return rep;
    }
    scale(v, 1.0 / alpha);

    std::vector<double> w(v);
    std::vector<double> tmp_m(m, 0.0), tmp_n(n, 0.0);
    double phibar = beta, rhobar = alpha;
    double anorm2 = alpha * alpha;
    const double bnorm = beta;

    const int iters = default_iters(std::max(m, n), max_iter);
    for (int k = 1; k <= iters; ++k) {
        rep.iterations = k;
        // bidiagonalization
        apply(v, tmp_m);
        for (std::int64_t i = 0; i < m; ++i) u[i] = tmp_m[i] - alpha * u[i];
        beta = norm2(u);
        if (beta > 0.0) scale(u, 1.0 / beta);
        anorm2 += beta * beta;

        apply_t(u, tmp_n);
        for (std::int64_t i = 0; i < n; ++i) v[i] = tmp_n[i] - beta * v[i];
        alpha = norm2(v);
        if (alpha > 0.0) scale(v, 1.0 / alpha);
        anorm2 += alpha * alpha;

        // orthogonal transformation
        const double rho = std::hypot(rhobar, beta);
        const double c = rhobar / rho;
        const double s = beta / rho;
        const double theta = s * alpha;
        rhobar = -c * alpha;
        const double phi = c * phibar;
        phibar = s * phibar;

        axpy(x, phi / rho, w);
        for (std::int64_t i = 0; i < n; ++i) w[i] = v[i] - (theta / rho) * w[i];

        // ||r|| = phibar, ||A' r|| = phibar * alpha * |c|
        const double rnorm = phibar;
        const double arnorm = phibar * alpha * std::abs(c);
        const double anorm = std::sqrt(anorm2);
        rep.relative_residual = rnorm / bnorm;
        const bool test1 = rnorm <= tol * bnorm + tol * anorm * norm2(x);
        const bool test2 = anorm * rnorm == 0.0 || arnorm / (anorm * rnorm) <= tol;
        if (test1 || test2) {
            rep.converged = true;
            return rep;
        }
        if (alpha == 0.0 || beta == 0.0) {
            rep.converged = true;
            return rep;
        }
    }
    return rep;
}

double power_iteration_sym(std::int64_t n, const LinOp& apply, double rel_tol, int max_iter) {
    if (n == 0) return 0.0;
    std::vector<double> v(n), av(n, 0.0);
    for (std::int64_t i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i % 7);
    scale(v, 1.0 / norm2(v));

    double sigma = 0.0;
    for (int k = 0; k < max_iter; ++k) {
        apply(v, av);
        const double s = norm2(av);
        if (s == 0.0) return 0.0;
        std::swap(v, av);
        scale(v, 1.0 / s);
        if (k > 0 && std::abs(s - sigma) <= rel_tol * s) return s;
        sigma = s;
    }
    return sigma;
}

} // namespace hosim
