#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hosim {

// y = M x. Operators capture their own structure; solvers never see a matrix.
using LinOp = std::function<void(std::span<const double>, std::span<double>)>;

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double relative_residual = 0.0;
};

// Symmetric (possibly indefinite) systems. x is overwritten with the
// solution starting from zero.
SolveReport minres(std::int64_t n, const LinOp& apply, std::span<const double> b,
                   std::span<double> x, double rel_tol = 1e-8, int max_iter = 0);

// General square systems.
SolveReport bicgstab(std::int64_t n, const LinOp& apply, std::span<const double> b,
                     std::span<double> x, double rel_tol = 1e-8, int max_iter = 0);

// Least squares min ||A x - b||_2 for rectangular A (m x n); needs the
// transpose apply as well. Stops on the standard compatible/incompatible
// system criteria with atol = btol = tol.
SolveReport lsqr(std::int64_t m, std::int64_t n, const LinOp& apply, const LinOp& apply_t,
                 std::span<const double> b, std::span<double> x, double tol = 1e-3,
                 int max_iter = 0);

// Largest singular value of a symmetric operator (|lambda|_max) by power
// iteration with a fixed deterministic start vector.
double power_iteration_sym(std::int64_t n, const LinOp& apply, double rel_tol = 1e-6,
                           int max_iter = 10000);

} // namespace hosim
