#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latlrr/solutions.hpp"

namespace latlrr {

struct SolverOptions {
    int max_iters = 20000;
    double penalty_init = 0.0;   // <= 0: auto, 1e-2 * ||X||_2
    double penalty_growth = 1.1; // >= 1
    double penalty_cap = 0.0;    // <= 0: auto, 1e6 * penalty_init
    double primal_tol = 1e-8;    // relative primal residual
    double change_tol = 1e-8;    // relative iterate change
    std::uint64_t seed = 0;
    bool random_init = false;    // seeded random start, to exhibit non-uniqueness
};

struct SolverDiagnostics {
    int iterations = 0;
    double final_primal_residual = 0.0;
    std::vector<double> objective_trace;
    bool converged = false;
};

// Proximal operator of the nuclear norm: shrink singular values by threshold.
Matrix svt(const Matrix& Y, double threshold);

// Linearized alternating-direction solver for
// min ||Z||_* + ||L||_* s.t. X = XZ + LX.
std::pair<LatlrrPair, SolverDiagnostics> solve_latlrr(const Matrix& X,
                                                      const SolverOptions& opts);

// Same scheme for min ||Z||_* s.t. A = XZ (unique minimizer X^+ A).
std::pair<Matrix, SolverDiagnostics> solve_lrr(const Matrix& X, const Matrix& A,
                                               const SolverOptions& opts);

} // namespace latlrr
