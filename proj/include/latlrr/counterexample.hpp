#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latlrr/solutions.hpp"
#include "latlrr/verify.hpp"

namespace latlrr {

// Evidence that one nuclear-norm optimum is not a rank optimum: the pair is
// certified nuclear-optimal yet its rank objective exceeds rank(X).
struct CounterexampleReport {
    std::string x_descriptor;
    Matrix W_hat_used;
    LatlrrPair pair;
    double nuclear_objective = 0.0;
    int rank_objective = 0;
    int rank_of_x = 0;
    int gap = 0; // rank_objective - rank_of_x
    double idempotency_residual = 0.0;
    bool nuclear_optimal = false;
    bool verdict = false; // gap > 0 and nuclear_optimal
};

// The fixed witness W^ = 1/2 I: nuclear objective rank(X), rank objective
// 2 rank(X).
CounterexampleReport build_canonical_counterexample(const Matrix& X,
                                                    const ToleranceProfile& tol);

// Samples block-compatible PSD W^ until its idempotency residual is at least
// min_idem_residual, then certifies the induced pair.
CounterexampleReport build_random_counterexample(const Matrix& X,
                                                 double min_idem_residual,
                                                 std::uint64_t seed,
                                                 const ToleranceProfile& tol);

struct NonUniquenessExhibit {
    std::vector<LatlrrPair> members;      // members[0], members[1] are W^ = I, 1/2 I
    std::vector<bool> certified;          // per-member nuclear optimality
    Matrix pairwise_z_distance;           // ||Z_i - Z_j||_F
    double distinctness_floor = 0.0;      // 0.01 * ||X^+ X||_F
};

// `count` distinct certified nuclear optima, always including W^ = I and
// W^ = 1/2 I.
NonUniquenessExhibit non_uniqueness_exhibit(const Matrix& X, int count,
                                            std::uint64_t seed,
                                            const ToleranceProfile& tol);

} // namespace latlrr
