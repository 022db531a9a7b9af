#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latlrr/core.hpp"

namespace latlrr {

// Free parameters of one member of the rank-formulation solution family:
// Z = V_X W~ V_X^T + S1 W~ V_X^T,
// L = U_X Sigma (I - W~) Sigma^{-1} U_X^T + U_X Sigma (I - W~) S2,
// with W~ idempotent, V_X^T S1 = 0, S2 U_X = 0, rank(S1) <= rank(W~),
// rank(S2) <= rank(I - W~).
struct RankSolutionParams {
    Matrix W_tilde; // r x r
    Matrix S1;      // n x r
    Matrix S2;      // r x m
};

// Free parameter of one member of the nuclear-norm solution family:
// Z = V_X W^ V_X^T, L = U_X (I - W^) U_X^T, with W^ block-compatible with
// the equal-sigma partition and both W^ and I - W^ PSD.
struct NuclearSolutionParams {
    Matrix W_hat; // r x r
    BlockPartition partition;
};

struct LatlrrPair {
    Matrix Z; // n x n
    Matrix L; // m x m
};

// Z = X^+ A + S V_A^T for the rank-minimization problem min rank(Z) s.t. XZ = A.
// Requires A in Range(X) and V_X^T S = 0.
Matrix lrr_rank_solution(const Matrix& X, const Matrix& A, const Matrix& S,
                         const ToleranceProfile& tol);

// Unique minimizer X^+ A of min ||Z||_* s.t. XZ = A.
Matrix lrr_nuclear_solution(const Matrix& X, const Matrix& A,
                            const ToleranceProfile& tol);

// L = A X^+ + U_A S for min rank(L) s.t. LX = A. Requires A X^+ X = A and
// S U_X = 0.
Matrix feature_rank_solution(const Matrix& X, const Matrix& A, const Matrix& S,
                             const ToleranceProfile& tol);

LatlrrPair latlrr_rank_solution(const Matrix& X, const RankSolutionParams& p,
                                const ToleranceProfile& tol);

LatlrrPair latlrr_nuclear_solution(const Matrix& X, const NuclearSolutionParams& p,
                                   const ToleranceProfile& tol);

// W~ = P diag(I_k, 0) P^{-1} with cond(P) <= cond_cap.
Matrix sample_idempotent(int r, int k, double cond_cap, std::uint64_t seed);

// Block-diagonal W^ with per-block Q diag(lambda) Q^T, lambda uniform in [0, 1].
Matrix sample_nuclear_W(const BlockPartition& partition, std::uint64_t seed);

// (S1, S2) satisfying the four side conditions for the given X and W~.
std::pair<Matrix, Matrix> sample_side_matrices(const Matrix& X,
                                               const Matrix& W_tilde,
                                               std::uint64_t seed,
                                               const ToleranceProfile& tol);

// Solution-set inclusion evidence: LRR optima, paired with L = 0, certified
// against the corresponding LatLRR problem.
struct InclusionReport {
    int rank_samples = 0;
    int rank_passes = 0;
    bool nuclear_pass = false;
    bool all_ok() const { return nuclear_pass && rank_passes == rank_samples; }
};

InclusionReport lrr_inclusion_check(const Matrix& X, const ToleranceProfile& tol,
                                    std::uint64_t seed = 0, int samples = 5);

} // namespace latlrr
