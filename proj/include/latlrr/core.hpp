#pragma once

#include <utility>
#include <vector>

#include "latlrr/types.hpp"

namespace latlrr {

// SVD retaining only the singular values above the relative rank cutoff,
// together with the matching singular vectors.
struct SkinnySvd {
    Matrix U;     // m x r, orthonormal columns
    Vector sigma; // length r, positive, non-increasing
    Matrix V;     // n x r, orthonormal columns

    int rank() const { return static_cast<int>(sigma.size()); }
    Matrix reconstruct() const { return U * sigma.asDiagonal() * V.transpose(); }
};

// Contiguous grouping of singular-value indices into near-equal clusters.
// groups[b] = (first index, length), covering 0..r-1 in order.
struct BlockPartition {
    std::vector<std::pair<int, int>> groups;

    int size() const;
    int group_count() const { return static_cast<int>(groups.size()); }
};

SkinnySvd skinny_svd(const Matrix& X, const ToleranceProfile& tol);

Matrix pseudo_inverse(const Matrix& X, const ToleranceProfile& tol);

int numerical_rank(const Matrix& X, const ToleranceProfile& tol);

double nuclear_norm(const Matrix& X);

// ||W^2 - W||_F relative to max(1, ||W||_F); the predicate thresholds this.
double idempotency_residual(const Matrix& W);
bool is_idempotent(const Matrix& W, const ToleranceProfile& tol);

// Symmetric with eigenvalues >= -psd_tol. Asymmetric matrices are rejected.
bool is_psd(const Matrix& W, const ToleranceProfile& tol);

// Chains consecutive indices whose gap is <= sigma_group_rel_tol * sigma[0].
BlockPartition block_partition(const Vector& sigma, const ToleranceProfile& tol);

bool is_block_compatible(const Matrix& W, const BlockPartition& part,
                         const ToleranceProfile& tol);

} // namespace latlrr
