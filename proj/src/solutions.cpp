#include "latlrr/solutions.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "latlrr/random.hpp"
#include "latlrr/verify.hpp"

namespace latlrr {

namespace {

bool is_effectively_zero(const Matrix& A) {
    return A.size() == 0 || A.norm() == 0.0;
}

void require_in_range_of_columns(const Matrix& X, const Matrix& Xpinv,
                                 const Matrix& A, const ToleranceProfile& tol) {
    if ((X * (Xpinv * A) - A).norm() > tol.eq_rel_tol * A.norm())
        throw InfeasibleError("A is not in Range(X): XZ = A has no solution");
}

void require_in_range_of_rows(const Matrix& X, const Matrix& Xpinv,
                              const Matrix& A, const ToleranceProfile& tol) {
    if (((A * Xpinv) * X - A).norm() > tol.eq_rel_tol * A.norm())
        throw InfeasibleError("A is not in the row space of X: LX = A has no solution");
}

// Keep at most max_rank singular directions of S. The truncated factors stay
// inside the column/row spaces of S, so orthogonality side conditions survive.
Matrix clip_rank(const Matrix& S, int max_rank) {
    if (max_rank <= 0 || is_effectively_zero(S)) return Matrix::Zero(S.rows(), S.cols());
    Eigen::JacobiSVD<Matrix> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    int keep = std::min<int>(max_rank, static_cast<int>(s.size()));
    while (keep > 0 && s(keep - 1) <= 0.0) --keep;
    if (keep == 0) return Matrix::Zero(S.rows(), S.cols());
    return svd.matrixU().leftCols(keep) * s.head(keep).asDiagonal() *
           svd.matrixV().leftCols(keep).transpose();
}

} // namespace

Matrix lrr_rank_solution(const Matrix& X, const Matrix& A, const Matrix& S,
                         const ToleranceProfile& tol) {
    if (X.rows() != A.rows())
        throw DimensionError("lrr_rank_solution: X and A must have the same row count");
    SkinnySvd fx = skinny_svd(X, tol);
    Matrix Xpinv = fx.V * fx.sigma.cwiseInverse().asDiagonal() * fx.U.transpose();
    if (is_effectively_zero(A)) return Matrix::Zero(X.cols(), A.cols());
    require_in_range_of_columns(X, Xpinv, A, tol);

    SkinnySvd fa = skinny_svd(A, tol);
    if (S.rows() != X.cols() || S.cols() != fa.rank())
        throw DimensionError("lrr_rank_solution: S must be cols(X) x rank(A)");
    if ((fx.V.transpose() * S).norm() > tol.eq_rel_tol * std::max(1.0, S.norm()))
        throw std::invalid_argument("lrr_rank_solution: S violates V_X^T S = 0");

    return Xpinv * A + S * fa.V.transpose();
}

Matrix lrr_nuclear_solution(const Matrix& X, const Matrix& A,
                            const ToleranceProfile& tol) {
    if (X.rows() != A.rows())
        throw DimensionError("lrr_nuclear_solution: X and A must have the same row count");
    Matrix Xpinv = pseudo_inverse(X, tol);
    if (is_effectively_zero(A)) return Matrix::Zero(X.cols(), A.cols());
    require_in_range_of_columns(X, Xpinv, A, tol);
    return Xpinv * A;
}

Matrix feature_rank_solution(const Matrix& X, const Matrix& A, const Matrix& S,
                             const ToleranceProfile& tol) {
    if (X.cols() != A.cols())
        throw DimensionError("feature_rank_solution: X and A must have the same column count");
    SkinnySvd fx = skinny_svd(X, tol);
    Matrix Xpinv = fx.V * fx.sigma.cwiseInverse().asDiagonal() * fx.U.transpose();
    if (is_effectively_zero(A)) return Matrix::Zero(A.rows(), X.rows());
    require_in_range_of_rows(X, Xpinv, A, tol);

    SkinnySvd fa = skinny_svd(A, tol);
    if (S.rows() != fa.rank() || S.cols() != X.rows())
        throw DimensionError("feature_rank_solution: S must be rank(A) x rows(X)");
    if ((S * fx.U).norm() > tol.eq_rel_tol * std::max(1.0, S.norm()))
        throw std::invalid_argument("feature_rank_solution: S violates S U_X = 0");

    return A * Xpinv + fa.U * S;
}

LatlrrPair latlrr_rank_solution(const Matrix& X, const RankSolutionParams& p,
                                const ToleranceProfile& tol) {
    SkinnySvd f = skinny_svd(X, tol);
    const int r = f.rank();
    if (p.W_tilde.rows() != r || p.W_tilde.cols() != r)
        throw DimensionError("latlrr_rank_solution: W_tilde must be rank(X) x rank(X)");
    if (p.S1.rows() != X.cols() || p.S1.cols() != r)
        throw DimensionError("latlrr_rank_solution: S1 must be cols(X) x rank(X)");
    if (p.S2.rows() != r || p.S2.cols() != X.rows())
        throw DimensionError("latlrr_rank_solution: S2 must be rank(X) x rows(X)");
    if (!is_idempotent(p.W_tilde, tol))
        throw std::invalid_argument("latlrr_rank_solution: W_tilde is not idempotent");
    if ((f.V.transpose() * p.S1).norm() > tol.eq_rel_tol * std::max(1.0, p.S1.norm()))
        throw std::invalid_argument("latlrr_rank_solution: S1 violates V_X^T S1 = 0");
    if ((p.S2 * f.U).norm() > tol.eq_rel_tol * std::max(1.0, p.S2.norm()))
        throw std::invalid_argument("latlrr_rank_solution: S2 violates S2 U_X = 0");
    const int k = numerical_rank(p.W_tilde, tol);
    Matrix complement = Matrix::Identity(r, r) - p.W_tilde;
    if (numerical_rank(p.S1, tol) > k)
        throw std::invalid_argument("latlrr_rank_solution: rank(S1) exceeds rank(W_tilde)");
    if (numerical_rank(p.S2, tol) > numerical_rank(complement, tol))
        throw std::invalid_argument("latlrr_rank_solution: rank(S2) exceeds rank(I - W_tilde)");

    LatlrrPair out;
    out.Z = f.V * p.W_tilde * f.V.transpose() + p.S1 * p.W_tilde * f.V.transpose();
    Matrix scaled = f.sigma.asDiagonal() * complement;
    out.L = f.U * scaled * f.sigma.cwiseInverse().asDiagonal() * f.U.transpose() +
            f.U * scaled * p.S2;
    return out;
}

LatlrrPair latlrr_nuclear_solution(const Matrix& X, const NuclearSolutionParams& p,
                                   const ToleranceProfile& tol) {
    SkinnySvd f = skinny_svd(X, tol);
    const int r = f.rank();
    if (p.W_hat.rows() != r || p.W_hat.cols() != r)
        throw DimensionError("latlrr_nuclear_solution: W_hat must be rank(X) x rank(X)");
    BlockPartition part = block_partition(f.sigma, tol);
    if (!is_block_compatible(p.W_hat, part, tol))
        throw std::invalid_argument(
            "latlrr_nuclear_solution: W_hat is not block-compatible with Sigma_X");
    if (!is_psd(p.W_hat, tol))
        throw std::invalid_argument("latlrr_nuclear_solution: W_hat is not PSD");
    if (!is_psd(Matrix::Identity(r, r) - p.W_hat, tol))
        throw std::invalid_argument("latlrr_nuclear_solution: I - W_hat is not PSD");

    LatlrrPair out;
    out.Z = f.V * p.W_hat * f.V.transpose();
    out.L = f.U * (Matrix::Identity(r, r) - p.W_hat) * f.U.transpose();
    return out;
}

Matrix sample_idempotent(int r, int k, double cond_cap, std::uint64_t seed) {
    if (r < 0 || k < 0 || k > r)
        throw std::invalid_argument("sample_idempotent: need 0 <= k <= r");
    if (cond_cap <= 1.0)
        throw std::invalid_argument("sample_idempotent: cond_cap must exceed 1");
    if (k == r) return Matrix::Identity(r, r);
    if (k == 0) return Matrix::Zero(r, r);

    Rng rng(seed);
    Matrix Q1 = random_orthogonal(r, rng);
    Matrix Q2 = random_orthogonal(r, rng);
    std::uniform_real_distribution<double> dist(1.0, cond_cap);
    Vector d(r);
    for (int i = 0; i < r; ++i) d(i) = dist(rng);

    Matrix P = Q1 * d.asDiagonal() * Q2.transpose();
    Matrix Pinv = Q2 * d.cwiseInverse().asDiagonal() * Q1.transpose();
    Matrix proj = Matrix::Zero(r, r);
    proj.topLeftCorner(k, k).setIdentity();
    return P * proj * Pinv;
}

Matrix sample_nuclear_W(const BlockPartition& partition, std::uint64_t seed) {
    if (partition.groups.empty())
        throw std::invalid_argument("sample_nuclear_W: empty partition");
    const int r = partition.size();
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Matrix W = Matrix::Zero(r, r);
    for (const auto& [first, len] : partition.groups) {
        Matrix Q = random_orthogonal(len, rng);
        Vector lambda(len);
        for (int i = 0; i < len; ++i) lambda(i) = unit(rng);
        W.block(first, first, len, len) = Q * lambda.asDiagonal() * Q.transpose();
    }
    return W;
}

std::pair<Matrix, Matrix> sample_side_matrices(const Matrix& X,
                                               const Matrix& W_tilde,
                                               std::uint64_t seed,
                                               const ToleranceProfile& tol) {
    SkinnySvd f = skinny_svd(X, tol);
    const int r = f.rank();
    if (W_tilde.rows() != r || W_tilde.cols() != r)
        throw DimensionError("sample_side_matrices: W_tilde must be rank(X) x rank(X)");
    const int k = numerical_rank(W_tilde, tol);
    const int k_comp = numerical_rank(Matrix::Identity(r, r) - W_tilde, tol);

    Rng rng(seed);
    const int n = static_cast<int>(X.cols());
    const int m = static_cast<int>(X.rows());
    Matrix S1 = clip_rank(
        (Matrix::Identity(n, n) - f.V * f.V.transpose()) * gaussian_matrix(n, r, rng), k);
    Matrix S2 = clip_rank(
        gaussian_matrix(r, m, rng) * (Matrix::Identity(m, m) - f.U * f.U.transpose()),
        k_comp);
    return {S1, S2};
}

InclusionReport lrr_inclusion_check(const Matrix& X, const ToleranceProfile& tol,
                                    std::uint64_t seed, int samples) {
    SkinnySvd f = skinny_svd(X, tol);
    const int n = static_cast<int>(X.cols());
    Matrix Zstar = pseudo_inverse(X, tol) * X;
    Matrix L0 = Matrix::Zero(X.rows(), X.rows());

    InclusionReport rep;
    rep.nuclear_pass = certify_nuclear_optimal(X, Zstar, L0, tol);

    Rng rng(seed);
    Matrix proj = Matrix::Identity(n, n) - f.V * f.V.transpose();
    for (int i = 0; i < samples; ++i) {
        Matrix S = proj * gaussian_matrix(n, f.rank(), rng);
        Matrix Z = lrr_rank_solution(X, X, S, tol);
        ++rep.rank_samples;
        if (certify_rank_optimal(X, Z, L0, tol)) ++rep.rank_passes;
    }
    return rep;
}

} // namespace latlrr
