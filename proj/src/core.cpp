#include "latlrr/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace latlrr {

void require_finite(const Matrix& X, const char* name) {
    if (!X.allFinite())
        throw NonFiniteError(std::string(name) + " contains NaN or Inf");
}

void require_square(const Matrix& X, const char* name) {
    if (X.rows() != X.cols())
        throw DimensionError(std::string(name) + " must be square, got " +
                             std::to_string(X.rows()) + "x" +
                             std::to_string(X.cols()));
}

int BlockPartition::size() const {
    int n = 0;
    for (const auto& [first, len] : groups) {
        (void)first;
        n += len;
    }
    return n;
}

SkinnySvd skinny_svd(const Matrix& X, const ToleranceProfile& tol) {
    require_finite(X, "X");
    Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || s(0) <= 0.0)
        throw ZeroMatrixError("skinny_svd: all-zero matrix has no invertible Sigma");

    const double cutoff = tol.rank_rel_tol * s(0);
    int r = 0;
    while (r < s.size() && s(r) > cutoff) ++r;

    SkinnySvd out;
    out.U = svd.matrixU().leftCols(r);
    out.sigma = s.head(r);
    out.V = svd.matrixV().leftCols(r);
    return out;
}

Matrix pseudo_inverse(const Matrix& X, const ToleranceProfile& tol) {
    SkinnySvd f = skinny_svd(X, tol);
    return f.V * f.sigma.cwiseInverse().asDiagonal() * f.U.transpose();
}

int numerical_rank(const Matrix& X, const ToleranceProfile& tol) {
    require_finite(X, "X");
    if (X.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(X);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || s(0) <= 0.0) return 0;
    const double cutoff = tol.rank_rel_tol * s(0);
    int r = 0;
    while (r < s.size() && s(r) > cutoff) ++r;
    return r;
}

double nuclear_norm(const Matrix& X) {
    require_finite(X, "X");
    if (X.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(X);
    return svd.singularValues().sum();
}

double idempotency_residual(const Matrix& W) {
    require_square(W, "W");
    return (W * W - W).norm() / std::max(1.0, W.norm());
}

bool is_idempotent(const Matrix& W, const ToleranceProfile& tol) {
    require_finite(W, "W");
    return idempotency_residual(W) <= tol.eq_rel_tol;
}

bool is_psd(const Matrix& W, const ToleranceProfile& tol) {
    require_finite(W, "W");
    require_square(W, "W");
    if (W.size() == 0) return true;
    if ((W - W.transpose()).norm() > tol.eq_rel_tol * std::max(1.0, W.norm()))
        return false;
    Matrix sym = 0.5 * (W + W.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol.psd_tol;
}

BlockPartition block_partition(const Vector& sigma, const ToleranceProfile& tol) {
    if (sigma.size() == 0)
        throw std::invalid_argument("block_partition: empty sigma");
    const double gap_tol = tol.sigma_group_rel_tol * sigma(0);
    BlockPartition part;
    int start = 0;
    for (int i = 1; i <= sigma.size(); ++i) {
        if (i == sigma.size() || sigma(i - 1) - sigma(i) > gap_tol) {
            part.groups.emplace_back(start, i - start);
            start = i;
        }
    }
    return part;
}

bool is_block_compatible(const Matrix& W, const BlockPartition& part,
                         const ToleranceProfile& tol) {
    require_square(W, "W");
    if (W.rows() != part.size())
        throw DimensionError("is_block_compatible: W size does not match partition");
    const double thresh = tol.eq_rel_tol * std::max(1.0, W.norm());
    for (const auto& [rfirst, rlen] : part.groups) {
        for (int i = rfirst; i < rfirst + rlen; ++i) {
            for (int j = 0; j < W.cols(); ++j) {
                const bool inside = j >= rfirst && j < rfirst + rlen;
                if (!inside && std::abs(W(i, j)) > thresh) return false;
            }
        }
    }
    return true;
}

} // namespace latlrr
