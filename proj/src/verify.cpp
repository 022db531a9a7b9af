#include "latlrr/verify.hpp"

#include <cmath>

namespace latlrr {

namespace {

void require_pair_dims(const Matrix& X, const Matrix& Z, const Matrix& L) {
    if (Z.rows() != X.cols() || Z.cols() != X.cols())
        throw DimensionError("Z must be cols(X) x cols(X)");
    if (L.rows() != X.rows() || L.cols() != X.rows())
        throw DimensionError("L must be rows(X) x rows(X)");
}

constexpr double kNuclearOptAbsTol = 1e-6; // per unit of rank(X)

} // namespace

double check_feasibility(const Matrix& X, const Matrix& Z, const Matrix& L,
                         const ToleranceProfile& tol) {
    (void)tol;
    require_pair_dims(X, Z, L);
    require_finite(X, "X");
    require_finite(Z, "Z");
    require_finite(L, "L");
    double xnorm = X.norm();
    if (xnorm == 0.0) throw ZeroMatrixError("check_feasibility: X is zero");
    return (X - X * Z - L * X).norm() / xnorm;
}

int rank_objective(const Matrix& Z, const Matrix& L, const ToleranceProfile& tol) {
    return numerical_rank(Z, tol) + numerical_rank(L, tol);
}

double nuclear_objective(const Matrix& Z, const Matrix& L) {
    return nuclear_norm(Z) + nuclear_norm(L);
}

bool certify_rank_optimal(const Matrix& X, const Matrix& Z, const Matrix& L,
                          const ToleranceProfile& tol) {
    if (check_feasibility(X, Z, L, tol) > tol.eq_rel_tol) return false;
    return rank_objective(Z, L, tol) == numerical_rank(X, tol);
}

bool certify_nuclear_optimal(const Matrix& X, const Matrix& Z, const Matrix& L,
                             const ToleranceProfile& tol) {
    if (check_feasibility(X, Z, L, tol) > tol.eq_rel_tol) return false;
    const int r = numerical_rank(X, tol);
    return std::abs(nuclear_objective(Z, L) - r) <=
           kNuclearOptAbsTol * std::max(1, r);
}

CertificateReport characterize_theorem2(const Matrix& X, const Matrix& Z,
                                        const Matrix& L, const ToleranceProfile& tol) {
    require_pair_dims(X, Z, L);
    SkinnySvd f = skinny_svd(X, tol);
    const int r = f.rank();

    CertificateReport rep;
    rep.feasibility_residual = check_feasibility(X, Z, L, tol);
    rep.rank_objective = rank_objective(Z, L, tol);
    rep.nuclear_objective = nuclear_objective(Z, L);
    rep.rank_optimal = rep.feasibility_residual <= tol.eq_rel_tol &&
                       rep.rank_objective == r;
    rep.nuclear_optimal = rep.feasibility_residual <= tol.eq_rel_tol &&
                          std::abs(rep.nuclear_objective - r) <=
                              kNuclearOptAbsTol * std::max(1, r);

    rep.extracted_W_hat = f.V.transpose() * Z * f.V;
    rep.idempotency_residual =
        (rep.extracted_W_hat * rep.extracted_W_hat - rep.extracted_W_hat).norm();

    Matrix z_model = f.V * rep.extracted_W_hat * f.V.transpose();
    Matrix complement = Matrix::Identity(r, r) - rep.extracted_W_hat;
    Matrix l_model = f.U * complement * f.U.transpose();
    rep.z_reconstruction_residual = (Z - z_model).norm() / std::max(1.0, Z.norm());
    rep.l_reconstruction_residual = (L - l_model).norm() / std::max(1.0, L.norm());

    BlockPartition part = block_partition(f.sigma, tol);
    rep.block_compatible = is_block_compatible(rep.extracted_W_hat, part, tol);
    rep.w_psd = is_psd(rep.extracted_W_hat, tol);
    rep.complement_psd = is_psd(complement, tol);

    const bool z_matches = rep.z_reconstruction_residual <= tol.eq_rel_tol;
    const bool l_matches = rep.l_reconstruction_residual <= tol.eq_rel_tol;
    rep.theorem2_member = z_matches && l_matches && rep.block_compatible &&
                          rep.w_psd && rep.complement_psd;

    if (!z_matches) rep.notes.push_back("Z is not of the form V_X W V_X^T");
    if (!l_matches) rep.notes.push_back("L is not of the form U_X (I - W) U_X^T");
    if (!rep.block_compatible) rep.notes.push_back("extracted W is not block-compatible");
    if (!rep.w_psd) rep.notes.push_back("extracted W is not PSD");
    if (!rep.complement_psd) rep.notes.push_back("I - W is not PSD");
    return rep;
}

double subgradient_certificate(const Matrix& X, const ToleranceProfile& tol) {
    SkinnySvd f = skinny_svd(X, tol);
    Matrix Xpinv = f.V * f.sigma.cwiseInverse().asDiagonal() * f.U.transpose();
    Matrix lhs = f.V * f.V.transpose();
    Matrix rhs = X.transpose() * (f.U * f.U.transpose()) * Xpinv.transpose();
    return (lhs - rhs).norm();
}

} // namespace latlrr
