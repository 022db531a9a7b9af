#pragma once

#include <string>
#include <vector>

#include "latlrr/core.hpp"

namespace latlrr {

// Graded evidence for one candidate pair (Z, L): residuals, objectives, and
// the Theorem-2-style membership breakdown, not just booleans.
struct CertificateReport {
    double feasibility_residual = 0.0; // ||X - XZ - LX||_F / ||X||_F
    int rank_objective = 0;
    double nuclear_objective = 0.0;
    bool rank_optimal = false;
    bool nuclear_optimal = false;
    bool theorem2_member = false;
    Matrix extracted_W_hat;             // V_X^T Z V_X
    double idempotency_residual = 0.0;  // of extracted_W_hat
    double z_reconstruction_residual = 0.0; // ||Z - V W^ V^T||_F / max(1, ||Z||_F)
    double l_reconstruction_residual = 0.0; // ||L - U (I - W^) U^T||_F / max(1, ||L||_F)
    bool block_compatible = false;
    bool w_psd = false;
    bool complement_psd = false;
    std::vector<std::string> notes;
};

double check_feasibility(const Matrix& X, const Matrix& Z, const Matrix& L,
                         const ToleranceProfile& tol);

int rank_objective(const Matrix& Z, const Matrix& L, const ToleranceProfile& tol);

double nuclear_objective(const Matrix& Z, const Matrix& L);

// Feasible and rank objective equals rank(X), the known optimum value.
bool certify_rank_optimal(const Matrix& X, const Matrix& Z, const Matrix& L,
                          const ToleranceProfile& tol);

// Feasible and nuclear objective equals rank(X) within 1e-6 * max(1, rank).
bool certify_nuclear_optimal(const Matrix& X, const Matrix& Z, const Matrix& L,
                             const ToleranceProfile& tol);

// Full membership test against the closed-form nuclear family, with the
// extracted W^ and all sub-condition residuals.
CertificateReport characterize_theorem2(const Matrix& X, const Matrix& Z,
                                        const Matrix& L, const ToleranceProfile& tol);

// Stationarity residual ||V V^T - X^T (U U^T) (X^+)^T||_F at Z = 1/2 X^+ X.
double subgradient_certificate(const Matrix& X, const ToleranceProfile& tol);

} // namespace latlrr
