#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace latlrr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Thrown when an operation requires a nonzero matrix (e.g. skinny SVD,
// whose Sigma factor must be invertible).
class ZeroMatrixError : public std::invalid_argument {
public:
    explicit ZeroMatrixError(const std::string& what)
        : std::invalid_argument(what) {}
};

class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what)
        : std::invalid_argument(what) {}
};

// Constraint of the problem instance cannot be satisfied, e.g. A not in
// Range(X) for the constrained representation problems.
class InfeasibleError : public std::invalid_argument {
public:
    explicit InfeasibleError(const std::string& what)
        : std::invalid_argument(what) {}
};

class NonFiniteError : public std::invalid_argument {
public:
    explicit NonFiniteError(const std::string& what)
        : std::invalid_argument(what) {}
};

// All predicates and certificates take tolerances explicitly; there are no
// hidden globals.
struct ToleranceProfile {
    double rank_rel_tol = 1e-8;        // relative singular-value cutoff
    double eq_rel_tol = 1e-9;          // relative residual cutoff for matrix equalities
    double psd_tol = 1e-9;             // eigenvalue negativity slack
    double sigma_group_rel_tol = 1e-6; // relative gap for grouping equal singular values
};

void require_finite(const Matrix& X, const char* name);
void require_square(const Matrix& X, const char* name);

inline double fro(const Matrix& X) { return X.norm(); }

} // namespace latlrr
