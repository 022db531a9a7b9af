#include "latlrr/random.hpp"

#include <Eigen/QR>

namespace latlrr {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M(i, j) = dist(rng);
    return M;
}

Matrix random_orthogonal(int n, Rng& rng) {
    Matrix G = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ();
    Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (R(j, j) < 0) Q.col(j) = -Q.col(j);
    return Q;
}

Matrix random_orthonormal_columns(int n, int k, Rng& rng) {
    return random_orthogonal(n, rng).leftCols(k);
}

} // namespace latlrr
