#include <doctest.h>

#include <cmath>

#include "latlrr/problems.hpp"
#include "latlrr/properties.hpp"
#include "latlrr/random.hpp"
#include "latlrr/solutions.hpp"
#include "latlrr/verify.hpp"

using namespace latlrr;

namespace {
const ToleranceProfile kTol{};

Matrix test_matrix(int rows, int cols, int rank, std::uint64_t seed) {
    ProblemSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.rank = rank;
    spec.seed = seed;
    return make_problem(spec);
}
} // namespace

TEST_CASE("check_feasibility on exact constructions") {
    Matrix X = test_matrix(7, 6, 3, 1);
    Matrix XpX = pseudo_inverse(X, kTol) * X;
    Matrix XXp = X * pseudo_inverse(X, kTol);
    Matrix Z0 = Matrix::Zero(6, 6);
    Matrix L0 = Matrix::Zero(7, 7);

    CHECK(check_feasibility(X, XpX, L0, kTol) <= 1e-12);
    CHECK(check_feasibility(X, Z0, XXp, kTol) <= 1e-12);
    CHECK(check_feasibility(X, Matrix(0.5 * XpX), Matrix(0.5 * XXp), kTol) <= 1e-12);

    CHECK_THROWS_AS(check_feasibility(X, Matrix::Zero(5, 5), L0, kTol),
                    DimensionError);
}

TEST_CASE("rank and nuclear objectives") {
    Matrix X = test_matrix(7, 6, 3, 2);
    Matrix XpX = pseudo_inverse(X, kTol) * X;
    Matrix XXp = X * pseudo_inverse(X, kTol);
    Matrix Z0 = Matrix::Zero(6, 6);
    Matrix L0 = Matrix::Zero(7, 7);

    CHECK(rank_objective(XpX, L0, kTol) == 3);
    CHECK(rank_objective(Z0, L0, kTol) == 0);
    CHECK(rank_objective(Matrix(0.5 * XpX), Matrix(0.5 * XXp), kTol) == 6);

    CHECK(nuclear_objective(Matrix(0.5 * XpX), Matrix(0.5 * XXp)) ==
          doctest::Approx(3.0).epsilon(1e-10));
    CHECK(nuclear_objective(XpX, L0) == doctest::Approx(3.0).epsilon(1e-10));

    Matrix I4 = Matrix::Identity(4, 4);
    CHECK(nuclear_objective(I4, Matrix::Zero(4, 4)) == doctest::Approx(4.0));
}

TEST_CASE("certify_rank_optimal") {
    Matrix X = test_matrix(8, 7, 4, 3);
    RankSolutionParams p;
    p.W_tilde = sample_idempotent(4, 2, 100.0, 4);
    std::tie(p.S1, p.S2) = sample_side_matrices(X, p.W_tilde, 5, kTol);
    LatlrrPair pair = latlrr_rank_solution(X, p, kTol);
    CHECK(certify_rank_optimal(X, pair.Z, pair.L, kTol));

    Matrix XpX = pseudo_inverse(X, kTol) * X;
    Matrix XXp = X * pseudo_inverse(X, kTol);
    CHECK_FALSE(certify_rank_optimal(X, Matrix(0.5 * XpX), Matrix(0.5 * XXp), kTol));
    CHECK_FALSE(certify_rank_optimal(X, Matrix::Zero(7, 7), Matrix::Zero(8, 8), kTol));
}

TEST_CASE("certify_nuclear_optimal") {
    Matrix X = test_matrix(8, 7, 4, 6);
    Matrix XpX = pseudo_inverse(X, kTol) * X;
    Matrix XXp = X * pseudo_inverse(X, kTol);
    Matrix L0 = Matrix::Zero(8, 8);
    CHECK(certify_nuclear_optimal(X, Matrix(0.5 * XpX), Matrix(0.5 * XXp), kTol));
    CHECK(certify_nuclear_optimal(X, XpX, L0, kTol));

    // Extra singular mass from S pushes the objective above rank(X).
    SkinnySvd f = skinny_svd(X, kTol);
    Rng rng(7);
    Matrix S = 5.0 * (Matrix::Identity(7, 7) - f.V * f.V.transpose()) *
               gaussian_matrix(7, 4, rng);
    Matrix Z = lrr_rank_solution(X, X, S, kTol);
    CHECK_FALSE(certify_nuclear_optimal(X, Z, L0, kTol));
}

TEST_CASE("characterize_theorem2 round trip") {
    Matrix X = test_matrix(9, 8, 4, 8);
    SkinnySvd f = skinny_svd(X, kTol);
    BlockPartition part = block_partition(f.sigma, kTol);
    Matrix W = sample_nuclear_W(part, 9);
    LatlrrPair pair = latlrr_nuclear_solution(X, {W, part}, kTol);

    CertificateReport rep = characterize_theorem2(X, pair.Z, pair.L, kTol);
    CHECK(rep.theorem2_member);
    CHECK(rep.nuclear_optimal);
    CHECK((rep.extracted_W_hat - W).norm() <= 1e-9);
}

TEST_CASE("characterize_theorem2 on the named optima") {
    Matrix X = test_matrix(9, 8, 4, 10);
    Matrix XpX = pseudo_inverse(X, kTol) * X;
    Matrix XXp = X * pseudo_inverse(X, kTol);

    CertificateReport half =
        characterize_theorem2(X, Matrix(0.5 * XpX), Matrix(0.5 * XXp), kTol);
    CHECK(half.theorem2_member);
    CHECK(half.nuclear_optimal);
    CHECK_FALSE(half.rank_optimal);
    // W = 1/2 I has idempotency defect ||1/4 I - 1/2 I||_F = sqrt(r)/4.
    CHECK(half.idempotency_residual == doctest::Approx(std::sqrt(4.0) / 4.0));

    CertificateReport full =
        characterize_theorem2(X, XpX, Matrix::Zero(9, 9), kTol);
    CHECK(full.theorem2_member);
    CHECK(full.rank_optimal);
    CHECK(full.idempotency_residual <= 1e-10);
}

TEST_CASE("characterize_theorem2 flags non-members") {
    Matrix X = test_matrix(9, 8, 4, 11);
    SkinnySvd f = skinny_svd(X, kTol);
    Rng rng(12);
    Matrix S = 5.0 * (Matrix::Identity(8, 8) - f.V * f.V.transpose()) *
               gaussian_matrix(8, 4, rng);
    Matrix Z = lrr_rank_solution(X, X, S, kTol);
    CertificateReport rep = characterize_theorem2(X, Z, Matrix::Zero(9, 9), kTol);
    CHECK_FALSE(rep.theorem2_member);
    CHECK_FALSE(rep.notes.empty());
}

TEST_CASE("nuclear-LRR minimizer is strictly better than feasible perturbations") {
    Matrix X = test_matrix(9, 8, 4, 13);
    SkinnySvd f = skinny_svd(X, kTol);
    Rng rng(14);
    Matrix A = X * gaussian_matrix(8, 6, rng);
    Matrix Zstar = lrr_nuclear_solution(X, A, kTol);
    double base = nuclear_norm(Zstar);
    SkinnySvd fa = skinny_svd(A, kTol);
    Matrix proj = Matrix::Identity(8, 8) - f.V * f.V.transpose();
    for (int i = 0; i < 30; ++i) {
        Matrix S = proj * gaussian_matrix(8, fa.rank(), rng);
        Matrix Z = Zstar + S * fa.V.transpose(); // still satisfies XZ = A
        if ((Z - Zstar).norm() < 0.01) continue;
        CHECK((X * Z - A).norm() <= 1e-9 * A.norm());
        CHECK(nuclear_norm(Z) > base + 1e-6);
    }
}

TEST_CASE("subgradient_certificate") {
    CHECK(subgradient_certificate(Matrix::Identity(5, 5), kTol) <= 1e-13);

    Matrix X = test_matrix(8, 8, 3, 15);
    CHECK(subgradient_certificate(X, kTol) <= 1e-10);

    BatteryResult res = battery_stationarity(700, 30, kTol, 40, 12);
    CHECK(res.ok());
}
