#include "latlrr/counterexample.hpp"

#include <cmath>
#include <stdexcept>

namespace latlrr {

namespace {

std::string describe(const Matrix& X, int rank) {
    return std::to_string(X.rows()) + "x" + std::to_string(X.cols()) +
           " rank " + std::to_string(rank);
}

CounterexampleReport report_for(const Matrix& X, const Matrix& W_hat,
                                const BlockPartition& part,
                                const ToleranceProfile& tol) {
    NuclearSolutionParams p{W_hat, part};
    CounterexampleReport rep;
    rep.pair = latlrr_nuclear_solution(X, p, tol);
    rep.x_descriptor = describe(X, static_cast<int>(W_hat.rows()));
    rep.W_hat_used = W_hat;
    rep.nuclear_objective = nuclear_objective(rep.pair.Z, rep.pair.L);
    rep.rank_objective = rank_objective(rep.pair.Z, rep.pair.L, tol);
    rep.rank_of_x = numerical_rank(X, tol);
    rep.gap = rep.rank_objective - rep.rank_of_x;
    rep.idempotency_residual = (W_hat * W_hat - W_hat).norm();
    rep.nuclear_optimal = certify_nuclear_optimal(X, rep.pair.Z, rep.pair.L, tol);
    rep.verdict = rep.gap > 0 && rep.nuclear_optimal;
    return rep;
}

} // namespace

CounterexampleReport build_canonical_counterexample(const Matrix& X,
                                                    const ToleranceProfile& tol) {
    SkinnySvd f = skinny_svd(X, tol);
    BlockPartition part = block_partition(f.sigma, tol);
    Matrix W_hat = 0.5 * Matrix::Identity(f.rank(), f.rank());
    return report_for(X, W_hat, part, tol);
}

CounterexampleReport build_random_counterexample(const Matrix& X,
                                                 double min_idem_residual,
                                                 std::uint64_t seed,
                                                 const ToleranceProfile& tol) {
    SkinnySvd f = skinny_svd(X, tol);
    BlockPartition part = block_partition(f.sigma, tol);
    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Matrix W_hat = sample_nuclear_W(part, seed + static_cast<std::uint64_t>(attempt));
        if ((W_hat * W_hat - W_hat).norm() >= min_idem_residual)
            return report_for(X, W_hat, part, tol);
    }
    throw std::runtime_error(
        "build_random_counterexample: no sample reached the idempotency residual floor");
}

NonUniquenessExhibit non_uniqueness_exhibit(const Matrix& X, int count,
                                            std::uint64_t seed,
                                            const ToleranceProfile& tol) {
    if (count < 2)
        throw std::invalid_argument("non_uniqueness_exhibit: count must be at least 2");
    SkinnySvd f = skinny_svd(X, tol);
    const int r = f.rank();
    BlockPartition part = block_partition(f.sigma, tol);

    NonUniquenessExhibit ex;
    ex.distinctness_floor = 0.01 * std::sqrt(static_cast<double>(r)); // ||X^+ X||_F

    std::vector<Matrix> ws;
    ws.push_back(Matrix::Identity(r, r));
    ws.push_back(0.5 * Matrix::Identity(r, r));

    constexpr int kMaxAttempts = 2000;
    int attempt = 0;
    while (static_cast<int>(ws.size()) < count && attempt < kMaxAttempts) {
        Matrix cand = sample_nuclear_W(part, seed + static_cast<std::uint64_t>(attempt++));
        bool distinct = true;
        for (const Matrix& w : ws)
            if ((cand - w).norm() < ex.distinctness_floor) { distinct = false; break; }
        if (distinct) ws.push_back(cand);
    }
    if (static_cast<int>(ws.size()) < count)
        throw std::runtime_error("non_uniqueness_exhibit: could not sample enough distinct optima");

    ex.pairwise_z_distance = Matrix::Zero(count, count);
    for (int i = 0; i < count; ++i) {
        NuclearSolutionParams p{ws[i], part};
        ex.members.push_back(latlrr_nuclear_solution(X, p, tol));
        ex.certified.push_back(
            certify_nuclear_optimal(X, ex.members[i].Z, ex.members[i].L, tol));
    }
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
            ex.pairwise_z_distance(i, j) = (ex.members[i].Z - ex.members[j].Z).norm();
    return ex;
}

} // namespace latlrr
