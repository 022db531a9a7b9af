#include "latlrr/properties.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "latlrr/counterexample.hpp"
#include "latlrr/random.hpp"
#include "latlrr/solutions.hpp"
#include "latlrr/verify.hpp"

namespace latlrr {

namespace {

void record(BatteryResult& res, bool pass, const std::string& detail) {
    ++res.total;
    if (pass) {
        ++res.passed;
    } else if (res.failures.size() < 20) {
        res.failures.push_back(detail);
    }
}

std::string case_tag(const char* what, int i) {
    std::ostringstream ss;
    ss << what << " #" << i;
    return ss.str();
}

} // namespace

ProblemSpec random_problem_spec(std::uint64_t seed, int max_dim, int max_rank) {
    Rng rng(seed);
    ProblemSpec spec;
    spec.seed = seed;
    std::uniform_int_distribution<int> rank_dist(1, max_rank);
    spec.rank = rank_dist(rng);
    std::uniform_int_distribution<int> dim_dist(spec.rank, max_dim);
    spec.rows = dim_dist(rng);
    spec.cols = dim_dist(rng);
    switch (rng() % 3) {
        case 0:
            spec.spectrum = SpectrumKind::Generic;
            break;
        case 1: {
            spec.spectrum = SpectrumKind::Repeated;
            int remaining = spec.rank;
            while (remaining > 0) {
                std::uniform_int_distribution<int> len_dist(1, remaining);
                int len = len_dist(rng);
                spec.groups.push_back(len);
                remaining -= len;
            }
            break;
        }
        default:
            spec.spectrum = SpectrumKind::Decaying;
            spec.ratio = 0.5;
            break;
    }
    return spec;
}

BatteryResult battery_trace_bound(std::uint64_t seed, int random_count,
                                  int psd_count, const ToleranceProfile& tol) {
    BatteryResult res{"trace_bound"};
    Rng rng(seed);
    std::uniform_int_distribution<int> dim_dist(1, 20);

    for (int i = 0; i < random_count; ++i) {
        int n = dim_dist(rng);
        Matrix Y = gaussian_matrix(n, n, rng);
        record(res, nuclear_norm(Y) >= Y.trace() - 1e-10,
               case_tag("random trace bound", i));
    }
    for (int i = 0; i < psd_count; ++i) {
        int n = dim_dist(rng);
        Matrix Q = random_orthogonal(n, rng);
        Vector lambda(n);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int j = 0; j < n; ++j) lambda(j) = unit(rng);
        Matrix Y = Q * lambda.asDiagonal() * Q.transpose();
        record(res, std::abs(nuclear_norm(Y) - Y.trace()) <= 1e-10 * std::max(1.0, Y.norm()),
               case_tag("psd equality", i));
    }
    // A negative eigenvalue of magnitude >= 0.1 forces a strict gap.
    for (int i = 0; i < psd_count; ++i) {
        int n = std::max(2, dim_dist(rng));
        Matrix Q = random_orthogonal(n, rng);
        Vector lambda(n);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int j = 0; j < n; ++j) lambda(j) = unit(rng);
        std::uniform_real_distribution<double> neg(0.1, 1.0);
        lambda(0) = -neg(rng);
        Matrix Y = Q * lambda.asDiagonal() * Q.transpose();
        record(res, nuclear_norm(Y) - Y.trace() > tol.psd_tol,
               case_tag("negative eigenvalue strictness", i));
    }
    return res;
}

BatteryResult battery_block_nuclear(std::uint64_t seed, int count) {
    BatteryResult res{"block_nuclear"};
    Rng rng(seed);
    std::uniform_int_distribution<int> dim_dist(1, 10);
    for (int i = 0; i < count; ++i) {
        int p = dim_dist(rng), q = dim_dist(rng);
        int s = dim_dist(rng), t = dim_dist(rng);
        Matrix B = gaussian_matrix(p, q, rng);
        Matrix C = gaussian_matrix(p, t, rng);
        Matrix D = gaussian_matrix(s, q, rng);
        Matrix F = gaussian_matrix(s, t, rng);
        Matrix M(p + s, q + t);
        M << B, C, D, F;
        double whole = nuclear_norm(M);
        bool pass = whole >= nuclear_norm(B) + nuclear_norm(F) - 1e-10 &&
                    whole >= nuclear_norm(B) - 1e-10;
        Matrix M0 = Matrix::Zero(p + s, q + t);
        M0.topLeftCorner(p, q) = B;
        pass = pass && std::abs(nuclear_norm(M0) - nuclear_norm(B)) <= 1e-10;
        record(res, pass, case_tag("block inequality", i));
    }
    return res;
}

BatteryResult battery_commuting_rank(std::uint64_t seed, int count,
                                     const ToleranceProfile& tol) {
    BatteryResult res{"commuting_rank"};
    Rng rng(seed);
    std::uniform_int_distribution<int> dim_dist(2, 15);
    std::uniform_int_distribution<int> eig_dist(0, 3);
    std::uniform_int_distribution<int> coef_dist(-2, 2);
    for (int i = 0; i < count; ++i) {
        int n = dim_dist(rng);
        Matrix Q = random_orthogonal(n, rng);
        Vector d(n);
        for (int j = 0; j < n; ++j) d(j) = eig_dist(rng);
        // Integer-coefficient polynomials of a common symmetric matrix
        // commute and have integer spectra, so numerical ranks are exact.
        int pc[4], qc[4];
        for (int j = 0; j < 4; ++j) { pc[j] = coef_dist(rng); qc[j] = coef_dist(rng); }
        Vector a(n), b(n);
        for (int j = 0; j < n; ++j) {
            double x = d(j);
            a(j) = pc[0] + x * (pc[1] + x * (pc[2] + x * pc[3]));
            b(j) = qc[0] + x * (qc[1] + x * (qc[2] + x * qc[3]));
        }
        Matrix A = Q * a.asDiagonal() * Q.transpose();
        Matrix B = Q * b.asDiagonal() * Q.transpose();
        int ra = 0, rb = 0, rab = 0, rsum = 0;
        for (int j = 0; j < n; ++j) {
            if (a(j) != 0.0) ++ra;
            if (b(j) != 0.0) ++rb;
            if (a(j) * b(j) != 0.0) ++rab;
            if (a(j) + b(j) != 0.0) ++rsum;
        }
        bool pass = rsum <= ra + rb - rab;
        // The integer spectra are the rank oracle; the numerical ranks must
        // agree with them. A mathematically zero product only leaves rounding
        // noise, where a relative cutoff is meaningless, so it is checked
        // against the factors' scale instead.
        pass = pass && numerical_rank(A, tol) == ra && numerical_rank(B, tol) == rb &&
               numerical_rank(Matrix(A + B), tol) == rsum;
        Matrix AB = A * B;
        if (rab > 0)
            pass = pass && numerical_rank(AB, tol) == rab;
        else
            pass = pass && AB.norm() <= 1e-10 * std::max(1.0, A.norm() * B.norm());
        record(res, pass, case_tag("commuting rank", i));
    }
    return res;
}

BatteryResult battery_rank_family(std::uint64_t seed, int count,
                                  const ToleranceProfile& tol, int max_dim,
                                  int max_rank) {
    BatteryResult res{"rank_family"};
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        ProblemSpec spec = random_problem_spec(s, max_dim, max_rank);
        Matrix X = make_problem(spec);
        Rng rng(s ^ 0xabcdefULL);
        std::uniform_int_distribution<int> k_dist(0, spec.rank);
        int k = k_dist(rng);

        RankSolutionParams p;
        p.W_tilde = sample_idempotent(spec.rank, k, 100.0, s);
        std::tie(p.S1, p.S2) = sample_side_matrices(X, p.W_tilde, s + 1, tol);
        LatlrrPair pair = latlrr_rank_solution(X, p, tol);

        double feas = check_feasibility(X, pair.Z, pair.L, tol);
        bool pass = feas <= 1e-9 &&
                    rank_objective(pair.Z, pair.L, tol) == numerical_rank(X, tol);
        record(res, pass, case_tag("rank family sample", i));
    }
    return res;
}

BatteryResult battery_nuclear_family(std::uint64_t seed, int count,
                                     const ToleranceProfile& tol, int max_dim,
                                     int max_rank) {
    BatteryResult res{"nuclear_family"};
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        ProblemSpec spec = random_problem_spec(s, max_dim, max_rank);
        Matrix X = make_problem(spec);
        SkinnySvd f = skinny_svd(X, tol);

        NuclearSolutionParams p;
        p.partition = block_partition(f.sigma, tol);
        p.W_hat = sample_nuclear_W(p.partition, s);
        LatlrrPair pair = latlrr_nuclear_solution(X, p, tol);

        double feas = check_feasibility(X, pair.Z, pair.L, tol);
        double obj = nuclear_objective(pair.Z, pair.L);
        CertificateReport cert = characterize_theorem2(X, pair.Z, pair.L, tol);
        bool pass = feas <= 1e-9 && std::abs(obj - f.rank()) <= 1e-7 &&
                    cert.theorem2_member &&
                    (cert.extracted_W_hat - p.W_hat).norm() <= 1e-9;
        record(res, pass, case_tag("nuclear family sample", i));
    }
    return res;
}

BatteryResult battery_inclusions(std::uint64_t seed, int count,
                                 const ToleranceProfile& tol, int max_dim,
                                 int max_rank) {
    BatteryResult res{"lrr_latlrr_inclusions"};
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Matrix X = make_problem(random_problem_spec(s, max_dim, max_rank));
        InclusionReport rep = lrr_inclusion_check(X, tol, s, 5);
        record(res, rep.all_ok(), case_tag("inclusion", i));
    }
    return res;
}

BatteryResult battery_stationarity(std::uint64_t seed, int count,
                                   const ToleranceProfile& tol, int max_dim,
                                   int max_rank) {
    BatteryResult res{"stationarity"};
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Matrix X = make_problem(random_problem_spec(s, max_dim, max_rank));
        double resid = subgradient_certificate(X, tol);
        record(res, resid <= 1e-10 * numerical_rank(X, tol),
               case_tag("stationarity", i));
    }
    return res;
}

std::vector<BatteryResult> run_all_batteries(std::uint64_t seed,
                                             const ToleranceProfile& tol,
                                             int max_dim, int max_rank) {
    return {
        battery_trace_bound(seed, 1000, 200, tol),
        battery_block_nuclear(seed + 1, 500),
        battery_commuting_rank(seed + 2, 500, tol),
        battery_rank_family(seed + 3, 500, tol, max_dim, max_rank),
        battery_nuclear_family(seed + 4, 500, tol, max_dim, max_rank),
        battery_inclusions(seed + 5, 100, tol, max_dim, max_rank),
        battery_stationarity(seed + 6, 100, tol, max_dim, max_rank),
    };
}

} // namespace latlrr
