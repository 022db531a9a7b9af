#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latlrr/problems.hpp"
#include "latlrr/types.hpp"

namespace latlrr {

struct BatteryResult {
    std::string name;
    int total = 0;
    int passed = 0;
    std::vector<std::string> failures;

    bool ok() const { return passed == total && total > 0; }
};

// Seeded random problem from the desk-scale ensemble: shapes up to
// max_dim x max_dim, rank up to max_rank, mixed generic / repeated /
// decaying spectra.
ProblemSpec random_problem_spec(std::uint64_t seed, int max_dim = 60,
                                int max_rank = 20);

// ||Y||_* >= trace(Y) with equality exactly on PSD matrices.
BatteryResult battery_trace_bound(std::uint64_t seed, int random_count,
                                  int psd_count, const ToleranceProfile& tol);

// ||[[B, C], [D, F]]||_* >= ||B||_* + ||F||_* >= ||B||_*, with equality to
// ||B||_* exactly when C = D = F = 0.
BatteryResult battery_block_nuclear(std::uint64_t seed, int count);

// rank(A + B) <= rank(A) + rank(B) - rank(AB) for commuting A, B.
BatteryResult battery_commuting_rank(std::uint64_t seed, int count,
                                     const ToleranceProfile& tol);

// Sampled rank-family members are feasible and rank-optimal.
BatteryResult battery_rank_family(std::uint64_t seed, int count,
                                  const ToleranceProfile& tol, int max_dim = 60,
                                  int max_rank = 20);

// Sampled nuclear-family members are feasible, nuclear-optimal, and round-trip
// through the membership characterization recovering W^ within 1e-9.
BatteryResult battery_nuclear_family(std::uint64_t seed, int count,
                                     const ToleranceProfile& tol,
                                     int max_dim = 60, int max_rank = 20);

// LRR optima, paired with L = 0, are optimal for the matching LatLRR problem.
BatteryResult battery_inclusions(std::uint64_t seed, int count,
                                 const ToleranceProfile& tol, int max_dim = 60,
                                 int max_rank = 20);

// Stationarity residual of the subgradient certificate on the ensemble.
BatteryResult battery_stationarity(std::uint64_t seed, int count,
                                   const ToleranceProfile& tol,
                                   int max_dim = 60, int max_rank = 20);

std::vector<BatteryResult> run_all_batteries(std::uint64_t seed,
                                             const ToleranceProfile& tol,
                                             int max_dim = 60,
                                             int max_rank = 20);

} // namespace latlrr
