#pragma once

#include <cstdint>
#include <vector>

#include "latlrr/types.hpp"

namespace latlrr {

enum class SpectrumKind { Generic, Repeated, Decaying };

// Seeded generator spec for synthetic low-rank test matrices.
struct ProblemSpec {
    int rows = 0;
    int cols = 0;
    int rank = 0;
    SpectrumKind spectrum = SpectrumKind::Generic;
    std::vector<int> groups; // Repeated: sizes of equal-sigma groups, sum = rank
    double ratio = 0.5;      // Decaying: sigma_{i+1} / sigma_i
    std::uint64_t seed = 0;

    void validate() const;
};

// X = U diag(sigma) V^T with seeded random orthonormal factors.
Matrix make_problem(const ProblemSpec& spec);

// The singular values the generator would use, largest first.
Vector problem_spectrum(const ProblemSpec& spec);

} // namespace latlrr
