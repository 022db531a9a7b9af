#pragma once

#include <cstdint>
#include <random>

#include "latlrr/types.hpp"

namespace latlrr {

using Rng = std::mt19937_64;

Matrix gaussian_matrix(int rows, int cols, Rng& rng);

// Haar-ish orthogonal factor from QR of a Gaussian draw, with the sign of
// each R diagonal fixed so the result is deterministic per seed.
Matrix random_orthogonal(int n, Rng& rng);

// First k columns of a random orthogonal n x n matrix (n >= k).
Matrix random_orthonormal_columns(int n, int k, Rng& rng);

} // namespace latlrr
