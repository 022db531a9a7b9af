#pragma once

#include <filesystem>

#include "latlrr/types.hpp"

namespace latlrr {

// Text matrix format: line 1 is "rows cols", then one line per row of
// space-separated decimals printed with 17 significant digits.
void write_matrix(const std::filesystem::path& path, const Matrix& X);

Matrix read_matrix(const std::filesystem::path& path);

} // namespace latlrr
