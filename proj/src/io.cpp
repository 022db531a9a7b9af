#include "latlrr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latlrr {

void write_matrix(const std::filesystem::path& path, const Matrix& X) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << X.rows() << " " << X.cols() << "\n";
    char buf[64];
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", X(i, j));
            out << buf << (j + 1 == X.cols() ? "" : " ");
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Matrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());
    Eigen::Index rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
        throw std::runtime_error("bad matrix header in " + path.string());
    Matrix X(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            if (!(in >> X(i, j)))
                throw std::runtime_error("truncated matrix data in " + path.string());
    if (!X.allFinite())
        throw std::runtime_error("non-finite entries in " + path.string());
    return X;
}

} // namespace latlrr
