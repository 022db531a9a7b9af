#include "latlrr/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "latlrr/random.hpp"

namespace latlrr {

void ProblemSpec::validate() const {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("ProblemSpec: rows and cols must be positive");
    if (rank <= 0 || rank > std::min(rows, cols))
        throw std::invalid_argument("ProblemSpec: rank must be in [1, min(rows, cols)]");
    if (spectrum == SpectrumKind::Repeated) {
        int total = std::accumulate(groups.begin(), groups.end(), 0);
        if (groups.empty() || total != rank)
            throw std::invalid_argument("ProblemSpec: repeated groups must sum to rank");
        for (int g : groups)
            if (g <= 0) throw std::invalid_argument("ProblemSpec: group sizes must be positive");
    }
    if (spectrum == SpectrumKind::Decaying && !(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("ProblemSpec: decaying ratio must be in (0, 1)");
}

Vector problem_spectrum(const ProblemSpec& spec) {
    spec.validate();
    Vector sigma(spec.rank);
    switch (spec.spectrum) {
        case SpectrumKind::Generic: {
            Rng rng(spec.seed);
            std::uniform_real_distribution<double> dist(1.0, 10.0);
            for (int i = 0; i < spec.rank; ++i) sigma(i) = dist(rng);
            std::sort(sigma.data(), sigma.data() + sigma.size(), std::greater<double>());
            break;
        }
        case SpectrumKind::Repeated: {
            // Well-separated group values so block detection is unambiguous.
            int idx = 0;
            double value = 10.0;
            for (int len : spec.groups) {
                for (int j = 0; j < len; ++j) sigma(idx++) = value;
                value *= 0.5;
            }
            break;
        }
        case SpectrumKind::Decaying: {
            double value = 10.0;
            for (int i = 0; i < spec.rank; ++i) {
                sigma(i) = value;
                value *= spec.ratio;
            }
            break;
        }
    }
    return sigma;
}

Matrix make_problem(const ProblemSpec& spec) {
    Vector sigma = problem_spectrum(spec);
    Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    Matrix U = random_orthonormal_columns(spec.rows, spec.rank, rng);
    Matrix V = random_orthonormal_columns(spec.cols, spec.rank, rng);
    return U * sigma.asDiagonal() * V.transpose();
}

} // namespace latlrr
