#pragma once

#include <cstddef>
#include <vector>

namespace tropix {

// Dense symmetric matrix of pairwise distances, row-major. Validity
// (symmetry, zero diagonal, nonnegativity) is enforced where a matrix
// enters the library, not on every access.
struct distance_matrix {
    std::size_t n = 0;
    std::vector<double> entries;  // n * n values

    distance_matrix() = default;
    explicit distance_matrix(std::size_t size) : n(size), entries(size * size, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

}  // namespace tropix
