#pragma once

#include <array>
#include <span>
#include <vector>

#include "tropix/distance_matrix.hpp"
#include "tropix/tropical.hpp"

namespace tropix {

struct projection_result {
    std::vector<std::array<double, 2>> coordinates;  // one row per input
    std::array<double, 2> explained{0.0, 0.0};       // eigenvalue shares
};

// Classical (Torgerson) scaling of a distance matrix: double-center
// -1/2 J D^2 J, take the top-2 eigenpairs of the Gram matrix via cyclic
// Jacobi rotations, scale eigenvectors by sqrt(eigenvalue). Negative
// eigenvalues among the top-2 are clipped to zero with a note on stderr
// (the input was not Euclidean). Accepts 2 or more points; throws
// degenerate_input_error when every distance is zero.
projection_result classical_mds(const distance_matrix& dm);

// Principal components of a set of equal-length vectors: mean-centered
// covariance, same Jacobi solver, top-2 projection. Needs at least 3
// vectors (throws empty_dataset_error below that), equal lengths (throws
// dimension_mismatch_error), and nonzero total variance (throws
// degenerate_input_error).
projection_result pca(std::span<const tropical_vector> vectors);

}  // namespace tropix
