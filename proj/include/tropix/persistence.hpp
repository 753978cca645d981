#pragma once

#include "tropix/barcode.hpp"
#include "tropix/distance_matrix.hpp"

namespace tropix {

// Throws invalid_matrix_error unless dm is square, finite, nonnegative,
// exactly symmetric and zero on the diagonal.
void require_valid_matrix(const distance_matrix& dm);

// min over points of the max distance to any other point. Beyond this
// grade the complex is a cone over the minimizing vertex, so it is the
// natural default threshold. Throws empty_dataset_error on a 0x0 matrix.
double enclosing_radius(const distance_matrix& dm);

// Degree-0 persistence of the Vietoris-Rips filtration up to threshold.
// Every bar is born at 0; finite deaths are the single-linkage merge
// heights (union-find over edges sorted ascending); components still
// alive at threshold are reported as bars dying there, so the output is
// finite. Zero-length bars (duplicate points) are dropped.
barcode rips_h0(const distance_matrix& dm, double threshold);

// Degree-1 persistence up to threshold: column reduction of the triangle
// boundary matrix over Z/2. Rows of component-merging edges are dropped
// before reduction (they are already paired in degree 0 and can never be
// pivots here). Cycles still open at threshold are reported as bars dying
// there. Throws size_exceeded_error when more than 2000 edges lie at or
// below the threshold.
barcode rips_h1(const distance_matrix& dm, double threshold);

}  // namespace tropix
