#pragma once

#include <span>

#include "tropix/barcode.hpp"
#include "tropix/distance_matrix.hpp"

namespace tropix {

// Sup-distance between two intervals in (birth, length) coordinates:
//   max{ |x_a - x_b|, |d_a - d_b + x_a - x_b| }.
// The second term equals the death difference, so this is the usual
// l-infinity distance on diagrams written in (x, d) form. Arguments are
// ordered canonically before evaluating, making the result exactly
// symmetric in floating point.
double interval_dist(const interval& a, const interval& b);

// Distance from an interval to the diagonal: d / 2.
double diagonal_dist(const interval& a);

// Bottleneck distance: min over partial bijections of the largest cost,
// where unmatched bars pay their diagonal distance. Solved by binary
// search over the finite set of candidate costs with an augmenting-path
// feasibility matching, so the answer is one of the candidates exactly
// and no convergence epsilon is involved.
double bottleneck_distance(const barcode& b1, const barcode& b2);

// Wasserstein p-distance: (min over partial bijections of the sum of
// cost^p)^(1/p). Solved as a square assignment problem on the
// (|b1|+|b2|) x (|b1|+|b2|) matrix that adds one diagonal slot per bar
// (diagonal-to-diagonal cost 0), via shortest augmenting paths in O(k^3).
// Throws invalid_p_error unless 1 <= p <= 16.
double wasserstein_distance(const barcode& b1, const barcode& b2, double p);

// Oracles enumerating every partial bijection explicitly. Guarded to
// |b1| + |b2| <= 8 (throws oracle_size_error beyond).
double bottleneck_bruteforce(const barcode& b1, const barcode& b2);
double wasserstein_bruteforce(const barcode& b1, const barcode& b2, double p);

enum class metric_kind { bottleneck, wasserstein };

// Symmetric zero-diagonal matrix of pairwise distances. Pairs are
// computed in parallel, one (i, j) pair per task. p is ignored for the
// bottleneck metric. Throws empty_dataset_error on fewer than 2 barcodes.
distance_matrix pairwise_matrix(std::span<const barcode> barcodes, metric_kind kind,
                                double p = 1.0);

}  // namespace tropix
