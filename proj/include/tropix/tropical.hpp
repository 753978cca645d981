#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tropix/barcode.hpp"

namespace tropix {

// Identifies one elementary 2-symmetric max-plus polynomial: i bars
// contribute their length d, j further (disjoint) bars contribute
// min(x, m*d) + d. The all-zero orbit is excluded, so 1 <= i + j <= n.
struct orbit_index {
    std::size_t i = 0;
    std::size_t j = 0;

    friend bool operator==(const orbit_index& a, const orbit_index& b) {
        return a.i == b.i && a.j == b.j;
    }
};

// Euclidean image of one barcode. Entry k corresponds to entry k of the
// dataset layout (see tropical_layout).
struct tropical_vector {
    std::vector<double> values;

    friend bool operator==(const tropical_vector& a, const tropical_vector& b) {
        return a.values == b.values;
    }
};

// Coordinate order of the codomain, fixed across a dataset: orbits sorted
// by ascending j, then ascending i. For n = 2 this reads
//   (i=1,j=0), (i=2,j=0), (i=0,j=1), (i=1,j=1), (i=0,j=2).
// Length is n + n(n+1)/2.
std::vector<orbit_index> tropical_layout(std::size_t n);

// Codomain dimension for barcodes with at most n bars: n + n(n+1)/2.
std::size_t tropical_dimension(std::size_t n);

// Smallest admissible regularization constant for a dataset: the maximum
// of x/d over all bars, floored at 1. Every input barcode validates
// against the returned value.
double compute_m(std::span<const barcode> barcodes);

// Birth truncation min(x, m*d) applied before orbit evaluation.
double truncate_birth(double x, double d, double m);

// Evaluates the orbit polynomial on a padded bar list by dynamic
// programming over bars in list order, O(n*i*j) states. Bars and
// accumulation order are fixed, so results are bit-reproducible.
// Throws index_out_of_range_error unless 1 <= i + j <= bars.size().
double evaluate_orbit_dp(std::span<const interval> bars, const orbit_index& idx, double m);

// Same value as evaluate_orbit_dp, computed by enumerating every
// selection of j + i disjoint bars explicitly. Oracle only; guarded to
// bars.size() <= 12 (throws oracle_size_error beyond).
double evaluate_orbit_bruteforce(std::span<const interval> bars, const orbit_index& idx,
                                 double m);

// Maps one barcode to its coordinate vector under the given spec, in
// tropical_layout(spec.n_max) order. Throws validation_error when the
// barcode does not satisfy the spec.
tropical_vector tropicalize(const barcode& b, const regularized_spec& spec);

struct batch_result {
    std::vector<tropical_vector> vectors;  // same order as the input
    regularized_spec spec;                 // n_max = max bar count, m = compute_m
};

// Vectorizes a dataset under one shared spec so all vectors live in the
// same codomain. Barcodes are evaluated in parallel; output order matches
// input order. Throws empty_dataset_error on an empty list.
batch_result batch_tropicalize(std::span<const barcode> barcodes);

}  // namespace tropix
