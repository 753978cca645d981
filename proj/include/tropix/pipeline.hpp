#pragma once

#include <span>
#include <string>
#include <vector>

namespace tropix {

struct demo_row {
    double x = 0.0;
    double p21_diff = 0.0;       // cubic functional gap to the empty barcode
    double bottleneck = 0.0;     // distance to the empty barcode
    double tropical_diff = 0.0;  // max coordinate gap under the sweep-wide spec
};

// Sweep of single-bar barcodes B_x (born at x, length 1) against the
// empty barcode. The cubic functional sum (birth+death)^2 (death-birth)
// grows as (2x+1)^2 while the bottleneck distance stays pinned at 1/2;
// the tropical coordinates move only linearly in x, which is the
// contrast the table exists to show. All barcodes share one spec
// computed over the whole sweep. Throws empty_dataset_error on an empty
// sweep and negative_birth_error on x < 0.
std::vector<demo_row> demo_nonlipschitz(std::span<const double> x_values);

// Least-squares slope of log(y) against log(x), using only pairs with
// x > 0 and y > 0: the empirical growth exponent of y ~ x^k data.
// Throws degenerate_input_error on fewer than two usable pairs or a
// degenerate abscissa.
double log_log_slope(std::span<const double> x, std::span<const double> y);

void save_demo_table(const std::string& path, std::span<const demo_row> rows,
                     const std::string& manifest_ref);

}  // namespace tropix
