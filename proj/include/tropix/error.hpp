#pragma once

#include <stdexcept>
#include <string>

namespace tropix {

// Base class for all library errors. Data and usage problems are reported by
// throwing; numerical results are never encoded as sentinel values.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct negative_birth_error : error {
    using error::error;
};
struct negative_length_error : error {
    using error::error;
};
struct too_many_bars_error : error {
    using error::error;
};
struct index_out_of_range_error : error {
    using error::error;
};
struct oracle_size_error : error {
    using error::error;
};
struct validation_error : error {
    using error::error;
};
struct empty_dataset_error : error {
    using error::error;
};
struct invalid_p_error : error {
    using error::error;
};
struct invalid_matrix_error : error {
    using error::error;
};
struct size_exceeded_error : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
struct asymmetry_error : error {
    using error::error;
};
struct uncapped_infinity_error : error {
    using error::error;
};
struct degenerate_fit_error : error {
    using error::error;
};
struct dimension_mismatch_error : error {
    using error::error;
};
struct quadrature_error : error {
    using error::error;
};
struct degenerate_input_error : error {
    using error::error;
};

}  // namespace tropix
