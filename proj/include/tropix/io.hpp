#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropix/barcode.hpp"
#include "tropix/distance_matrix.hpp"
#include "tropix/projection.hpp"
#include "tropix/stats.hpp"
#include "tropix/tropical.hpp"

namespace tropix {

// Decimal form with 17 significant digits; parsing it back recovers the
// exact double, which is what makes every save/load pair bit-stable.
std::string format_double(double value);

enum class matrix_format { csv, phylip_lower };

// Text barcodes are "birth death" pairs, one per line, '#' to end of
// line ignored. A death of "inf" is replaced by cap when one is given
// and rejected with uncapped_infinity_error otherwise. Zero-length pairs
// are dropped by normalization. Throws parse_error with file:line:column.
barcode load_barcode(const std::string& path, std::optional<double> cap = std::nullopt);
void save_barcode(const std::string& path, const barcode& b, const std::string& manifest_ref);

// csv: full square grid, comma-separated. Off-diagonal mismatch beyond
// 1e-9 raises asymmetry_error carrying the largest deviation; smaller
// mismatches are averaged away. phylip_lower: lower-triangular rows,
// either bare (row k holds k+1 entries) or preceded by a count line with
// one name token per row; mirrored to a full matrix.
distance_matrix load_distance_matrix(const std::string& path, matrix_format format);
void save_distance_matrix(const std::string& path, const distance_matrix& dm,
                          const std::string& manifest_ref);
void save_similarity_matrix(const std::string& path, const similarity_matrix& s,
                            const std::string& manifest_ref);

struct vector_file {
    std::size_t n = 0;  // bar-count bound the coordinate layout was built for
    std::vector<tropical_vector> vectors;
};

// Vector files carry a header row naming each coordinate E_i<i>_j<j> in
// layout order; the loader rebuilds n from it and rejects any mismatch.
void save_vectors(const std::string& path, std::span<const tropical_vector> vectors,
                  std::size_t n, const std::string& manifest_ref);
vector_file load_vectors(const std::string& path);

void save_fits(const std::string& path, std::span<const gaussian_model> fits,
               const std::string& manifest_ref);
std::vector<gaussian_model> load_fits(const std::string& path);

void save_projection(const std::string& path, const projection_result& r,
                     const std::string& manifest_ref);

// Minimal gnuplot script plotting column 2 against column 1 of data_file.
void save_gnuplot_script(const std::string& path, const std::string& data_file);

// Reproducibility record written next to every output: sorted key=value
// lines, no timestamps, input files identified by content digest.
struct run_manifest {
    std::map<std::string, std::string> entries;

    void set(const std::string& key, const std::string& value);
    void set_number(const std::string& key, double value);
    void set_count(const std::string& key, std::size_t value);

    // Stores input.<label> = path and digest.<label> = FNV-1a hash of the
    // file bytes. Throws parse_error when the file cannot be read.
    void add_input(const std::string& label, const std::string& path);
};

void save_manifest(const std::string& path, const run_manifest& m);

}  // namespace tropix
