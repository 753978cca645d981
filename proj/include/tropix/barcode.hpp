#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace tropix {

// A persistence interval stored as (birth, length). The length convention
// (rather than birth/death) keeps the quotient relation trivial: a bar is
// removable exactly when d == 0.
struct interval {
    double x = 0.0;  // birth, >= 0
    double d = 0.0;  // length, > 0 after normalization

    friend bool operator==(const interval& a, const interval& b) {
        return a.x == b.x && a.d == b.d;
    }
    friend bool operator<(const interval& a, const interval& b) {
        return a.x != b.x ? a.x < b.x : a.d < b.d;
    }
};

// A barcode as the canonical representative of its permutation orbit:
// intervals sorted ascending by (x, d), zero-length bars removed. Two
// barcodes are equal iff their interval lists are equal elementwise.
class barcode {
  public:
    barcode() = default;

    const std::vector<interval>& bars() const { return bars_; }
    std::size_t size() const { return bars_.size(); }
    bool empty() const { return bars_.empty(); }
    const interval& operator[](std::size_t i) const { return bars_[i]; }

    friend bool operator==(const barcode& a, const barcode& b) { return a.bars_ == b.bars_; }
    friend bool operator<(const barcode& a, const barcode& b) { return a.bars_ < b.bars_; }

  private:
    friend barcode normalize(std::vector<std::pair<double, double>> raw);
    explicit barcode(std::vector<interval> bars) : bars_(std::move(bars)) {}

    std::vector<interval> bars_;
};

// Subset of barcode space admitted for vectorization: at most n_max bars,
// every bar satisfying x <= m * d.
struct regularized_spec {
    std::size_t n_max = 0;
    double m = 1.0;
};

// Builds the canonical representative from raw (birth, length) pairs:
// drops zero-length bars, sorts by (x, d). Idempotent and invariant under
// permutation of the input.
// Throws negative_birth_error / negative_length_error on invalid input.
barcode normalize(std::vector<std::pair<double, double>> raw);

// True iff b has at most spec.n_max bars and every bar satisfies
// x <= m * d. Pure predicate, never throws.
bool validate(const barcode& b, const regularized_spec& spec);

// Returns b's bars followed by (0, 0) bars up to length n. Zero bars are
// quotient-equivalent, so padding never changes any orbit evaluation.
// Throws too_many_bars_error when b has more than n bars.
std::vector<interval> pad(const barcode& b, std::size_t n);

}  // namespace tropix
