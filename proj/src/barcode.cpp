#include "tropix/barcode.hpp"

#include <algorithm>

#include "tropix/error.hpp"

namespace tropix {

barcode normalize(std::vector<std::pair<double, double>> raw) {
    std::vector<interval> bars;
    bars.reserve(raw.size());
    for (const auto& [x, d] : raw) {
        if (!(x >= 0.0)) throw negative_birth_error("normalize: birth < 0");
        if (!(d >= 0.0)) throw negative_length_error("normalize: length < 0");
        if (d > 0.0) bars.push_back(interval{x, d});
    }
    std::sort(bars.begin(), bars.end());
    return barcode(std::move(bars));
}

bool validate(const barcode& b, const regularized_spec& spec) {
    if (b.size() > spec.n_max) return false;
    for (const interval& bar : b.bars())
        if (bar.x > spec.m * bar.d) return false;
    return true;
}

std::vector<interval> pad(const barcode& b, std::size_t n) {
    if (b.size() > n) throw too_many_bars_error("pad: barcode has more bars than n");
    std::vector<interval> out = b.bars();
    out.resize(n, interval{0.0, 0.0});
    return out;
}

}  // namespace tropix
