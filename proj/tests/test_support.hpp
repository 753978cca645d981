#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tropix/barcode.hpp"

namespace testsup {

// Deterministic 64-bit generator (splitmix64). Tests must produce the same
// inputs on every platform, so std::mt19937 + distributions are avoided.
struct splitmix64 {
    std::uint64_t state;
    explicit splitmix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1)
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

template <class T>
void shuffle(std::vector<T>& v, splitmix64& rng) {
    for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[rng.index(k)]);
}

inline tropix::barcode bc(std::vector<std::pair<double, double>> raw) {
    return tropix::normalize(std::move(raw));
}

// Bars on the 1/16 grid with x <= 4d. Under m = 4 every coordinate is an
// exact dyadic sum, so equality checks carry no float slack.
inline std::vector<std::pair<double, double>> random_dyadic_raw(splitmix64& rng,
                                                                std::size_t bars) {
    std::vector<std::pair<double, double>> raw;
    raw.reserve(bars);
    for (std::size_t k = 0; k < bars; ++k) {
        std::uint64_t kd = 4 + rng.next() % 29;        // d in [4/16, 32/16]
        std::uint64_t kx = rng.next() % (4 * kd + 1);  // x <= 4d stays on the grid
        raw.emplace_back(static_cast<double>(kx) / 16.0, static_cast<double>(kd) / 16.0);
    }
    return raw;
}

inline tropix::barcode random_dyadic_barcode(splitmix64& rng, std::size_t max_bars) {
    return bc(random_dyadic_raw(rng, rng.index(max_bars + 1)));
}

// Continuous coordinates, for stressing float paths rather than exactness.
inline tropix::barcode random_barcode(splitmix64& rng, std::size_t max_bars, double x_hi = 3.0,
                                      double d_lo = 0.05, double d_hi = 2.0) {
    std::size_t count = rng.index(max_bars + 1);
    std::vector<std::pair<double, double>> raw;
    raw.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        raw.emplace_back(rng.uniform(0.0, x_hi), rng.uniform(d_lo, d_hi));
    return bc(std::move(raw));
}

}  // namespace testsup
