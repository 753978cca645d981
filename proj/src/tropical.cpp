#include "tropix/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tropix/error.hpp"
#include "tropix/parallel.hpp"

namespace tropix {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

void check_orbit(const orbit_index& idx, std::size_t n) {
    std::size_t total = idx.i + idx.j;
    if (total < 1 || total > n)
        throw index_out_of_range_error("orbit index: i + j must lie in [1, n]");
}

}  // namespace

std::vector<orbit_index> tropical_layout(std::size_t n) {
    std::vector<orbit_index> layout;
    layout.reserve(tropical_dimension(n));
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = (j == 0 ? 1 : 0); i + j <= n; ++i)
            layout.push_back(orbit_index{i, j});
    return layout;
}

std::size_t tropical_dimension(std::size_t n) { return n + n * (n + 1) / 2; }

double compute_m(std::span<const barcode> barcodes) {
    double m = 1.0;
    for (const barcode& b : barcodes)
        for (const interval& bar : b.bars()) m = std::max(m, bar.x / bar.d);
    // x/d then m*d round independently, so the max-ratio bar can still land a
    // few ulps above m*d. Nudge until each input passes the x <= m*d check.
    for (const barcode& b : barcodes)
        for (const interval& bar : b.bars())
            while (bar.x > m * bar.d)
                m = std::nextafter(m, std::numeric_limits<double>::infinity());
    return m;
}

double truncate_birth(double x, double d, double m) { return std::min(x, m * d); }

double evaluate_orbit_dp(std::span<const interval> bars, const orbit_index& idx, double m) {
    std::size_t n = bars.size();
    check_orbit(idx, n);

    // best[a][b] = max total over selections within the bars seen so far
    // using a bars in the d role and b bars in the min(x,md)+d role.
    std::size_t cols = idx.j + 1;
    std::vector<double> best((idx.i + 1) * cols, neg_inf);
    best[0] = 0.0;
    for (const interval& bar : bars) {
        double wi = bar.d;
        double wj = truncate_birth(bar.x, bar.d, m) + bar.d;
        for (std::size_t a = idx.i + 1; a-- > 0;) {
            for (std::size_t b = cols; b-- > 0;) {
                double& cell = best[a * cols + b];
                if (a > 0) cell = std::max(cell, best[(a - 1) * cols + b] + wi);
                if (b > 0) cell = std::max(cell, best[a * cols + b - 1] + wj);
            }
        }
    }
    return best[idx.i * cols + idx.j];
}

namespace {

// Enumerates all ways to assign idx.i bars the d role and idx.j bars the
// min(x,md)+d role, accumulating each selection's sum in ascending bar
// order so float results match the dp path sums bit for bit.
double enumerate_selections(std::span<const interval> bars, std::size_t pos, std::size_t i_left,
                            std::size_t j_left, double acc, double m) {
    if (i_left == 0 && j_left == 0) return acc;
    if (pos >= bars.size() || i_left + j_left > bars.size() - pos) return neg_inf;
    const interval& bar = bars[pos];
    double out = enumerate_selections(bars, pos + 1, i_left, j_left, acc, m);
    if (i_left > 0)
        out = std::max(out, enumerate_selections(bars, pos + 1, i_left - 1, j_left,
                                                 acc + bar.d, m));
    if (j_left > 0)
        out = std::max(out, enumerate_selections(
                                bars, pos + 1, i_left, j_left - 1,
                                acc + (truncate_birth(bar.x, bar.d, m) + bar.d), m));
    return out;
}

}  // namespace

double evaluate_orbit_bruteforce(std::span<const interval> bars, const orbit_index& idx,
                                 double m) {
    if (bars.size() > 12)
        throw oracle_size_error("evaluate_orbit_bruteforce: more than 12 bars");
    check_orbit(idx, bars.size());
    return enumerate_selections(bars, 0, idx.i, idx.j, 0.0, m);
}

tropical_vector tropicalize(const barcode& b, const regularized_spec& spec) {
    if (!validate(b, spec))
        throw validation_error("tropicalize: barcode violates the regularized spec");
    std::vector<interval> bars = pad(b, spec.n_max);
    tropical_vector out;
    std::vector<orbit_index> layout = tropical_layout(spec.n_max);
    out.values.reserve(layout.size());
    for (const orbit_index& idx : layout)
        out.values.push_back(evaluate_orbit_dp(bars, idx, spec.m));
    return out;
}

batch_result batch_tropicalize(std::span<const barcode> barcodes) {
    if (barcodes.empty()) throw empty_dataset_error("batch_tropicalize: no barcodes");
    std::size_t n = 0;
    for (const barcode& b : barcodes) n = std::max(n, b.size());
    batch_result result;
    result.spec = regularized_spec{n, compute_m(barcodes)};
    result.vectors.resize(barcodes.size());
    detail::parallel_for(barcodes.size(), [&](std::size_t k) {
        result.vectors[k] = tropicalize(barcodes[k], result.spec);
    });
    return result;
}

}  // namespace tropix
