#include "tropix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "tropix/error.hpp"
#include "tropix/parallel.hpp"

namespace tropix {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Augmented square cost matrix: row u < n1 is a bar of b1, later rows are
// diagonal slots; likewise for columns against b2. Bar-to-diagonal costs
// depend only on the bar, diagonal-to-diagonal is free.
std::vector<double> augmented_costs(const barcode& b1, const barcode& b2, std::size_t& k_out) {
    std::size_t n1 = b1.size(), n2 = b2.size(), k = n1 + n2;
    k_out = k;
    std::vector<double> cost(k * k, 0.0);
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) {
            if (u < n1 && v < n2)
                cost[u * k + v] = interval_dist(b1[u], b2[v]);
            else if (u < n1)
                cost[u * k + v] = diagonal_dist(b1[u]);
            else if (v < n2)
                cost[u * k + v] = diagonal_dist(b2[v]);
        }
    return cost;
}

// Maximum-matching feasibility: can every row be assigned a distinct
// column using only cells with cost <= c?
bool kuhn_augment(std::size_t u, double c, const std::vector<double>& cost, std::size_t k,
                  std::vector<char>& visited, std::vector<std::size_t>& owner) {
    for (std::size_t v = 0; v < k; ++v) {
        if (visited[v] || cost[u * k + v] > c) continue;
        visited[v] = 1;
        if (owner[v] == k || kuhn_augment(owner[v], c, cost, k, visited, owner)) {
            owner[v] = u;
            return true;
        }
    }
    return false;
}

bool feasible(double c, const std::vector<double>& cost, std::size_t k) {
    std::vector<std::size_t> owner(k, k);
    std::vector<char> visited(k);
    for (std::size_t u = 0; u < k; ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!kuhn_augment(u, c, cost, k, visited, owner)) return false;
    }
    return true;
}

// Square min-cost assignment by shortest augmenting paths with dual
// potentials. match[j] holds the row assigned to column j (1-based, 0 is
// the virtual start column).
double solve_assignment(const std::vector<double>& cost, std::size_t k) {
    std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0), minv(k + 1, 0.0);
    std::vector<std::size_t> match(k + 1, 0), way(k + 1, 0);
    for (std::size_t r = 1; r <= k; ++r) {
        match[0] = r;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::vector<char> used(k + 1, 0);
        do {
            used[j0] = 1;
            std::size_t i0 = match[j0], j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= k; ++j) {
                if (used[j]) continue;
                double cur = cost[(i0 - 1) * k + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= k; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= k; ++j) total += cost[(match[j] - 1) * k + (j - 1)];
    return total;
}

void order_canonically(const barcode*& a, const barcode*& b) {
    if (*b < *a) std::swap(a, b);
}

void check_p(double p) {
    if (!(p >= 1.0) || p > 16.0)
        throw invalid_p_error("wasserstein: p must lie in [1, 16]");
}

// All ways to match b1's bars injectively into b2 or the diagonal;
// leftover b2 bars pay their diagonal cost. p < 0 encodes the bottleneck
// (max instead of power sum).
double enumerate_matchings(const barcode& b1, const barcode& b2, std::size_t pos,
                           std::vector<char>& used, double p) {
    if (pos == b1.size()) {
        double acc = 0.0;
        for (std::size_t j = 0; j < b2.size(); ++j) {
            if (used[j]) continue;
            double c = diagonal_dist(b2[j]);
            acc = p < 0 ? std::max(acc, c) : acc + std::pow(c, p);
        }
        return acc;
    }
    double diag = diagonal_dist(b1[pos]);
    double rest = enumerate_matchings(b1, b2, pos + 1, used, p);
    double best = p < 0 ? std::max(diag, rest) : std::pow(diag, p) + rest;
    for (std::size_t j = 0; j < b2.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        double c = interval_dist(b1[pos], b2[j]);
        double tail = enumerate_matchings(b1, b2, pos + 1, used, p);
        used[j] = 0;
        best = std::min(best, p < 0 ? std::max(c, tail) : std::pow(c, p) + tail);
    }
    return best;
}

void check_oracle_size(const barcode& b1, const barcode& b2) {
    if (b1.size() + b2.size() > 8)
        throw oracle_size_error("metric oracle: more than 8 bars in total");
}

}  // namespace

double interval_dist(const interval& a, const interval& b) {
    const interval* lo = &a;
    const interval* hi = &b;
    if (*hi < *lo) std::swap(lo, hi);
    return std::max(std::abs(lo->x - hi->x), std::abs(lo->d - hi->d + lo->x - hi->x));
}

double diagonal_dist(const interval& a) { return a.d / 2.0; }

double bottleneck_distance(const barcode& b1, const barcode& b2) {
    const barcode* a = &b1;
    const barcode* b = &b2;
    order_canonically(a, b);
    std::size_t k = 0;
    std::vector<double> cost = augmented_costs(*a, *b, k);
    if (k == 0) return 0.0;

    std::vector<double> candidates = cost;
    candidates.push_back(0.0);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(candidates[mid], cost, k))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

double wasserstein_distance(const barcode& b1, const barcode& b2, double p) {
    check_p(p);
    const barcode* a = &b1;
    const barcode* b = &b2;
    order_canonically(a, b);
    std::size_t k = 0;
    std::vector<double> cost = augmented_costs(*a, *b, k);
    if (k == 0) return 0.0;
    for (double& c : cost) c = std::pow(c, p);
    return std::pow(solve_assignment(cost, k), 1.0 / p);
}

double bottleneck_bruteforce(const barcode& b1, const barcode& b2) {
    check_oracle_size(b1, b2);
    const barcode* a = &b1;
    const barcode* b = &b2;
    order_canonically(a, b);
    std::vector<char> used(b->size(), 0);
    return enumerate_matchings(*a, *b, 0, used, -1.0);
}

double wasserstein_bruteforce(const barcode& b1, const barcode& b2, double p) {
    check_p(p);
    check_oracle_size(b1, b2);
    const barcode* a = &b1;
    const barcode* b = &b2;
    order_canonically(a, b);
    std::vector<char> used(b->size(), 0);
    return std::pow(enumerate_matchings(*a, *b, 0, used, p), 1.0 / p);
}

distance_matrix pairwise_matrix(std::span<const barcode> barcodes, metric_kind kind, double p) {
    if (barcodes.size() < 2)
        throw empty_dataset_error("pairwise_matrix: need at least 2 barcodes");
    if (kind == metric_kind::wasserstein) check_p(p);
    std::size_t n = barcodes.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    distance_matrix dm(n);
    detail::parallel_for(pairs.size(), [&](std::size_t t) {
        auto [i, j] = pairs[t];
        double d = kind == metric_kind::bottleneck
                       ? bottleneck_distance(barcodes[i], barcodes[j])
                       : wasserstein_distance(barcodes[i], barcodes[j], p);
        dm.at(i, j) = d;
        dm.at(j, i) = d;
    });
    return dm;
}

}  // namespace tropix
