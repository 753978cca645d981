#include "tropix/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tropix/error.hpp"

namespace tropix {

namespace {

struct edge {
    double w;
    std::uint32_t i, j;

    friend bool operator<(const edge& a, const edge& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

struct union_find {
    std::vector<std::uint32_t> parent;
    explicit union_find(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    // false when both ends already share a component
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

std::vector<edge> threshold_edges(const distance_matrix& dm, double threshold) {
    std::vector<edge> edges;
    for (std::uint32_t i = 0; i < dm.n; ++i)
        for (std::uint32_t j = i + 1; j < dm.n; ++j)
            if (dm.at(i, j) <= threshold) edges.push_back({dm.at(i, j), i, j});
    std::sort(edges.begin(), edges.end());
    return edges;
}

void check_threshold(double threshold) {
    if (!(threshold > 0.0)) throw validation_error("rips: threshold must be positive");
}

// symmetric difference of two ascending index lists (Z/2 column addition)
std::vector<std::uint32_t> xor_columns(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

}  // namespace

void require_valid_matrix(const distance_matrix& dm) {
    if (dm.entries.size() != dm.n * dm.n)
        throw invalid_matrix_error("distance matrix: storage does not match its size");
    for (std::size_t i = 0; i < dm.n; ++i) {
        if (dm.at(i, i) != 0.0)
            throw invalid_matrix_error("distance matrix: nonzero diagonal entry");
        for (std::size_t j = 0; j < dm.n; ++j) {
            double v = dm.at(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw invalid_matrix_error("distance matrix: negative or non-finite entry");
            if (v != dm.at(j, i))
                throw invalid_matrix_error("distance matrix: asymmetric entries");
        }
    }
}

double enclosing_radius(const distance_matrix& dm) {
    if (dm.n == 0) throw empty_dataset_error("enclosing_radius: empty matrix");
    require_valid_matrix(dm);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dm.n; ++i) {
        double row_max = 0.0;
        for (std::size_t j = 0; j < dm.n; ++j) row_max = std::max(row_max, dm.at(i, j));
        best = std::min(best, row_max);
    }
    return best;
}

barcode rips_h0(const distance_matrix& dm, double threshold) {
    check_threshold(threshold);
    require_valid_matrix(dm);
    std::vector<std::pair<double, double>> raw;
    union_find uf(dm.n);
    std::size_t components = dm.n;
    for (const edge& e : threshold_edges(dm, threshold))
        if (uf.unite(e.i, e.j)) {
            raw.emplace_back(0.0, e.w);
            --components;
        }
    for (std::size_t k = 0; k < components; ++k) raw.emplace_back(0.0, threshold);
    return normalize(std::move(raw));
}

barcode rips_h1(const distance_matrix& dm, double threshold) {
    check_threshold(threshold);
    require_valid_matrix(dm);
    std::vector<edge> edges = threshold_edges(dm, threshold);
    if (edges.size() > 2000)
        throw size_exceeded_error("rips_h1: more than 2000 edges below the threshold");

    // edges merging components are skipped as rows below; the remaining
    // (cycle-creating) edges are the candidate pivots
    std::vector<char> creates_cycle(edges.size(), 0);
    union_find uf(dm.n);
    for (std::size_t e = 0; e < edges.size(); ++e)
        creates_cycle[e] = !uf.unite(edges[e].i, edges[e].j);

    std::vector<std::size_t> edge_id(dm.n * dm.n, edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        edge_id[edges[e].i * dm.n + edges[e].j] = e;
        edge_id[edges[e].j * dm.n + edges[e].i] = e;
    }

    struct triangle {
        double grade;
        std::uint32_t i, j, k;
    };
    std::vector<triangle> triangles;
    for (std::uint32_t i = 0; i < dm.n; ++i)
        for (std::uint32_t j = i + 1; j < dm.n; ++j) {
            if (dm.at(i, j) > threshold) continue;
            for (std::uint32_t k = j + 1; k < dm.n; ++k) {
                double grade = std::max({dm.at(i, j), dm.at(i, k), dm.at(j, k)});
                if (grade <= threshold) triangles.push_back({grade, i, j, k});
            }
        }
    std::sort(triangles.begin(), triangles.end(), [](const triangle& a, const triangle& b) {
        if (a.grade != b.grade) return a.grade < b.grade;
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        return a.k < b.k;
    });

    std::vector<std::vector<std::uint32_t>> reduced(edges.size());
    std::vector<char> paired(edges.size(), 0);
    std::vector<std::pair<double, double>> raw;
    for (const triangle& t : triangles) {
        std::vector<std::uint32_t> col;
        for (std::size_t e : {edge_id[t.i * dm.n + t.j], edge_id[t.i * dm.n + t.k],
                              edge_id[t.j * dm.n + t.k]})
            if (creates_cycle[e]) col.push_back(static_cast<std::uint32_t>(e));
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            std::uint32_t low = col.back();
            if (!paired[low]) {
                paired[low] = 1;
                double birth = edges[low].w;
                if (t.grade > birth) raw.emplace_back(birth, t.grade - birth);
                reduced[low] = std::move(col);
                break;
            }
            col = xor_columns(col, reduced[low]);
        }
    }

    for (std::size_t e = 0; e < edges.size(); ++e)
        if (creates_cycle[e] && !paired[e] && threshold > edges[e].w)
            raw.emplace_back(edges[e].w, threshold - edges[e].w);
    return normalize(std::move(raw));
}

}  // namespace tropix
