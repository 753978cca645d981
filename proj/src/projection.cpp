#include "tropix/projection.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "tropix/error.hpp"
#include "tropix/persistence.hpp"

namespace tropix {

namespace {

struct eigen_result {
    std::vector<double> values;   // n entries
    std::vector<double> vectors;  // n x n, column k = eigenvector k
};

// Cyclic Jacobi diagonalization of a symmetric matrix. Quadratic
// convergence makes 100 sweeps far more than any conditioned input
// needs; the bound only protects against pathological input.
eigen_result jacobi_symmetric(std::vector<double> a, std::size_t n) {
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double frob2 = 0.0;
    for (double x : a) frob2 += x * x;
    double stop = frob2 * 1e-28 + 1e-300;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off2 = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off2 += 2.0 * a[p * n + q] * a[p * n + q];
        if (off2 <= stop) break;

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (apq == 0.0) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = a[p * n + k] = c * akp - s * akq;
                    a[k * n + q] = a[q * n + k] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
    }

    eigen_result out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i];
    out.vectors = std::move(v);
    return out;
}

// Indices of the two largest eigenvalues, ties by lower index. A single
// eigenpair is reported twice; the caller zeroes the second axis.
std::array<std::size_t, 2> top_two(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return {order[0], order.size() > 1 ? order[1] : order[0]};
}

std::array<double, 2> explained_shares(const std::vector<double>& values,
                                       const std::array<std::size_t, 2>& top) {
    double positive = 0.0;
    for (double l : values) positive += std::max(l, 0.0);
    if (positive <= 0.0) return {0.0, 0.0};
    return {std::max(values[top[0]], 0.0) / positive, std::max(values[top[1]], 0.0) / positive};
}

}  // namespace

projection_result classical_mds(const distance_matrix& dm) {
    require_valid_matrix(dm);
    std::size_t n = dm.n;
    if (n < 2) throw empty_dataset_error("classical_mds: need at least 2 points");
    if (*std::max_element(dm.entries.begin(), dm.entries.end()) == 0.0)
        throw degenerate_input_error("classical_mds: all distances are zero");

    std::vector<double> d2(n * n);
    for (std::size_t i = 0; i < n * n; ++i) d2[i] = dm.entries[i] * dm.entries[i];
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) row_mean[i] += d2[i * n + j];
        row_mean[i] /= static_cast<double>(n);
        grand += row_mean[i];
    }
    grand /= static_cast<double>(n);
    std::vector<double> gram(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gram[i * n + j] = -0.5 * (d2[i * n + j] - row_mean[i] - row_mean[j] + grand);

    eigen_result eig = jacobi_symmetric(std::move(gram), n);
    std::array<std::size_t, 2> top = top_two(eig.values);

    projection_result out;
    out.explained = explained_shares(eig.values, top);
    out.coordinates.assign(n, {0.0, 0.0});
    for (std::size_t axis = 0; axis < 2; ++axis) {
        double lambda = eig.values[top[axis]];
        if (lambda < 0.0) {
            std::cerr << "classical_mds: clipping negative eigenvalue " << lambda
                      << " to zero (input is not Euclidean)\n";
            lambda = 0.0;
        }
        double scale = std::sqrt(lambda);
        for (std::size_t i = 0; i < n; ++i)
            out.coordinates[i][axis] = scale * eig.vectors[i * n + top[axis]];
    }
    return out;
}

projection_result pca(std::span<const tropical_vector> vectors) {
    if (vectors.size() < 3) throw empty_dataset_error("pca: need at least 3 vectors");
    std::size_t dim = vectors[0].values.size();
    for (const tropical_vector& v : vectors)
        if (v.values.size() != dim)
            throw dimension_mismatch_error("pca: vectors of unequal length");
    if (dim == 0) throw dimension_mismatch_error("pca: zero-length vectors");

    std::size_t count = vectors.size();
    std::vector<double> mean(dim, 0.0);
    for (const tropical_vector& v : vectors)
        for (std::size_t c = 0; c < dim; ++c) mean[c] += v.values[c];
    for (double& m : mean) m /= static_cast<double>(count);

    std::vector<double> cov(dim * dim, 0.0);
    for (const tropical_vector& v : vectors)
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                cov[r * dim + c] += (v.values[r] - mean[r]) * (v.values[c] - mean[c]);
    for (double& x : cov) x /= static_cast<double>(count - 1);

    double total_var = 0.0;
    for (std::size_t r = 0; r < dim; ++r) total_var += cov[r * dim + r];
    if (total_var <= 0.0) throw degenerate_input_error("pca: zero total variance");

    eigen_result eig = jacobi_symmetric(cov, dim);
    std::array<std::size_t, 2> top = top_two(eig.values);

    projection_result out;
    out.explained = explained_shares(eig.values, top);
    if (dim == 1) out.explained[1] = 0.0;
    out.coordinates.assign(count, {0.0, 0.0});
    for (std::size_t axis = 0; axis < 2; ++axis) {
        if (dim == 1 && axis == 1) continue;
        for (std::size_t i = 0; i < count; ++i) {
            double proj = 0.0;
            for (std::size_t c = 0; c < dim; ++c)
                proj += (vectors[i].values[c] - mean[c]) * eig.vectors[c * dim + top[axis]];
            out.coordinates[i][axis] = proj;
        }
    }
    return out;
}

}  // namespace tropix
