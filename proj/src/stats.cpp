#include "tropix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tropix/error.hpp"
#include "tropix/parallel.hpp"

namespace tropix {

namespace {

constexpr double pi = 3.14159265358979323846;

double log_density(const gaussian_model& g, double x) {
    double z = x - g.mu;
    return -0.5 * std::log(2.0 * pi * g.sigma2) - z * z / (2.0 * g.sigma2);
}

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double m, double b, double fa,
             double fm, double fb, double whole, double eps, int depth) {
    if (depth == 0) throw quadrature_error("divergence_quadrature: refinement limit reached");
    double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
    double flm = f(lm), frm = f(rm);
    double left = simpson(fa, flm, fm, a, m);
    double right = simpson(fm, frm, fb, m, b);
    if (std::abs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, lm, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           adapt(f, m, rm, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
    double m = (a + b) / 2.0;
    double fa = f(a), fm = f(m), fb = f(b);
    return adapt(f, a, m, b, fa, fm, fb, simpson(fa, fm, fb, a, b), eps, 48);
}

// A narrow density inside a wide interval can fall between the three
// seed points of plain adaptive Simpson, which then converges on zero.
// Integrating panel by panel between both models' mu + k*sigma marks
// keeps every feature sampled.
double integrate_paneled(const std::function<double(double)>& f, const gaussian_model& a,
                         const gaussian_model& b) {
    double sa = std::sqrt(a.sigma2), sb = std::sqrt(b.sigma2);
    std::vector<double> marks;
    for (int k = -10; k <= 10; ++k) {
        marks.push_back(a.mu + k * sa);
        marks.push_back(b.mu + k * sb);
    }
    std::sort(marks.begin(), marks.end());
    double total = 0.0;
    for (std::size_t t = 0; t + 1 < marks.size(); ++t)
        if (marks[t] < marks[t + 1]) total += integrate(f, marks[t], marks[t + 1], 1e-10);
    return total;
}

}  // namespace

gaussian_model fit_gaussian(const tropical_vector& v, bool sqrt_transform, bool mle) {
    std::size_t n = v.values.size();
    if (n < 2) throw degenerate_fit_error("fit_gaussian: need at least 2 coordinates");
    std::vector<double> xs = v.values;
    if (sqrt_transform)
        for (double& x : xs) {
            if (x < 0.0)
                throw validation_error("fit_gaussian: negative entry under sqrt transform");
            x = std::sqrt(x);
        }
    double sum = 0.0;
    for (double x : xs) sum += x;
    double mu = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    double sigma2 = ss / static_cast<double>(mle ? n : n - 1);
    if (!(sigma2 > 0.0))
        throw degenerate_fit_error("fit_gaussian: zero variance (constant coordinates)");
    return {mu, sigma2};
}

double exp_family_loglik(std::span<const exp_family_model> models,
                         std::span<const tropical_vector> t_vectors) {
    if (models.size() != t_vectors.size())
        throw dimension_mismatch_error("exp_family_loglik: one model per observation required");
    double total = 0.0;
    for (std::size_t k = 0; k < models.size(); ++k) {
        const exp_family_model& m = models[k];
        const std::vector<double>& t = t_vectors[k].values;
        if (m.eta.size() != t.size())
            throw dimension_mismatch_error("exp_family_loglik: eta/statistic length mismatch");
        double dot = 0.0;
        for (std::size_t c = 0; c < t.size(); ++c) dot += m.eta[c] * t[c];
        total += dot - m.log_partition;
    }
    return total;
}

exp_family_model gaussian_natural_form(const gaussian_model& g, std::size_t sample_size) {
    exp_family_model m;
    m.eta = {g.mu / g.sigma2, -0.5 / g.sigma2};
    m.log_partition = static_cast<double>(sample_size) *
                      (g.mu * g.mu / (2.0 * g.sigma2) + 0.5 * std::log(2.0 * pi * g.sigma2));
    return m;
}

tropical_vector gaussian_sufficient_stat(const tropical_vector& v) {
    double sum = 0.0, sumsq = 0.0;
    for (double x : v.values) {
        sum += x;
        sumsq += x * x;
    }
    return tropical_vector{{sum, sumsq}};
}

double kld_gaussian(const gaussian_model& a, const gaussian_model& b) {
    double shift = a.mu - b.mu;
    return 0.5 * std::log(b.sigma2 / a.sigma2) +
           (a.sigma2 + shift * shift) / (2.0 * b.sigma2) - 0.5;
}

double hellinger_gaussian(const gaussian_model& a, const gaussian_model& b) {
    double s = a.sigma2 + b.sigma2;
    double shift = a.mu - b.mu;
    return 1.0 - std::sqrt(2.0 * std::sqrt(a.sigma2 * b.sigma2) / s) *
                     std::exp(-shift * shift / (4.0 * s));
}

double divergence_quadrature(const gaussian_model& a, const gaussian_model& b,
                             divergence_kind kind) {
    if (kind == divergence_kind::kld) {
        auto f = [&](double x) {
            double lp = log_density(a, x);
            return std::exp(lp) * (lp - log_density(b, x));
        };
        return integrate_paneled(f, a, b);
    }
    // squared Hellinger via the Bhattacharyya overlap 1 - int sqrt(p q)
    auto f = [&](double x) { return std::exp(0.5 * (log_density(a, x) + log_density(b, x))); };
    return 1.0 - integrate_paneled(f, a, b);
}

similarity_matrix build_similarity(std::span<const gaussian_model> models, similarity_kind kind,
                                   bool linear_star) {
    if (models.size() < 2)
        throw empty_dataset_error("build_similarity: need at least 2 models");
    similarity_matrix out;
    out.n = models.size();
    out.kind = kind;
    out.entries.assign(out.n * out.n, 0.0);
    detail::parallel_for(out.n, [&](std::size_t i) {
        for (std::size_t j = 0; j < out.n; ++j) {
            if (i == j) continue;
            double v = 0.0;
            switch (kind) {
                case similarity_kind::kld:
                    v = kld_gaussian(models[i], models[j]);
                    break;
                case similarity_kind::kld_star: {
                    double k = kld_gaussian(models[i], models[j]);
                    v = linear_star ? 1.0 - k : 1.0 - std::exp(-k);
                    break;
                }
                case similarity_kind::hellinger:
                    v = hellinger_gaussian(models[i], models[j]);
                    break;
            }
            out.at(i, j) = v;
        }
    });
    return out;
}

}  // namespace tropix
