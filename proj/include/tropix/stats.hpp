#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tropix/tropical.hpp"

namespace tropix {

// Marginal normal model of one vectorized barcode.
struct gaussian_model {
    double mu = 0.0;
    double sigma2 = 1.0;  // > 0, degenerate fits are rejected at the source
};

// Estimates (mu, sigma2) from the coordinates of one vector, optionally
// after an entrywise square root. The variance is the unbiased (n-1)
// estimator by default; mle switches to the 1/n form. Throws
// degenerate_fit_error on fewer than 2 coordinates or zero variance, and
// validation_error when sqrt_transform meets a negative entry.
gaussian_model fit_gaussian(const tropical_vector& v, bool sqrt_transform = false,
                            bool mle = false);

// One observation's factor exp{<eta, T> - A} with base measure 1: only
// the natural parameters and the log-partition value are stored.
struct exp_family_model {
    std::vector<double> eta;
    double log_partition = 0.0;
};

// Joint log-likelihood over per-observation factors:
//   sum_k [ <eta_k, t_k> - A_k ].
// Throws dimension_mismatch_error when list lengths or vector dimensions
// disagree.
double exp_family_loglik(std::span<const exp_family_model> models,
                         std::span<const tropical_vector> t_vectors);

// Natural-parameter form of a Gaussian acting on the statistic
// (sum x, sum x^2) of a sample of the given size:
//   eta = (mu/sigma2, -1/(2 sigma2)),
//   A   = size * (mu^2/(2 sigma2) + log(2 pi sigma2)/2).
// The base measure is identically 1 under this parameterization.
exp_family_model gaussian_natural_form(const gaussian_model& g, std::size_t sample_size);

// The matching sufficient statistic (sum of entries, sum of squares).
tropical_vector gaussian_sufficient_stat(const tropical_vector& v);

// KLD(a || b) for univariate Gaussians:
//   log(s_b/s_a) + (sigma2_a + (mu_a - mu_b)^2) / (2 sigma2_b) - 1/2.
// Asymmetric in its arguments; nonnegative; zero iff a = b.
double kld_gaussian(const gaussian_model& a, const gaussian_model& b);

// Squared Hellinger distance between univariate Gaussians:
//   1 - sqrt(2 s_a s_b / (sigma2_a + sigma2_b))
//       * exp{ -(mu_a - mu_b)^2 / (4 (sigma2_a + sigma2_b)) }.
// Symmetric, in [0, 1].
double hellinger_gaussian(const gaussian_model& a, const gaussian_model& b);

enum class divergence_kind { kld, hellinger };

// Independent check of the closed forms above: adaptive Simpson
// integration of the defining integral over the union of both models'
// [mu - 10 sigma, mu + 10 sigma] ranges. Throws quadrature_error if the
// refinement limit is reached.
double divergence_quadrature(const gaussian_model& a, const gaussian_model& b,
                             divergence_kind kind);

enum class similarity_kind { kld, kld_star, hellinger };

struct similarity_matrix {
    std::size_t n = 0;
    similarity_kind kind = similarity_kind::kld;
    std::vector<double> entries;  // n * n, diagonal 0

    double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

// Pairwise divergence matrix over the models. kld_star stores
// 1 - exp(-KLD) entrywise; linear_star switches it to the plain 1 - KLD
// variant (off-diagonal only, the diagonal stays 0). Rows are filled in
// parallel. Throws empty_dataset_error on fewer than 2 models.
similarity_matrix build_similarity(std::span<const gaussian_model> models, similarity_kind kind,
                                   bool linear_star = false);

}  // namespace tropix
