#pragma once

#include <vector>

#include "ucae/autoencoder.hpp"
#include "ucae/domain_model.hpp"
#include "ucae/matrix.hpp"
#include "ucae/rng.hpp"

namespace ucae {

struct TwoSampleResult {
    double statistic = 0.0;
    double permutation_p = 1.0;  // (1 + #{permuted >= observed}) / (n_permutations + 1)
    int n_permutations = 0;
};

// Every symbol of the transport-error bound:
//   lhs  = W1(translated source marginal, target marginal)
//   rhs  = gamma * term_src + gamma * term_dst + recon
// where gamma bounds the target decoder's Lipschitz constant, term_src/dst
// measure how far each encoder pushforward sits from the latent prior in the
// (z, n) product space, and recon is the target's mean unsquared
// reconstruction error.
struct BoundReport {
    double lhs = 0.0;
    double gamma = 0.0;
    double term_src = 0.0;
    double term_dst = 0.0;
    double recon = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

struct EvalConfig {
    int n_samples = 512;      // per side, MMD-based checks
    int n_permutations = 500;
    double alpha = 0.01;
    int bound_samples = 512;  // per side, W1 bound terms
};

inline constexpr int kWasserstein1Budget = 2048;

// Exact 1-Wasserstein distance between equal-size empirical measures with
// Euclidean ground cost: min over assignments of (1/N) sum ||a_sigma(i) - b_i||,
// solved by shortest augmenting paths with potentials in O(N^3).
double wasserstein1_exact(const Matrix& a, const Matrix& b);

// Minimum-cost assignment on an N x N cost matrix; returns column j matched
// to each row i. Exposed for the metrics tests.
std::vector<int> solve_assignment(const Matrix& cost);

// Debiased entropic surrogate S(a,b) = OT_eps(a,b) - (OT_eps(a,a)+OT_eps(b,b))/2
// with log-domain iterations and epsilon scaling. Converges to W1 as eps -> 0.
double sinkhorn_divergence(const Matrix& a, const Matrix& b, double epsilon, int max_iter = 5000);

// Unbiased Gaussian-kernel MMD^2 with the median-distance bandwidth heuristic
// and a permutation p-value.
TwoSampleResult mmd_test(const Matrix& a, const Matrix& b, Rng& rng, int n_permutations = 500);

// Random `count`-subset of the rows of m (without replacement).
Matrix subsample_rows(const Matrix& m, int count, Rng& rng);

// Standard-normal (z, n) product-prior draws; when cluster_shift > 0 the z
// block is the balanced two-component mixture on the first axis.
Matrix prior_samples(int latent_dim, int noise_dim, int count, Rng& rng,
                     double cluster_shift = 0.0);

// Translates the first half of `data` along `path` (indices into `models`)
// and the second half directly from path.front() to path.back(), then runs
// mmd_test on the two output sets. Halving keeps the two samples independent,
// which the permutation test requires. Path length must be >= 3.
TwoSampleResult check_path_consistency(const std::vector<Autoencoder>& models,
                                       const std::vector<int>& path, const Matrix& data,
                                       Rng& rng, const EvalConfig& cfg);

struct GlobalPairResult {
    int source_a = 0;
    int source_b = 0;
    TwoSampleResult result;
};

// Builds the joint sample of Q^(i) for every source i (observed x_i in slot i,
// fresh-noise decodings elsewhere, concatenated into one long vector) and
// compares every pair of sources with mmd_test.
std::vector<GlobalPairResult> check_global_consistency(const std::vector<Autoencoder>& models,
                                                       const std::vector<Matrix>& marginals,
                                                       Rng& rng, const EvalConfig& cfg);

// Empirical check of the transport-error bound between one ordered pair of
// domains. `gamma_dst` must upper-bound the destination decoder's Lipschitz
// constant; the DomainModel overload derives it from layer spectral norms.
BoundReport check_transport_bound(const Autoencoder& src, const Autoencoder& dst,
                                  double gamma_dst, const Matrix& marginal_src,
                                  const Matrix& marginal_dst, const Matrix& prior_src,
                                  const Matrix& prior_dst, Rng& rng, const EvalConfig& cfg);
BoundReport check_transport_bound(const DomainModel& src, const DomainModel& dst,
                                  const Matrix& marginal_src, const Matrix& marginal_dst,
                                  Rng& rng, const EvalConfig& cfg);

// Mean squared reconstruction error over rows, divided by the summed
// per-column variance of `data`.
double recon_mse_ratio(const Autoencoder& model, const Matrix& data);

// Mean unsquared reconstruction error, the bound's last term.
double recon_mean_error(const Autoencoder& model, const Matrix& data);

}  // namespace ucae
