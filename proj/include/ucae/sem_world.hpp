#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ucae/autoencoder.hpp"
#include "ucae/matrix.hpp"
#include "ucae/rng.hpp"

namespace ucae {

// One domain's generative map x = warp(mix * [z; n] + offset), where mix has
// orthonormal columns (so the map is injective) and warp(u) = u + alpha*tanh(u)
// elementwise (strictly increasing, so invertible in each coordinate).
struct DomainGen {
    int obs_dim = 0;    // n_i, must be >= d + m_i
    int noise_dim = 0;  // m_i
    Matrix mix;         // n_i x (d + m_i), orthonormal columns
    Matrix offset;      // 1 x n_i
    double warp_alpha = 0.0;
};

// A synthetic generative world: shared latent Z plus per-domain injective
// maps with known inverses. When cluster_shift > 0 the latent is a balanced
// two-component Gaussian mixture with means +-cluster_shift on the first
// latent axis, and samples carry the component as a binary label; otherwise
// Z is standard normal. Noise variables are always standard normal.
struct SemSpec {
    int latent_dim = 0;
    std::vector<DomainGen> domains;
    std::uint64_t seed = 0;
    double cluster_shift = 0.0;

    int domain_count() const { return static_cast<int>(domains.size()); }
    bool labeled() const { return cluster_shift > 0.0; }
    void validate() const;
};

// A batch of coupled draws: row r of z, noises[i], xs[i] belong to one sample,
// and xs[i] is exactly f_i(z_r, noise_r). labels is empty unless the world is
// labeled.
struct CoupledSamples {
    Matrix z;                    // count x d
    std::vector<Matrix> noises;  // count x m_i
    std::vector<Matrix> xs;      // count x n_i
    std::vector<int> labels;     // count entries, values {0,1}

    int count() const { return z.rows(); }
};

SemSpec make_sem(int latent_dim, const std::vector<std::pair<int, int>>& domain_dims,
                 double warp_alpha, Rng& rng, double cluster_shift = 0.0);

// k >= 2 domains with n=1, m=0, mix [[1]], offset 0, warp 0: every f_i is the
// identity on the 1-d latent.
SemSpec make_identity_sem(int k_domains);

// Draws z (mixture-aware), per-domain noise, and the per-domain observations.
CoupledSamples sample_coupled(const SemSpec& spec, int count, Rng& rng);

// Latent draws only; labels returned when the world is labeled.
std::pair<Matrix, std::vector<int>> sample_latent(const SemSpec& spec, int count, Rng& rng);

// Applies f_i to explicit latent/noise batches.
Matrix apply_domain_map(const SemSpec& spec, int domain, const Matrix& z, const Matrix& noise);

// The analytic inverse pair for domain i: decode is f_i itself, encode
// unwarps each coordinate by safeguarded Newton (bracketed, so it cannot
// escape) and projects through mix^T. encode(decode(c)) == c on all of
// Z x N_i, and decode(encode(x)) == x on the image of f_i.
Autoencoder oracle_autoencoder(const SemSpec& spec, int domain);

// Ground-truth Lipschitz bound of f_i: orthonormal mix has spectral norm 1
// and |warp'| <= 1 + alpha.
double oracle_decoder_lipschitz(const SemSpec& spec, int domain);

// Scalar inverse of u + alpha*tanh(u) = y.
double unwarp_scalar(double y, double alpha);

}  // namespace ucae
