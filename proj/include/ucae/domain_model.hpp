#pragma once

#include <string>
#include <vector>

#include "ucae/autoencoder.hpp"
#include "ucae/matrix.hpp"
#include "ucae/mlp.hpp"
#include "ucae/rng.hpp"

namespace ucae {

// The (z, n) output of an encoder for one sample: the encoder's raw output
// split at index d. The projection pi^Z keeps only z.
struct LatentCode {
    std::vector<double> z;
    std::vector<double> n;
};

// One domain's model triple. The encoder maps n -> d+m, the decoder d+m -> n,
// and the discriminator scores latent codes (plus an optional one-hot label)
// with a single logit; probabilities only ever appear fused into the log-loss.
struct DomainModel {
    std::string domain_id;
    int obs_dim = 0;     // n
    int noise_dim = 0;   // m
    int latent_dim = 0;  // d
    int label_dim = 0;   // 0 when unconditioned

    Mlp encoder;
    Mlp decoder;
    Mlp discriminator;

    int code_dim() const { return latent_dim + noise_dim; }
    void validate() const;

    // Function view for translation and the theory checkers.
    Autoencoder autoencoder() const;
};

struct ModelShape {
    std::vector<int> hidden_gen = {128, 128};
    std::vector<int> hidden_disc = {64, 64};
    Activation hidden_act = Activation::LeakyRelu;
    double leaky_slope = 0.2;
};

DomainModel make_domain_model(const std::string& domain_id, int obs_dim, int latent_dim,
                              int noise_dim, int label_dim, const ModelShape& shape, Rng& rng);

// Deterministic encoder forward, split at index d.
std::vector<LatentCode> encode(const DomainModel& model, const Matrix& x);

// Decoder forward on concatenated [z; n] codes.
Matrix decode(const DomainModel& model, const std::vector<LatentCode>& codes);

// X_{i->j}: decode into `dst` the latent projection of `src`'s encoding, with
// fresh destination noise drawn per row. The noise is the only stochasticity.
Matrix translate(const Autoencoder& src, const Autoencoder& dst, const Matrix& x, Rng& rng);
Matrix translate(const DomainModel& src, const DomainModel& dst, const Matrix& x, Rng& rng);

// Left fold of translate over consecutive pairs; list length >= 2.
Matrix translate_path(const std::vector<const Autoencoder*>& models, const Matrix& x, Rng& rng);

}  // namespace ucae
