#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ucae/domain_model.hpp"
#include "ucae/matrix.hpp"
#include "ucae/optimizer.hpp"
#include "ucae/rng.hpp"

namespace ucae {

// A frozen empirical distribution over latent vectors: the proxy for P_Z when
// the prior is learned rather than given. Draws sample rows with replacement.
struct SampleBank {
    enum class Origin { Prior, Encoded };

    Matrix samples;  // N x d (z only) or N x (d+m)
    Origin origin = Origin::Prior;
    std::string domain_id;  // filled for encoded banks
    bool frozen = false;

    Matrix draw(int count, Rng& rng) const;
    void freeze() { frozen = true; }
};

// Analytic latent prior: standard normal, or the balanced two-component
// mixture (means +-cluster_shift on the first axis) whose component doubles
// as a binary label for conditioned training.
struct LatentPrior {
    int dim = 0;
    double cluster_shift = 0.0;

    bool labeled() const { return cluster_shift > 0.0; }
};

using LatentSource = std::variant<LatentPrior, const SampleBank*>;

// Data a training run may read: per-domain observations plus an optional
// one-hot label matrix aligned row to row.
struct LabeledData {
    Matrix x;
    Matrix labels;  // rows x label_dim, or 0 x 0 when unlabeled

    bool has_labels() const { return labels.rows() > 0; }
    void validate() const;
};

struct TrainConfig {
    double lambda = 1.0;
    int batch_size = 256;
    long steps = 20000;
    int disc_steps_per_gen_step = 1;
    OptimizerConfig gen_opt{OptimizerKind::Adam, 1e-3, 0.9, 0.999, 1e-8};
    OptimizerConfig disc_opt{OptimizerKind::Adam, 2e-4, 0.9, 0.999, 1e-8};
    ModelShape shape;
    int latent_dim = 2;
    int noise_dim = 0;
    std::uint64_t seed = 1;
    // When set, the adversarial gradient uses the non-saturating form instead
    // of descending log f(E(x)) literally.
    bool non_saturating = false;

    void validate() const;
};

struct StepLog {
    long step = 0;
    double recon_loss = 0.0;    // mean ||x - D(E(x))||^2
    double gen_adv_loss = 0.0;  // mean log f(E(x)), before the lambda weight
    double disc_loss = 0.0;     // mean log f(E(x)) + mean log(1 - f(prior))
};

struct TrainingLog {
    std::vector<StepLog> steps;

    // Mean disc_loss over the trailing `window` steps.
    double tail_disc_loss(int window) const;
    double tail_recon_loss(int window) const;
};

// [z; n; label], the discriminator input for conditioned training.
std::vector<double> conditioned_discriminator_input(const LatentCode& code,
                                                    const std::vector<double>& label_one_hot);

// Adversarial-autoencoder training of one domain model: each step samples a
// data batch and latent targets, descends reconstruction + lambda*log f(E(x))
// on the encoder/decoder, then ascends the discriminator's log-loss objective
// on encoded-vs-prior codes. Noise targets are always drawn from N(0, I_m),
// also when z comes from a bank.
TrainingLog train_autoencoder(DomainModel& model, const LabeledData& data,
                              const LatentSource& latent, const TrainConfig& cfg, Rng& rng);

struct AlternatingResult {
    SampleBank bank;  // union of both final encoded sets, frozen
    TrainingLog log_a;
    TrainingLog log_b;
};

// Two-domain procedure for an unknown latent distribution: each round
// refreshes one domain's empirical code bank and trains the other against it
// (cfg.steps steps per model per round). The first round's target bank is
// drawn from the standard-normal prior because untrained encoders produce
// arbitrary code distributions; later rounds use encoded banks only.
AlternatingResult learn_latent_alternating(DomainModel& model_a, DomainModel& model_b,
                                           const LabeledData& data_a, const LabeledData& data_b,
                                           const TrainConfig& cfg, int rounds, int bank_size,
                                           Rng& rng);

// Trains a new domain against a frozen bank; reads and writes no other model.
TrainingLog add_domain(DomainModel& new_model, const LabeledData& new_data,
                       const SampleBank& frozen_bank, const TrainConfig& cfg, Rng& rng);

}  // namespace ucae
