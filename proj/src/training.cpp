#include "ucae/training.hpp"

#include <cmath>
#include <string>

#include "ucae/errors.hpp"
#include "ucae/linalg.hpp"

namespace ucae {

namespace {

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }
double sigmoid(double x) { return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }

// log sigmoid(logit), fused for stability.
double log_f(double logit) { return -softplus(-logit); }
// log(1 - sigmoid(logit)).
double log_one_minus_f(double logit) { return -softplus(logit); }

Matrix sample_batch(const Matrix& data, const std::vector<int>& idx) {
    Matrix out(static_cast<int>(idx.size()), data.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) out.set_row(static_cast<int>(r), data, idx[r]);
    return out;
}

std::vector<int> draw_indices(int population, int count, Rng& rng) {
    std::vector<int> idx(count);
    for (int i = 0; i < count; ++i) idx[i] = rng.uniform_int(population);
    return idx;
}

struct LatentBatch {
    Matrix z;
    std::vector<int> labels;  // empty unless the prior is labeled
};

LatentBatch draw_latent(const LatentSource& source, int count, Rng& rng) {
    LatentBatch out;
    if (std::holds_alternative<LatentPrior>(source)) {
        const auto& prior = std::get<LatentPrior>(source);
        out.z = gauss_sample(rng, count, prior.dim);
        if (prior.labeled()) {
            out.labels.resize(count);
            for (int r = 0; r < count; ++r) {
                const int s = rng.uniform_int(2);
                out.labels[r] = s;
                out.z(r, 0) += s == 1 ? prior.cluster_shift : -prior.cluster_shift;
            }
        }
    } else {
        const SampleBank* bank = std::get<const SampleBank*>(source);
        out.z = bank->draw(count, rng);
    }
    return out;
}

int latent_source_dim(const LatentSource& source) {
    if (std::holds_alternative<LatentPrior>(source)) return std::get<LatentPrior>(source).dim;
    return std::get<const SampleBank*>(source)->samples.cols();
}

// One-hot labels for prior-side discriminator inputs. Labeled priors carry
// their mixture component; otherwise labels are drawn from the empirical
// label distribution of the training data.
Matrix prior_labels(const LatentBatch& batch, const LabeledData& data, int label_dim, Rng& rng) {
    Matrix lab(batch.z.rows(), label_dim);
    if (!batch.labels.empty()) {
        for (int r = 0; r < lab.rows(); ++r) {
            const int cls = batch.labels[r];
            if (cls >= label_dim) throw UsageError("train: prior label exceeds label_dim");
            lab(r, cls) = 1.0;
        }
    } else {
        for (int r = 0; r < lab.rows(); ++r) {
            const int src = rng.uniform_int(data.labels.rows());
            lab.set_row(r, data.labels, src);
        }
    }
    return lab;
}

}  // namespace

void LabeledData::validate() const {
    if (x.rows() == 0) throw UsageError("LabeledData: empty data");
    if (!x.all_finite()) throw NumericError("LabeledData: non-finite data");
    if (labels.rows() > 0) {
        if (labels.rows() != x.rows()) throw UsageError("LabeledData: label rows do not align");
        for (int r = 0; r < labels.rows(); ++r) {
            double s = 0.0;
            for (int c = 0; c < labels.cols(); ++c) s += labels(r, c);
            if (std::abs(s - 1.0) > 1e-12) throw UsageError("LabeledData: label rows must sum to 1");
        }
    }
}

void TrainConfig::validate() const {
    if (lambda < 0.0) throw UsageError("TrainConfig: lambda must be >= 0");
    if (batch_size < 2) throw UsageError("TrainConfig: batch_size must be >= 2");
    if (steps < 0) throw UsageError("TrainConfig: steps must be >= 0");
    if (disc_steps_per_gen_step < 1)
        throw UsageError("TrainConfig: disc_steps_per_gen_step must be >= 1");
    if (latent_dim < 1) throw UsageError("TrainConfig: latent_dim must be >= 1");
    if (noise_dim < 0) throw UsageError("TrainConfig: noise_dim must be >= 0");
}

Matrix SampleBank::draw(int count, Rng& rng) const {
    if (samples.rows() == 0) throw UsageError("SampleBank::draw: empty bank");
    Matrix out(count, samples.cols());
    for (int r = 0; r < count; ++r) out.set_row(r, samples, rng.uniform_int(samples.rows()));
    return out;
}

double TrainingLog::tail_disc_loss(int window) const {
    const int n = static_cast<int>(steps.size());
    const int first = std::max(0, n - window);
    double s = 0.0;
    for (int i = first; i < n; ++i) s += steps[i].disc_loss;
    return n > first ? s / (n - first) : 0.0;
}

double TrainingLog::tail_recon_loss(int window) const {
    const int n = static_cast<int>(steps.size());
    const int first = std::max(0, n - window);
    double s = 0.0;
    for (int i = first; i < n; ++i) s += steps[i].recon_loss;
    return n > first ? s / (n - first) : 0.0;
}

std::vector<double> conditioned_discriminator_input(const LatentCode& code,
                                                    const std::vector<double>& label_one_hot) {
    if (label_one_hot.empty())
        throw UsageError("conditioned_discriminator_input: label required");
    std::vector<double> out;
    out.reserve(code.z.size() + code.n.size() + label_one_hot.size());
    out.insert(out.end(), code.z.begin(), code.z.end());
    out.insert(out.end(), code.n.begin(), code.n.end());
    out.insert(out.end(), label_one_hot.begin(), label_one_hot.end());
    return out;
}

TrainingLog train_autoencoder(DomainModel& model, const LabeledData& data,
                              const LatentSource& latent, const TrainConfig& cfg, Rng& rng) {
    cfg.validate();
    data.validate();
    model.validate();
    if (data.x.cols() != model.obs_dim)
        throw UsageError("train_autoencoder: data width does not match model obs_dim");
    if (latent_source_dim(latent) != model.latent_dim)
        throw UsageError("train_autoencoder: latent source dimension does not match model");
    const bool conditioned = model.label_dim > 0;
    if (conditioned && !data.has_labels())
        throw UsageError("train_autoencoder: conditioned model requires labeled data");
    if (conditioned && data.labels.cols() != model.label_dim)
        throw UsageError("train_autoencoder: label width does not match model label_dim");

    Optimizer enc_opt(cfg.gen_opt, model.encoder);
    Optimizer dec_opt(cfg.gen_opt, model.decoder);
    Optimizer disc_opt(cfg.disc_opt, model.discriminator);

    const int b = cfg.batch_size;
    const int d = model.latent_dim, m = model.noise_dim;
    TrainingLog log;
    log.steps.reserve(static_cast<std::size_t>(cfg.steps));

    for (long step = 0; step < cfg.steps; ++step) {
        // --- generator phase: descend recon + lambda * log f(E(x)) ---
        const auto idx = draw_indices(data.x.rows(), b, rng);
        const Matrix x = sample_batch(data.x, idx);
        Matrix x_labels;
        if (conditioned) {
            x_labels = Matrix(b, model.label_dim);
            for (int r = 0; r < b; ++r) x_labels.set_row(r, data.labels, idx[r]);
        }

        model.encoder.zero_grads();
        model.decoder.zero_grads();
        const Matrix codes = model.encoder.forward(x);
        const Matrix recon = model.decoder.forward(codes);

        double recon_loss = 0.0;
        Matrix d_recon(b, model.obs_dim);
        for (int r = 0; r < b; ++r) {
            for (int c = 0; c < model.obs_dim; ++c) {
                const double diff = recon(r, c) - x(r, c);
                recon_loss += diff * diff;
                d_recon(r, c) = 2.0 * diff / b;
            }
        }
        recon_loss /= b;

        const Matrix disc_in = conditioned ? codes.hcat(x_labels) : codes;
        const Matrix logits = model.discriminator.forward(disc_in);
        double gen_adv = 0.0;
        Matrix d_logit(b, 1);
        for (int r = 0; r < b; ++r) {
            const double l = logits(r, 0);
            gen_adv += log_f(l);
            // d/dl of (lambda/b) * log f(l) is (lambda/b) * (1 - f(l)); the
            // non-saturating form descends -log(1-f) instead.
            d_logit(r, 0) = cfg.non_saturating ? cfg.lambda / b * sigmoid(l)
                                               : cfg.lambda / b * (1.0 - sigmoid(l));
        }
        gen_adv /= b;

        if (!std::isfinite(recon_loss) || !std::isfinite(gen_adv))
            throw NumericError("train_autoencoder: non-finite loss at step " +
                               std::to_string(step));

        model.discriminator.zero_grads();  // generator phase must not train f
        const Matrix d_disc_in = model.discriminator.backward(d_logit);
        Matrix d_codes = model.decoder.backward(d_recon);
        for (int r = 0; r < b; ++r)
            for (int c = 0; c < model.code_dim(); ++c) d_codes(r, c) += d_disc_in(r, c);
        model.encoder.backward(d_codes);
        enc_opt.step(model.encoder);
        dec_opt.step(model.decoder);

        // --- discriminator phase: ascend log f(E(x)) + log(1 - f(z, n)) ---
        double disc_obj = 0.0;
        for (int ds = 0; ds < cfg.disc_steps_per_gen_step; ++ds) {
            const auto didx = ds == 0 ? idx : draw_indices(data.x.rows(), b, rng);
            const Matrix dx = ds == 0 ? x : sample_batch(data.x, didx);
            Matrix dlabels;
            if (conditioned) {
                dlabels = Matrix(b, model.label_dim);
                for (int r = 0; r < b; ++r) dlabels.set_row(r, data.labels, didx[r]);
            }
            const Matrix enc_codes = model.encoder.eval(dx);

            LatentBatch lat = draw_latent(latent, b, rng);
            Matrix prior_codes = m > 0 ? lat.z.hcat(gauss_sample(rng, b, m)) : lat.z;

            Matrix enc_in = conditioned ? enc_codes.hcat(dlabels) : enc_codes;
            Matrix prior_in = conditioned
                                  ? prior_codes.hcat(prior_labels(lat, data, model.label_dim, rng))
                                  : prior_codes;

            model.discriminator.zero_grads();
            const Matrix enc_logits = model.discriminator.forward(enc_in);
            double obj = 0.0;
            Matrix d_enc(b, 1);
            for (int r = 0; r < b; ++r) {
                const double l = enc_logits(r, 0);
                obj += log_f(l);
                d_enc(r, 0) = -(1.0 - sigmoid(l)) / b;  // descend the negative objective
            }
            model.discriminator.backward(d_enc);

            const Matrix prior_logits = model.discriminator.forward(prior_in);
            Matrix d_prior(b, 1);
            for (int r = 0; r < b; ++r) {
                const double l = prior_logits(r, 0);
                obj += log_one_minus_f(l);
                d_prior(r, 0) = sigmoid(l) / b;
            }
            model.discriminator.backward(d_prior);
            disc_opt.step(model.discriminator);

            disc_obj = obj / b;
            if (!std::isfinite(disc_obj))
                throw NumericError("train_autoencoder: non-finite discriminator loss at step " +
                                   std::to_string(step));
        }

        log.steps.push_back({step, recon_loss, gen_adv, disc_obj});
    }
    return log;
}

namespace {

// bank_size codes of `data` through the current encoder, projected to z.
SampleBank encoded_bank(const DomainModel& model, const LabeledData& data, int bank_size,
                        Rng& rng) {
    const auto idx = draw_indices(data.x.rows(), bank_size, rng);
    const Matrix x = sample_batch(data.x, idx);
    const Matrix codes = model.encoder.eval(x);
    SampleBank bank;
    bank.samples = codes.col_block(0, model.latent_dim);
    bank.origin = SampleBank::Origin::Encoded;
    bank.domain_id = model.domain_id;
    return bank;
}

}  // namespace

AlternatingResult learn_latent_alternating(DomainModel& model_a, DomainModel& model_b,
                                           const LabeledData& data_a, const LabeledData& data_b,
                                           const TrainConfig& cfg, int rounds, int bank_size,
                                           Rng& rng) {
    if (rounds < 1) throw UsageError("learn_latent_alternating: rounds must be >= 1");
    if (bank_size < 1) throw UsageError("learn_latent_alternating: bank_size must be >= 1");
    if (model_a.latent_dim != model_b.latent_dim)
        throw UsageError("learn_latent_alternating: models do not share a latent dimension");

    AlternatingResult result;
    for (int round = 0; round < rounds; ++round) {
        SampleBank bank_b;
        if (round == 0) {
            Rng boot_rng = rng.split(40000);
            bank_b.samples = gauss_sample(boot_rng, bank_size, model_a.latent_dim);
            bank_b.origin = SampleBank::Origin::Prior;
        } else {
            Rng enc_rng = rng.split(41000 + round);
            bank_b = encoded_bank(model_b, data_b, bank_size, enc_rng);
        }
        Rng train_a = rng.split(42000 + round);
        TrainingLog la = train_autoencoder(model_a, data_a, &bank_b, cfg, train_a);
        result.log_a.steps.insert(result.log_a.steps.end(), la.steps.begin(), la.steps.end());

        Rng enc_a = rng.split(43000 + round);
        SampleBank bank_a = encoded_bank(model_a, data_a, bank_size, enc_a);
        Rng train_b = rng.split(44000 + round);
        TrainingLog lb = train_autoencoder(model_b, data_b, &bank_a, cfg, train_b);
        result.log_b.steps.insert(result.log_b.steps.end(), lb.steps.begin(), lb.steps.end());
    }

    Rng final_a = rng.split(45000);
    Rng final_b = rng.split(45001);
    const SampleBank ba = encoded_bank(model_a, data_a, bank_size, final_a);
    const SampleBank bb = encoded_bank(model_b, data_b, bank_size, final_b);
    SampleBank merged;
    merged.samples = Matrix(ba.samples.rows() + bb.samples.rows(), ba.samples.cols());
    for (int r = 0; r < ba.samples.rows(); ++r) merged.samples.set_row(r, ba.samples, r);
    for (int r = 0; r < bb.samples.rows(); ++r)
        merged.samples.set_row(ba.samples.rows() + r, bb.samples, r);
    merged.origin = SampleBank::Origin::Encoded;
    merged.domain_id = model_a.domain_id + "+" + model_b.domain_id;
    merged.freeze();
    result.bank = std::move(merged);
    return result;
}

TrainingLog add_domain(DomainModel& new_model, const LabeledData& new_data,
                       const SampleBank& frozen_bank, const TrainConfig& cfg, Rng& rng) {
    if (!frozen_bank.frozen)
        throw UsageError("add_domain: bank must be frozen before adding a domain");
    if (frozen_bank.samples.cols() != new_model.latent_dim)
        throw UsageError("add_domain: bank dimension does not match model latent_dim");
    return train_autoencoder(new_model, new_data, &frozen_bank, cfg, rng);
}

}  // namespace ucae
