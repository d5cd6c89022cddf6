#include "ucae/domain_model.hpp"

#include "ucae/errors.hpp"
#include "ucae/linalg.hpp"

namespace ucae {

void DomainModel::validate() const {
    if (obs_dim <= 0 || latent_dim <= 0 || noise_dim < 0 || label_dim < 0)
        throw UsageError("DomainModel: bad dimensions");
    if (encoder.input_dim() != obs_dim || encoder.output_dim() != code_dim())
        throw UsageError("DomainModel: encoder shape does not match dims");
    if (decoder.input_dim() != code_dim() || decoder.output_dim() != obs_dim)
        throw UsageError("DomainModel: decoder shape does not match dims");
    if (discriminator.input_dim() != code_dim() + label_dim || discriminator.output_dim() != 1)
        throw UsageError("DomainModel: discriminator shape does not match dims");
}

Autoencoder DomainModel::autoencoder() const {
    Autoencoder ae;
    ae.obs_dim = obs_dim;
    ae.latent_dim = latent_dim;
    ae.noise_dim = noise_dim;
    // The view copies the nets so it stays valid independent of the model.
    ae.encode = [enc = encoder](const Matrix& x) { return enc.eval(x); };
    ae.decode = [dec = decoder](const Matrix& c) { return dec.eval(c); };
    return ae;
}

DomainModel make_domain_model(const std::string& domain_id, int obs_dim, int latent_dim,
                              int noise_dim, int label_dim, const ModelShape& shape, Rng& rng) {
    DomainModel m;
    m.domain_id = domain_id;
    m.obs_dim = obs_dim;
    m.latent_dim = latent_dim;
    m.noise_dim = noise_dim;
    m.label_dim = label_dim;
    Rng enc_rng = rng.split(1);
    Rng dec_rng = rng.split(2);
    Rng disc_rng = rng.split(3);
    m.encoder = Mlp::make(obs_dim, shape.hidden_gen, m.code_dim(), shape.hidden_act,
                          shape.leaky_slope, enc_rng);
    m.decoder = Mlp::make(m.code_dim(), shape.hidden_gen, obs_dim, shape.hidden_act,
                          shape.leaky_slope, dec_rng);
    m.discriminator = Mlp::make(m.code_dim() + label_dim, shape.hidden_disc, 1, shape.hidden_act,
                                shape.leaky_slope, disc_rng);
    m.validate();
    return m;
}

std::vector<LatentCode> encode(const DomainModel& model, const Matrix& x) {
    if (x.cols() != model.obs_dim) throw UsageError("encode: input width != obs_dim");
    const Matrix raw = model.encoder.eval(x);
    std::vector<LatentCode> codes(x.rows());
    for (int r = 0; r < x.rows(); ++r) {
        const double* row = raw.row_ptr(r);
        codes[r].z.assign(row, row + model.latent_dim);
        codes[r].n.assign(row + model.latent_dim, row + model.code_dim());
    }
    return codes;
}

Matrix decode(const DomainModel& model, const std::vector<LatentCode>& codes) {
    Matrix c(static_cast<int>(codes.size()), model.code_dim());
    for (std::size_t r = 0; r < codes.size(); ++r) {
        if (static_cast<int>(codes[r].z.size()) != model.latent_dim ||
            static_cast<int>(codes[r].n.size()) != model.noise_dim)
            throw UsageError("decode: code dims do not match model");
        double* row = c.row_ptr(static_cast<int>(r));
        for (int j = 0; j < model.latent_dim; ++j) row[j] = codes[r].z[j];
        for (int j = 0; j < model.noise_dim; ++j) row[model.latent_dim + j] = codes[r].n[j];
    }
    return model.decoder.eval(c);
}

Matrix translate(const Autoencoder& src, const Autoencoder& dst, const Matrix& x, Rng& rng) {
    if (src.latent_dim != dst.latent_dim)
        throw UsageError("translate: models do not share a latent dimension");
    const Matrix codes = src.encode(x);
    const Matrix z = codes.col_block(0, src.latent_dim);
    Matrix full = dst.noise_dim > 0 ? z.hcat(gauss_sample(rng, x.rows(), dst.noise_dim)) : z;
    return dst.decode(full);
}

Matrix translate(const DomainModel& src, const DomainModel& dst, const Matrix& x, Rng& rng) {
    const Autoencoder a = src.autoencoder();
    const Autoencoder b = dst.autoencoder();
    return translate(a, b, x, rng);
}

Matrix translate_path(const std::vector<const Autoencoder*>& models, const Matrix& x, Rng& rng) {
    if (models.size() < 2) throw UsageError("translate_path: needs at least 2 models");
    Matrix cur = x;
    for (std::size_t i = 0; i + 1 < models.size(); ++i)
        cur = translate(*models[i], *models[i + 1], cur, rng);
    return cur;
}

}  // namespace ucae
