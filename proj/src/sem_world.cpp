#include "ucae/sem_world.hpp"

#include <cmath>

#include "ucae/errors.hpp"
#include "ucae/linalg.hpp"

namespace ucae {

void SemSpec::validate() const {
    if (latent_dim < 1) throw UsageError("SemSpec: latent_dim must be >= 1");
    if (domains.size() < 2) throw UsageError("SemSpec: needs at least 2 domains");
    if (cluster_shift < 0.0) throw UsageError("SemSpec: cluster_shift must be >= 0");
    for (const auto& g : domains) {
        if (g.obs_dim < latent_dim + g.noise_dim)
            throw UsageError("SemSpec: obs_dim must be >= latent_dim + noise_dim");
        if (g.mix.rows() != g.obs_dim || g.mix.cols() != latent_dim + g.noise_dim)
            throw UsageError("SemSpec: mix has wrong shape");
        if (g.offset.rows() != 1 || g.offset.cols() != g.obs_dim)
            throw UsageError("SemSpec: offset has wrong shape");
        if (g.warp_alpha < 0.0) throw UsageError("SemSpec: warp_alpha must be >= 0");
    }
}

SemSpec make_sem(int latent_dim, const std::vector<std::pair<int, int>>& domain_dims,
                 double warp_alpha, Rng& rng, double cluster_shift) {
    SemSpec spec;
    spec.latent_dim = latent_dim;
    spec.seed = rng.seed();
    spec.cluster_shift = cluster_shift;
    int tag = 0;
    for (const auto& [n, m] : domain_dims) {
        if (n < latent_dim + m)
            throw UsageError("make_sem: obs_dim must be >= latent_dim + noise_dim");
        DomainGen gen;
        gen.obs_dim = n;
        gen.noise_dim = m;
        gen.warp_alpha = warp_alpha;
        Rng mix_rng = rng.split(1000 + tag);
        gen.mix = gauss_sample(mix_rng, n, latent_dim + m);
        orthonormalize_columns(gen.mix);
        Rng off_rng = rng.split(2000 + tag);
        gen.offset = gauss_sample(off_rng, 1, n);
        spec.domains.push_back(std::move(gen));
        ++tag;
    }
    spec.validate();
    return spec;
}

SemSpec make_identity_sem(int k_domains) {
    if (k_domains < 2) throw UsageError("make_identity_sem: needs at least 2 domains");
    SemSpec spec;
    spec.latent_dim = 1;
    spec.seed = 0;
    for (int i = 0; i < k_domains; ++i) {
        DomainGen gen;
        gen.obs_dim = 1;
        gen.noise_dim = 0;
        gen.mix = Matrix(1, 1, {1.0});
        gen.offset = Matrix(1, 1, {0.0});
        gen.warp_alpha = 0.0;
        spec.domains.push_back(std::move(gen));
    }
    spec.validate();
    return spec;
}

std::pair<Matrix, std::vector<int>> sample_latent(const SemSpec& spec, int count, Rng& rng) {
    Matrix z = gauss_sample(rng, count, spec.latent_dim);
    std::vector<int> labels;
    if (spec.labeled()) {
        labels.resize(count);
        for (int r = 0; r < count; ++r) {
            const int s = rng.uniform_int(2);
            labels[r] = s;
            z(r, 0) += (s == 1 ? spec.cluster_shift : -spec.cluster_shift);
        }
    }
    return {std::move(z), std::move(labels)};
}

Matrix apply_domain_map(const SemSpec& spec, int domain, const Matrix& z, const Matrix& noise) {
    const DomainGen& gen = spec.domains.at(domain);
    if (z.cols() != spec.latent_dim) throw UsageError("apply_domain_map: bad latent width");
    if (noise.cols() != gen.noise_dim) throw UsageError("apply_domain_map: bad noise width");
    if (gen.noise_dim > 0 && noise.rows() != z.rows())
        throw UsageError("apply_domain_map: row mismatch");

    const Matrix code = gen.noise_dim > 0 ? z.hcat(noise) : z;
    Matrix x = matmul(code, gen.mix.transposed());
    const double alpha = gen.warp_alpha;
    for (int r = 0; r < x.rows(); ++r) {
        double* row = x.row_ptr(r);
        for (int c = 0; c < gen.obs_dim; ++c) {
            const double u = row[c] + gen.offset(0, c);
            row[c] = u + alpha * std::tanh(u);
        }
    }
    require_finite(x, "apply_domain_map");
    return x;
}

CoupledSamples sample_coupled(const SemSpec& spec, int count, Rng& rng) {
    if (count < 1) throw UsageError("sample_coupled: count must be >= 1");
    spec.validate();
    CoupledSamples out;
    auto [z, labels] = sample_latent(spec, count, rng);
    out.z = std::move(z);
    out.labels = std::move(labels);
    for (int i = 0; i < spec.domain_count(); ++i) {
        const int m = spec.domains[i].noise_dim;
        Matrix noise = m > 0 ? gauss_sample(rng, count, m) : Matrix(count, 0);
        out.xs.push_back(apply_domain_map(spec, i, out.z, noise));
        out.noises.push_back(std::move(noise));
    }
    return out;
}

double unwarp_scalar(double y, double alpha) {
    if (alpha == 0.0) return y;
    // u is bracketed by [y - alpha, y + alpha] since |alpha*tanh(u)| <= alpha.
    double lo = y - alpha, hi = y + alpha;
    double u = y / (1.0 + alpha);
    if (u < lo || u > hi) u = 0.5 * (lo + hi);
    const double tol = 1e-14 * std::max(1.0, std::abs(y));
    for (int it = 0; it < 200; ++it) {
        const double t = std::tanh(u);
        const double g = u + alpha * t - y;
        if (std::abs(g) <= tol) return u;
        if (g > 0.0) hi = u; else lo = u;
        const double dg = 1.0 + alpha * (1.0 - t * t);
        double next = u - g / dg;
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
        u = next;
    }
    throw NumericError("unwarp_scalar: root finding did not converge");
}

Autoencoder oracle_autoencoder(const SemSpec& spec, int domain) {
    if (domain < 0 || domain >= spec.domain_count())
        throw UsageError("oracle_autoencoder: bad domain index");
    const DomainGen gen = spec.domains[domain];
    const int d = spec.latent_dim;

    Autoencoder ae;
    ae.obs_dim = gen.obs_dim;
    ae.latent_dim = d;
    ae.noise_dim = gen.noise_dim;
    ae.decode = [spec, domain, d](const Matrix& codes) {
        const Matrix z = codes.col_block(0, d);
        const Matrix n = codes.col_block(d, codes.cols() - d);
        return apply_domain_map(spec, domain, z, n);
    };
    ae.encode = [gen](const Matrix& x) {
        if (x.cols() != gen.obs_dim) throw UsageError("oracle encode: bad input width");
        Matrix u(x.rows(), x.cols());
        for (int r = 0; r < x.rows(); ++r)
            for (int c = 0; c < x.cols(); ++c)
                u(r, c) = unwarp_scalar(x(r, c), gen.warp_alpha) - gen.offset(0, c);
        return matmul(u, gen.mix);
    };
    return ae;
}

double oracle_decoder_lipschitz(const SemSpec& spec, int domain) {
    return 1.0 + spec.domains.at(domain).warp_alpha;
}

}  // namespace ucae
