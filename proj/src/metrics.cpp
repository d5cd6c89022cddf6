#include "ucae/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ucae/errors.hpp"
#include "ucae/kernels.hpp"
#include "ucae/linalg.hpp"

namespace ucae {

namespace {

Matrix distance_matrix(const Matrix& a, const Matrix& b, bool squared) {
    if (a.cols() != b.cols()) throw UsageError("distance_matrix: dimension mismatch");
    Matrix d(a.rows(), b.rows());
    kernels::pairwise_distances_omp(a.data(), a.rows(), b.data(), b.rows(), a.cols(), squared,
                                    d.data());
    return d;
}

double assignment_cost(const Matrix& cost, const std::vector<int>& col_of_row) {
    double total = 0.0;
    for (int i = 0; i < cost.rows(); ++i) total += cost(i, col_of_row[i]);
    return total;
}

}  // namespace

std::vector<int> solve_assignment(const Matrix& cost) {
    // Shortest augmenting paths with dual potentials; 1-based arrays with
    // row/column 0 as sentinels.
    const int n = cost.rows();
    if (n == 0 || cost.cols() != n) throw UsageError("solve_assignment: needs a square matrix");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> col_of_row(n, -1);
    for (int j = 1; j <= n; ++j)
        if (match[j] > 0) col_of_row[match[j] - 1] = j - 1;
    return col_of_row;
}

double wasserstein1_exact(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw UsageError("wasserstein1_exact: sample counts differ");
    if (a.cols() != b.cols()) throw UsageError("wasserstein1_exact: dimensions differ");
    if (a.rows() < 1) throw UsageError("wasserstein1_exact: empty samples");
    if (a.rows() > kWasserstein1Budget)
        throw UsageError("wasserstein1_exact: sample count exceeds exact-solver budget; subsample");
    const Matrix cost = distance_matrix(a, b, /*squared=*/false);
    const auto assignment = solve_assignment(cost);
    return assignment_cost(cost, assignment) / a.rows();
}

namespace {

// One alternating log-domain update (f then g) at temperature eps; returns
// the largest potential change.
double sinkhorn_sweep(const Matrix& c, double eps, std::vector<double>& f,
                      std::vector<double>& g) {
    const int n = c.rows(), m = c.cols();
    const double log_wm = -std::log(static_cast<double>(m));
    const double log_wn = -std::log(static_cast<double>(n));
    double change = 0.0;
#pragma omp parallel for schedule(static) reduction(max : change)
    for (int i = 0; i < n; ++i) {
        const double* row = c.row_ptr(i);
        double hi = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) hi = std::max(hi, (g[j] - row[j]) / eps);
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc += std::exp((g[j] - row[j]) / eps - hi);
        const double nf = -eps * (hi + std::log(acc) + log_wm);
        change = std::max(change, std::abs(nf - f[i]));
        f[i] = nf;
    }
#pragma omp parallel for schedule(static) reduction(max : change)
    for (int j = 0; j < m; ++j) {
        double hi = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) hi = std::max(hi, (f[i] - c(i, j)) / eps);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += std::exp((f[i] - c(i, j)) / eps - hi);
        const double ng = -eps * (hi + std::log(acc) + log_wn);
        change = std::max(change, std::abs(ng - g[j]));
        g[j] = ng;
    }
    return change;
}

// Entropic plan cost sum_ij P_ij C_ij at eps_target, with epsilon scaling
// from the cost scale down to the target to keep the iteration count low.
double entropic_ot_scaled(const Matrix& c, double eps_target, int max_iter) {
    double cmax = 0.0;
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) cmax = std::max(cmax, c(i, j));

    const int n = c.rows(), m = c.cols();
    std::vector<double> f(n, 0.0), g(m, 0.0);
    int iters_left = max_iter;

    for (double eps = std::max(cmax / 2.0, eps_target); eps > eps_target * 1.5; eps /= 2.0) {
        for (int it = 0; it < 20 && iters_left > 0; ++it, --iters_left)
            if (sinkhorn_sweep(c, eps, f, g) < 1e-12 * std::max(1.0, cmax)) break;
    }

    double change = std::numeric_limits<double>::infinity();
    while (iters_left > 0 && change > 1e-12 * std::max(1.0, cmax)) {
        change = sinkhorn_sweep(c, eps_target, f, g);
        --iters_left;
    }
    if (change > 1e-9 * std::max(1.0, cmax))
        throw NumericError("sinkhorn_divergence: iterations exhausted before convergence");

    // Plan cost; row partials accumulate in parallel, the final sum is serial
    // in index order so the result does not depend on the thread count.
    const double log_w = -std::log(static_cast<double>(n)) - std::log(static_cast<double>(m));
    std::vector<double> row_cost(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double* row = c.row_ptr(i);
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += std::exp((f[i] + g[j] - row[j]) / eps_target + log_w) * row[j];
        row_cost[i] = s;
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += row_cost[i];
    return total;
}

}  // namespace

double sinkhorn_divergence(const Matrix& a, const Matrix& b, double epsilon, int max_iter) {
    if (epsilon <= 0.0) throw UsageError("sinkhorn_divergence: epsilon must be positive");
    if (a.cols() != b.cols()) throw UsageError("sinkhorn_divergence: dimensions differ");
    const Matrix cab = distance_matrix(a, b, false);
    const Matrix caa = distance_matrix(a, a, false);
    const Matrix cbb = distance_matrix(b, b, false);
    const double ot_ab = entropic_ot_scaled(cab, epsilon, max_iter);
    const double ot_aa = entropic_ot_scaled(caa, epsilon, max_iter);
    const double ot_bb = entropic_ot_scaled(cbb, epsilon, max_iter);
    return ot_ab - 0.5 * ot_aa - 0.5 * ot_bb;
}

namespace {

struct MmdBlocks {
    double same_a = 0.0;  // sum over i<j pairs inside group a
    double same_b = 0.0;
    double cross = 0.0;
};

// Sums the pooled kernel over groups given a permutation of pooled indices;
// the first `na` permuted slots form group a.
MmdBlocks mmd_blocks(const Matrix& kernel, const std::vector<int>& order, int na) {
    const int total = kernel.rows();
    MmdBlocks blk;
    std::vector<char> in_a(total, 0);
    for (int i = 0; i < na; ++i) in_a[order[i]] = 1;
    for (int i = 0; i < total; ++i) {
        const double* row = kernel.row_ptr(i);
        for (int j = i + 1; j < total; ++j) {
            const double k = row[j];
            if (in_a[i] && in_a[j]) blk.same_a += k;
            else if (!in_a[i] && !in_a[j]) blk.same_b += k;
            else blk.cross += k;
        }
    }
    return blk;
}

double mmd_statistic(const MmdBlocks& blk, int na, int nb) {
    return 2.0 * blk.same_a / (static_cast<double>(na) * (na - 1)) +
           2.0 * blk.same_b / (static_cast<double>(nb) * (nb - 1)) -
           2.0 * blk.cross / (static_cast<double>(na) * nb);
}

}  // namespace

TwoSampleResult mmd_test(const Matrix& a, const Matrix& b, Rng& rng, int n_permutations) {
    if (a.cols() != b.cols()) throw UsageError("mmd_test: dimensions differ");
    const int na = a.rows(), nb = b.rows();
    if (na < 2 || nb < 2) throw UsageError("mmd_test: needs at least 2 samples per side");

    Matrix pooled(na + nb, a.cols());
    for (int r = 0; r < na; ++r) pooled.set_row(r, a, r);
    for (int r = 0; r < nb; ++r) pooled.set_row(na + r, b, r);

    Matrix sq = distance_matrix(pooled, pooled, /*squared=*/true);

    // Median pairwise distance over distinct pooled pairs.
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(na + nb) * (na + nb - 1) / 2);
    for (int i = 0; i < na + nb; ++i)
        for (int j = i + 1; j < na + nb; ++j) dists.push_back(std::sqrt(sq(i, j)));
    std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
    const double sigma = dists[dists.size() / 2];
    if (sigma <= 0.0) throw NumericError("mmd_test: degenerate pooled sample");

    const double scale = -1.0 / (2.0 * sigma * sigma);
    Matrix kernel(na + nb, na + nb);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < na + nb; ++i) {
        const double* srow = sq.row_ptr(i);
        double* krow = kernel.row_ptr(i);
        for (int j = 0; j < na + nb; ++j) krow[j] = std::exp(srow[j] * scale);
    }

    std::vector<int> ident(na + nb);
    for (int i = 0; i < na + nb; ++i) ident[i] = i;
    const double observed = mmd_statistic(mmd_blocks(kernel, ident, na), na, nb);

    int exceed = 0;
#pragma omp parallel for schedule(static) reduction(+ : exceed)
    for (int p = 0; p < n_permutations; ++p) {
        Rng perm_rng = rng.split(90000 + static_cast<std::uint64_t>(p));
        std::vector<int> order(ident);
        for (int i = na + nb - 1; i > 0; --i)
            std::swap(order[i], order[perm_rng.uniform_int(i + 1)]);
        const double stat = mmd_statistic(mmd_blocks(kernel, order, na), na, nb);
        if (stat >= observed) ++exceed;
    }

    TwoSampleResult res;
    res.statistic = observed;
    res.n_permutations = n_permutations;
    res.permutation_p = (1.0 + exceed) / (n_permutations + 1.0);
    return res;
}

Matrix subsample_rows(const Matrix& m, int count, Rng& rng) {
    if (count > m.rows()) throw UsageError("subsample_rows: not enough rows");
    std::vector<int> idx(m.rows());
    for (int i = 0; i < m.rows(); ++i) idx[i] = i;
    for (int i = 0; i < count; ++i) std::swap(idx[i], idx[i + rng.uniform_int(m.rows() - i)]);
    Matrix out(count, m.cols());
    for (int i = 0; i < count; ++i) out.set_row(i, m, idx[i]);
    return out;
}

Matrix prior_samples(int latent_dim, int noise_dim, int count, Rng& rng, double cluster_shift) {
    Matrix s = gauss_sample(rng, count, latent_dim + std::max(noise_dim, 0));
    if (cluster_shift > 0.0)
        for (int r = 0; r < count; ++r)
            s(r, 0) += rng.uniform_int(2) == 1 ? cluster_shift : -cluster_shift;
    return s;
}

TwoSampleResult check_path_consistency(const std::vector<Autoencoder>& models,
                                       const std::vector<int>& path, const Matrix& data,
                                       Rng& rng, const EvalConfig& cfg) {
    if (path.size() < 3) throw UsageError("check_path_consistency: path length must be >= 3");
    for (int idx : path)
        if (idx < 0 || idx >= static_cast<int>(models.size()))
            throw UsageError("check_path_consistency: path index out of range");
    for (const auto& m : models)
        if (m.latent_dim != models.front().latent_dim)
            throw UsageError("check_path_consistency: models do not share a latent dimension");
    if (data.rows() < 4) throw UsageError("check_path_consistency: not enough data");

    const int half = std::min(cfg.n_samples, data.rows() / 2);
    Rng sub_rng = rng.split(1);
    const Matrix shuffled = subsample_rows(data, 2 * half, sub_rng);
    const Matrix first = shuffled.row_block(0, half);
    const Matrix second = shuffled.row_block(half, half);

    std::vector<const Autoencoder*> chain;
    for (int idx : path) chain.push_back(&models[idx]);
    Rng hop_rng = rng.split(2);
    const Matrix multi = translate_path(chain, first, hop_rng);
    Rng direct_rng = rng.split(3);
    const Matrix direct = translate(models[path.front()], models[path.back()], second, direct_rng);

    Rng test_rng = rng.split(4);
    return mmd_test(multi, direct, test_rng, cfg.n_permutations);
}

namespace {

// Joint sample of Q^(source): observed x in slot `source`, decodings with
// fresh noise elsewhere.
Matrix joint_sample(const std::vector<Autoencoder>& models, int source, const Matrix& x,
                    Rng& rng) {
    const int d = models[source].latent_dim;
    const Matrix codes = models[source].encode(x);
    const Matrix z = codes.col_block(0, d);
    int total = 0;
    for (const auto& m : models) total += m.obs_dim;
    Matrix joint(x.rows(), total);
    int col = 0;
    for (std::size_t j = 0; j < models.size(); ++j) {
        Matrix xj;
        if (static_cast<int>(j) == source) {
            xj = x;
        } else {
            Rng noise_rng = rng.split(10 + j);
            Matrix full = models[j].noise_dim > 0
                              ? z.hcat(gauss_sample(noise_rng, x.rows(), models[j].noise_dim))
                              : z;
            xj = models[j].decode(full);
        }
        for (int r = 0; r < joint.rows(); ++r)
            for (int c = 0; c < xj.cols(); ++c) joint(r, col + c) = xj(r, c);
        col += models[j].obs_dim;
    }
    return joint;
}

}  // namespace

std::vector<GlobalPairResult> check_global_consistency(const std::vector<Autoencoder>& models,
                                                       const std::vector<Matrix>& marginals,
                                                       Rng& rng, const EvalConfig& cfg) {
    if (models.size() < 2) throw UsageError("check_global_consistency: needs at least 2 models");
    if (marginals.size() != models.size())
        throw UsageError("check_global_consistency: one marginal dataset per model required");

    std::vector<Matrix> joints;
    for (std::size_t i = 0; i < models.size(); ++i) {
        Rng sub_rng = rng.split(100 + i);
        const Matrix x = subsample_rows(marginals[i], std::min(cfg.n_samples, marginals[i].rows()),
                                        sub_rng);
        Rng joint_rng = rng.split(200 + i);
        joints.push_back(joint_sample(models, static_cast<int>(i), x, joint_rng));
    }

    std::vector<GlobalPairResult> out;
    for (std::size_t i = 0; i < models.size(); ++i) {
        for (std::size_t j = i + 1; j < models.size(); ++j) {
            Rng test_rng = rng.split(300 + i * models.size() + j);
            GlobalPairResult pr;
            pr.source_a = static_cast<int>(i);
            pr.source_b = static_cast<int>(j);
            pr.result = mmd_test(joints[i], joints[j], test_rng, cfg.n_permutations);
            out.push_back(std::move(pr));
        }
    }
    return out;
}

BoundReport check_transport_bound(const Autoencoder& src, const Autoencoder& dst,
                                  double gamma_dst, const Matrix& marginal_src,
                                  const Matrix& marginal_dst, const Matrix& prior_src,
                                  const Matrix& prior_dst, Rng& rng, const EvalConfig& cfg) {
    if (src.latent_dim != dst.latent_dim)
        throw UsageError("check_transport_bound: models do not share a latent dimension");
    const int n = std::min({cfg.bound_samples, marginal_src.rows(), marginal_dst.rows(),
                            prior_src.rows(), prior_dst.rows(), kWasserstein1Budget});
    if (prior_src.cols() != src.code_dim() || prior_dst.cols() != dst.code_dim())
        throw UsageError("check_transport_bound: prior sample width does not match code dims");

    Rng r1 = rng.split(1), r2 = rng.split(2), r3 = rng.split(3), r4 = rng.split(4);
    const Matrix xs = subsample_rows(marginal_src, n, r1);
    const Matrix xd = subsample_rows(marginal_dst, n, r2);
    const Matrix ps = subsample_rows(prior_src, n, r3);
    const Matrix pd = subsample_rows(prior_dst, n, r4);

    Rng trans_rng = rng.split(5);
    const Matrix translated = translate(src, dst, xs, trans_rng);

    BoundReport rep;
    rep.gamma = gamma_dst;
    rep.lhs = wasserstein1_exact(translated, xd);
    rep.term_src = wasserstein1_exact(src.encode(xs), ps);
    rep.term_dst = wasserstein1_exact(dst.encode(xd), pd);
    rep.recon = recon_mean_error(dst, xd);
    rep.rhs = rep.gamma * rep.term_src + rep.gamma * rep.term_dst + rep.recon;
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

BoundReport check_transport_bound(const DomainModel& src, const DomainModel& dst,
                                  const Matrix& marginal_src, const Matrix& marginal_dst,
                                  Rng& rng, const EvalConfig& cfg) {
    Rng prior_rng = rng.split(6);
    const int n = std::min(cfg.bound_samples, kWasserstein1Budget);
    const Matrix prior_src = prior_samples(src.latent_dim, src.noise_dim, n, prior_rng);
    Rng prior_rng2 = rng.split(7);
    const Matrix prior_dst = prior_samples(dst.latent_dim, dst.noise_dim, n, prior_rng2);
    return check_transport_bound(src.autoencoder(), dst.autoencoder(),
                                 lipschitz_upper_bound(dst.decoder), marginal_src, marginal_dst,
                                 prior_src, prior_dst, rng, cfg);
}

double recon_mse_ratio(const Autoencoder& model, const Matrix& data) {
    const Matrix rec = model.decode(model.encode(data));
    double mse = 0.0;
    for (int r = 0; r < data.rows(); ++r)
        mse += squared_distance(data.row_ptr(r), rec.row_ptr(r), data.cols());
    mse /= data.rows();
    const double tv = trace_variance(data);
    if (tv <= 0.0) throw NumericError("recon_mse_ratio: degenerate data (zero variance)");
    return mse / tv;
}

double recon_mean_error(const Autoencoder& model, const Matrix& data) {
    const Matrix rec = model.decode(model.encode(data));
    double total = 0.0;
    for (int r = 0; r < data.rows(); ++r)
        total += euclidean_distance(data.row_ptr(r), rec.row_ptr(r), data.cols());
    return total / data.rows();
}

}  // namespace ucae
