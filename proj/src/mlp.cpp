#include "ucae/mlp.hpp"

#include <cmath>

#include "ucae/errors.hpp"
#include "ucae/kernels.hpp"
#include "ucae/linalg.hpp"

namespace ucae {

namespace {

void activate_inplace(Matrix& m, const LayerSpec& spec) {
    double* p = m.data();
    const std::size_t n = m.size();
    switch (spec.activation) {
        case Activation::Identity:
            break;
        case Activation::LeakyRelu: {
            const double s = spec.leaky_slope;
            for (std::size_t i = 0; i < n; ++i)
                if (p[i] < 0.0) p[i] *= s;
            break;
        }
        case Activation::Tanh:
            for (std::size_t i = 0; i < n; ++i) p[i] = std::tanh(p[i]);
            break;
    }
}

// delta <- upstream * act'(preact), elementwise.
void activation_backward(Matrix& delta, const Matrix& preact, const LayerSpec& spec) {
    double* d = delta.data();
    const double* s = preact.data();
    const std::size_t n = delta.size();
    switch (spec.activation) {
        case Activation::Identity:
            break;
        case Activation::LeakyRelu: {
            const double slope = spec.leaky_slope;
            for (std::size_t i = 0; i < n; ++i)
                if (s[i] < 0.0) d[i] *= slope;
            break;
        }
        case Activation::Tanh:
            for (std::size_t i = 0; i < n; ++i) {
                const double t = std::tanh(s[i]);
                d[i] *= 1.0 - t * t;
            }
            break;
    }
}

}  // namespace

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::LeakyRelu: return "leaky_relu";
        case Activation::Tanh: return "tanh";
    }
    return "?";
}

void LayerSpec::validate() const {
    if (in_dim <= 0 || out_dim <= 0) throw UsageError("LayerSpec: dimensions must be positive");
    if (activation == Activation::LeakyRelu && (leaky_slope <= 0.0 || leaky_slope > 1.0))
        throw UsageError("LayerSpec: leaky_relu slope must be in (0,1]");
}

Mlp::Mlp(std::vector<LayerSpec> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw UsageError("Mlp: needs at least one layer");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        layers_[l].validate();
        if (l > 0 && layers_[l].in_dim != layers_[l - 1].out_dim)
            throw UsageError("Mlp: consecutive layer dimensions do not chain");
    }
    for (const auto& spec : layers_) {
        weights_.emplace_back(spec.out_dim, spec.in_dim);
        biases_.emplace_back(1, spec.out_dim);
        grad_w_.emplace_back(spec.out_dim, spec.in_dim);
        grad_b_.emplace_back(1, spec.out_dim);
    }
    inputs_.resize(layers_.size());
    preacts_.resize(layers_.size());
}

Mlp Mlp::make(int in_dim, const std::vector<int>& hidden, int out_dim,
              Activation hidden_act, double leaky_slope, Rng& rng) {
    std::vector<LayerSpec> specs;
    int prev = in_dim;
    for (int h : hidden) {
        specs.push_back({prev, h, hidden_act, leaky_slope});
        prev = h;
    }
    specs.push_back({prev, out_dim, Activation::Identity, leaky_slope});
    Mlp net(std::move(specs));
    net.init_params(rng);
    return net;
}

void Mlp::init_params(Rng& rng) {
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const double s = std::sqrt(6.0 / (layers_[l].in_dim + layers_[l].out_dim));
        double* w = weights_[l].data();
        for (std::size_t i = 0; i < weights_[l].size(); ++i) w[i] = (2.0 * rng.uniform() - 1.0) * s;
        biases_[l].fill(0.0);
    }
    cache_valid_ = false;
}

Matrix Mlp::run(const Matrix& x, std::vector<Matrix>* inputs, std::vector<Matrix>* preacts) const {
    if (x.cols() != input_dim()) throw UsageError("Mlp: input width does not match first layer");
    std::vector<double> scratch;
    Matrix cur = x;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const LayerSpec& spec = layers_[l];
        if (inputs) (*inputs)[l] = cur;
        Matrix next(cur.rows(), spec.out_dim);
        scratch.resize(static_cast<std::size_t>(spec.in_dim) * spec.out_dim);
        kernels::linear_forward_omp(cur.data(), weights_[l].data(), biases_[l].data(),
                                    next.data(), cur.rows(), spec.in_dim, spec.out_dim,
                                    scratch.data());
        if (preacts) (*preacts)[l] = next;
        activate_inplace(next, spec);
        cur = std::move(next);
    }
    require_finite(cur, "Mlp::forward");
    return cur;
}

Matrix Mlp::forward(const Matrix& x) {
    Matrix out = run(x, &inputs_, &preacts_);
    cache_valid_ = true;
    return out;
}

Matrix Mlp::eval(const Matrix& x) const { return run(x, nullptr, nullptr); }

Matrix Mlp::backward(const Matrix& upstream) {
    if (!cache_valid_) throw UsageError("Mlp::backward: no cached forward pass");
    if (upstream.rows() != inputs_[0].rows() || upstream.cols() != output_dim())
        throw UsageError("Mlp::backward: upstream shape does not match cached batch");

    Matrix delta = upstream;
    for (int l = layer_count() - 1; l >= 0; --l) {
        const LayerSpec& spec = layers_[l];
        activation_backward(delta, preacts_[l], spec);
        kernels::linear_backward_params_omp(delta.data(), inputs_[l].data(),
                                            grad_w_[l].data(), grad_b_[l].data(),
                                            delta.rows(), spec.in_dim, spec.out_dim);
        Matrix dx(delta.rows(), spec.in_dim);
        kernels::linear_backward_input_omp(delta.data(), weights_[l].data(), dx.data(),
                                           delta.rows(), spec.in_dim, spec.out_dim);
        delta = std::move(dx);
    }
    require_finite(delta, "Mlp::backward");
    return delta;
}

void Mlp::zero_grads() {
    for (auto& g : grad_w_) g.fill(0.0);
    for (auto& g : grad_b_) g.fill(0.0);
}

bool Mlp::same_architecture(const Mlp& other) const {
    if (layers_.size() != other.layers_.size()) return false;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& a = layers_[l];
        const auto& b = other.layers_[l];
        if (a.in_dim != b.in_dim || a.out_dim != b.out_dim || a.activation != b.activation ||
            a.leaky_slope != b.leaky_slope)
            return false;
    }
    return true;
}

double lipschitz_upper_bound(const Mlp& net) {
    for (const auto& spec : net.layers()) {
        const bool ok = spec.activation == Activation::Identity ||
                        spec.activation == Activation::Tanh ||
                        (spec.activation == Activation::LeakyRelu && spec.leaky_slope <= 1.0);
        if (!ok) throw UsageError("lipschitz_upper_bound: activation is not 1-Lipschitz");
    }
    double gamma = 1.0;
    for (int l = 0; l < net.layer_count(); ++l) gamma *= spectral_norm(net.weight(l)).value;
    return gamma;
}

}  // namespace ucae
