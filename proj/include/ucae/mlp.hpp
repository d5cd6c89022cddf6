#pragma once

#include <string>
#include <vector>

#include "ucae/matrix.hpp"
#include "ucae/rng.hpp"

namespace ucae {

enum class Activation { Identity, LeakyRelu, Tanh };

std::string activation_name(Activation a);

struct LayerSpec {
    int in_dim = 0;
    int out_dim = 0;
    Activation activation = Activation::Identity;
    double leaky_slope = 0.2;  // only used by LeakyRelu; must be in (0, 1]

    void validate() const;
};

// Multilayer perceptron with explicit forward/backward passes. Parameters and
// gradients live side by side; forward caches per-layer inputs and
// pre-activations so backward can run on the same batch. An Mlp is mutable
// and single-owner during training; frozen nets may be evaluated from many
// threads through eval(), which keeps no state.
class Mlp {
public:
    Mlp() = default;
    explicit Mlp(std::vector<LayerSpec> layers);

    // in_dim -> hidden... -> out_dim with `hidden_act` on hidden layers and
    // an identity output layer, initialized from `rng`.
    static Mlp make(int in_dim, const std::vector<int>& hidden, int out_dim,
                    Activation hidden_act, double leaky_slope, Rng& rng);

    void init_params(Rng& rng);  // uniform(-s, s), s = sqrt(6/(in+out))

    int input_dim() const { return layers_.front().in_dim; }
    int output_dim() const { return layers_.back().out_dim; }
    int layer_count() const { return static_cast<int>(layers_.size()); }
    const std::vector<LayerSpec>& layers() const { return layers_; }

    Matrix& weight(int l) { return weights_[l]; }
    const Matrix& weight(int l) const { return weights_[l]; }
    Matrix& bias(int l) { return biases_[l]; }
    const Matrix& bias(int l) const { return biases_[l]; }
    Matrix& weight_grad(int l) { return grad_w_[l]; }
    const Matrix& weight_grad(int l) const { return grad_w_[l]; }
    Matrix& bias_grad(int l) { return grad_b_[l]; }
    const Matrix& bias_grad(int l) const { return grad_b_[l]; }

    // Training-path forward: caches activations for a subsequent backward.
    Matrix forward(const Matrix& x);

    // Pure evaluation; no caches touched, safe on a frozen net.
    Matrix eval(const Matrix& x) const;

    // Accumulates parameter gradients of <upstream, output> for the cached
    // batch and returns the gradient w.r.t. the input.
    Matrix backward(const Matrix& upstream);

    void zero_grads();
    void invalidate_cache() { cache_valid_ = false; }

    bool same_architecture(const Mlp& other) const;

private:
    std::vector<LayerSpec> layers_;
    std::vector<Matrix> weights_;  // out_dim x in_dim
    std::vector<Matrix> biases_;   // 1 x out_dim
    std::vector<Matrix> grad_w_;
    std::vector<Matrix> grad_b_;

    // forward cache
    std::vector<Matrix> inputs_;   // input to each layer
    std::vector<Matrix> preacts_;  // affine outputs before activation
    bool cache_valid_ = false;

    Matrix run(const Matrix& x, std::vector<Matrix>* inputs, std::vector<Matrix>* preacts) const;
};

// Product of per-layer spectral norms; a global Lipschitz upper bound, valid
// because every supported activation is 1-Lipschitz.
double lipschitz_upper_bound(const Mlp& net);

}  // namespace ucae
