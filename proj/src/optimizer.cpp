#include "ucae/optimizer.hpp"

#include <cmath>

#include "ucae/errors.hpp"

namespace ucae {

Optimizer::Optimizer(OptimizerConfig cfg, const Mlp& net) : cfg_(cfg) {
    if (cfg_.learning_rate < 0.0) throw UsageError("Optimizer: negative learning rate");
    for (int l = 0; l < net.layer_count(); ++l) {
        m_w_.emplace_back(net.weight(l).rows(), net.weight(l).cols());
        v_w_.emplace_back(net.weight(l).rows(), net.weight(l).cols());
        m_b_.emplace_back(net.bias(l).rows(), net.bias(l).cols());
        v_b_.emplace_back(net.bias(l).rows(), net.bias(l).cols());
    }
}

void Optimizer::apply(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v,
                      double bias1, double bias2) {
    double* p = param.data();
    const double* g = grad.data();
    double* mp = m.data();
    double* vp = v.data();
    const std::size_t n = param.size();
    if (cfg_.kind == OptimizerKind::Sgd) {
        for (std::size_t i = 0; i < n; ++i) p[i] -= cfg_.learning_rate * g[i];
        return;
    }
    const double b1 = cfg_.adam_beta1, b2 = cfg_.adam_beta2;
    for (std::size_t i = 0; i < n; ++i) {
        mp[i] = b1 * mp[i] + (1.0 - b1) * g[i];
        vp[i] = b2 * vp[i] + (1.0 - b2) * g[i] * g[i];
        const double mhat = mp[i] / bias1;
        const double vhat = vp[i] / bias2;
        p[i] -= cfg_.learning_rate * mhat / (std::sqrt(vhat) + cfg_.adam_eps);
    }
}

void Optimizer::step(Mlp& net) {
    if (static_cast<std::size_t>(net.layer_count()) != m_w_.size())
        throw UsageError("Optimizer::step: net does not match optimizer shapes");
    ++t_;
    const double bias1 = 1.0 - std::pow(cfg_.adam_beta1, static_cast<double>(t_));
    const double bias2 = 1.0 - std::pow(cfg_.adam_beta2, static_cast<double>(t_));
    for (int l = 0; l < net.layer_count(); ++l) {
        if (!net.weight(l).same_shape(m_w_[l]))
            throw UsageError("Optimizer::step: parameter shape changed");
        apply(net.weight(l), net.weight_grad(l), m_w_[l], v_w_[l], bias1, bias2);
        apply(net.bias(l), net.bias_grad(l), m_b_[l], v_b_[l], bias1, bias2);
    }
    net.zero_grads();
    net.invalidate_cache();
}

}  // namespace ucae
