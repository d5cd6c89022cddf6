#pragma once

#include <vector>

#include "ucae/matrix.hpp"
#include "ucae/mlp.hpp"

namespace ucae {

enum class OptimizerKind { Sgd, Adam };

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::Adam;
    double learning_rate = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
};

// First-order optimizer bound to one Mlp's parameter shapes. Moment buffers
// are zero-initialized and mirror the parameters exactly. step() applies the
// update rule and zeroes the gradients.
class Optimizer {
public:
    Optimizer(OptimizerConfig cfg, const Mlp& net);

    void step(Mlp& net);

    const OptimizerConfig& config() const { return cfg_; }
    long step_count() const { return t_; }

private:
    OptimizerConfig cfg_;
    long t_ = 0;
    std::vector<Matrix> m_w_, v_w_, m_b_, v_b_;

    void apply(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v,
               double bias1, double bias2);
};

}  // namespace ucae
