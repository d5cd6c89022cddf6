#pragma once

#include <functional>

#include "ucae/matrix.hpp"

namespace ucae {

// Type-erased encoder/decoder pair over one domain. Both trained models and
// the analytic world inverses present this view, so translation and the
// theory checkers run on either.
struct Autoencoder {
    int obs_dim = 0;     // n
    int latent_dim = 0;  // d, shared across domains
    int noise_dim = 0;   // m, domain-specific

    // batch x n -> batch x (d+m)
    std::function<Matrix(const Matrix&)> encode;
    // batch x (d+m) -> batch x n
    std::function<Matrix(const Matrix&)> decode;

    int code_dim() const { return latent_dim + noise_dim; }
};

}  // namespace ucae
