#pragma once

#include <cstdint>
#include <random>

namespace ucae {

// Deterministic, splittable random stream. The underlying engine is
// std::mt19937_64 (fully specified by the standard, so streams are
// reproducible for a given build); Gaussians come from a hand-rolled
// Box-Muller transform because std::normal_distribution is
// implementation-defined. split() derives a child stream from the stored
// seed and a tag only, leaving the parent stream untouched; concurrency is
// obtained by splitting, never by sharing one stream.
class Rng {
public:
    static constexpr const char* kAlgorithmId = "mt19937_64-boxmuller-v1";

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as a log() argument.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Standard normal via Box-Muller; consumes exactly two uniforms per draw.
    double gaussian();

    // Uniform on {0, ..., bound-1} by rejection (no modulo bias).
    int uniform_int(int bound);

    // Statistically independent child stream; parent state is not consumed.
    Rng split(std::uint64_t child_tag) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace ucae
