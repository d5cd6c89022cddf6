#include "ucae/rng.hpp"

#include <cmath>
#include <numbers>

#include "ucae/errors.hpp"

namespace ucae {

namespace {

// splitmix64 finalizer; used only for deriving child seeds.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double Rng::gaussian() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::uniform_int(int bound) {
    if (bound <= 0) throw UsageError("Rng::uniform_int: bound must be positive");
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return static_cast<int>(x % b);
}

Rng Rng::split(std::uint64_t child_tag) const {
    return Rng(mix64(mix64(seed_) ^ mix64(child_tag ^ 0xd1b54a32d192ed03ULL)));
}

}  // namespace ucae
