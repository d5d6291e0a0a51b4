#include "spp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace spp {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == ~std::uint64_t{0}) return static_cast<std::int64_t>(engine_());
    const std::uint64_t range = span + 1;
    // Largest multiple of `range` that fits; values above it are rejected.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range) - 1;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x > limit);
    return lo + static_cast<std::int64_t>(x % range);
}

double Rng::exponential() { return -std::log1p(-uniform01()); }

}  // namespace spp
