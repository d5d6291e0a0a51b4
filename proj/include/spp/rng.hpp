// Seeded random source with platform-independent output.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the standard.
// The distributions are implemented here rather than taken from <random>,
// because libstdc++ / libc++ / MSVC produce different values for the same
// engine state.
//
// Stream splitting ("spp-rng v1"): the child stream k of a stream seeded with
// `seed` is seeded with child_seed(seed, k) = splitmix64(seed ^ splitmix64(k)).
// Experiments derive one child per trial index, so a trial's draws depend
// only on (experiment seed, trial index).

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace spp {

inline constexpr int kRngVersion = 1;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [lo, hi], unbiased (rejection sampling).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Unit-mean exponential variate, -ln(1 - U). May return exactly 0.
    double exponential();

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace spp
