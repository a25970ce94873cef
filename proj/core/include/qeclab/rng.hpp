#pragma once

#include <cstdint>
#include <random>

namespace qeclab {

// Stateless mixer used to whiten seeds and to derive independent streams from
// (master seed, index) tuples. Trials keyed this way are reproducible and
// independent of how they are scheduled across threads.
inline constexpr uint64_t splitmix64(uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(splitmix64(seed)) {}

    // Derived stream for (master seed, point index, trial index).
    static Rng stream(uint64_t master, uint64_t a, uint64_t b = 0) {
        return Rng(splitmix64(master ^ splitmix64(a ^ splitmix64(b))));
    }

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, bound). bound must be > 0.
    uint64_t below(uint64_t bound) {
        // Multiply-shift; bias is negligible for the small bounds used here
        // and the result is deterministic across platforms.
        return static_cast<uint64_t>((static_cast<__uint128_t>(gen_()) * bound) >> 64);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace qeclab
