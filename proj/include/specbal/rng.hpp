#pragma once

// All randomness in the library flows through an explicitly seeded Rng passed
// by the caller; there is no global generator. Child generators for restarts,
// Monte-Carlo samples etc. are derived with splitmix64 so that parallel loops
// stay independent of scheduling.

#include <cstdint>
#include <random>
#include <vector>

namespace specbal {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& engine() { return engine_; }

    double gaussian() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

    // +1 or -1 with equal probability.
    double sign() { return (engine_() & 1u) ? 1.0 : -1.0; }

    std::vector<double> gaussian_vector(std::size_t len) {
        std::vector<double> v(len);
        for (auto& x : v) x = gaussian();
        return v;
    }

    // Deterministic child stream; mixing the tag keeps siblings decorrelated.
    Rng derive(std::uint64_t tag) const {
        return Rng(splitmix64(seed_ ^ splitmix64(tag + 0x51ed270b76a4c1ceULL)));
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace specbal
