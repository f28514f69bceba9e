#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fep {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of replica r under a master seed; injective in r for fixed master.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replica);

/// Random stream owned by one replica. Not shared across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}
    static Rng for_replica(std::uint64_t master, std::uint64_t replica)
    {
        return Rng(derive_seed(master, replica));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0,1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform on {0..n-1}, unbiased.
    std::uint64_t index(std::uint64_t n);
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }
    bool bernoulli(double p) { return uniform() < p; }
    /// Fair +1/-1.
    int sign() { return (engine_() >> 63) ? 1 : -1; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace fep
