#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace blindrate {

/// splitmix64 finalizer; good avalanche, used only for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent stream seed from a base seed and up to two indices,
/// so any single trial of an experiment is reproducible in isolation.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(base ^ mix64(a ^ mix64(b)));
}

/// Deterministic random source. mt19937_64 has a fully specified output
/// sequence, and the transforms below avoid std::*_distribution (whose
/// sequences are implementation-defined), so results are reproducible
/// across platforms as well as across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    bool bit() { return (bits() >> 63) != 0; }

    /// Uniform in [0, 1), 53 random mantissa bits.
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; one deviate cached per pair.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;  // keep log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace blindrate
