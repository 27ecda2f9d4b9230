#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace xsblab {

// Deterministic, platform-independent random numbers.  The standard library
// distributions are implementation-defined, which would break bit-for-bit
// reproducibility of seeded runs across toolchains, so the generator and the
// Gaussian transform are spelled out here: splitmix64 for seeding/hashing,
// xoshiro256++ as the stream, Box-Muller for normals.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Folds a sequence of integers into a single well-mixed seed.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = 0x243f6a8885a308d3ull; // arbitrary fixed offset
    for (std::uint64_t p : parts) {
        s ^= splitmix64(p) + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2);
    }
    return s;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // xoshiro state must not be all-zero; splitmix64 guarantees that.
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in (0,1]; never returns 0 so log() below is safe.
    double uniform() {
        return double((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (one pair of uniforms per normal pair).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Complex standard normal: independent N(0,1) real and imaginary parts.
    std::complex<double> normal_complex() {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace xsblab
