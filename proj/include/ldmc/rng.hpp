#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace ldmc {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Deterministic counter-seeded RNG stream (xoshiro256++). Stream state is a
/// pure function of (seed, stream_index), so replica k of a simulation draws
/// the same numbers no matter how replicas are scheduled.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0) {
        std::uint64_t mix = seed ^ (0x6a09e667f3bcc909ULL + stream_index * 0x9e3779b97f4a7c15ULL);
        for (auto& word : s_) word = detail::splitmix64(mix);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl64(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Exponential with the given rate (> 0).
    double next_exponential(double rate) {
        return -std::log1p(-next_uniform()) / rate;
    }

    /// Index drawn proportionally to weights (all >= 0, total > 0 supplied by
    /// the caller so the sum is evaluated once, in a fixed order).
    std::size_t next_categorical(std::span<const double> weights, double total) {
        const double u = next_uniform() * total;
        double c = 0.0;
        for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
            c += weights[k];
            if (u < c) return k;
        }
        return weights.size() - 1;
    }

private:
    std::uint64_t s_[4] = {};
};

}  // namespace ldmc
