#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace gff2d {

// Counter-based stream derivation: every (master seed, stream, index) triple
// maps to an independent generator state, so parallel trials reproduce
// identically no matter how work is scheduled.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t key) {
        std::uint64_t s = key;
        for (auto& word : state_) word = splitmix64(s);
    }

    static Rng derive(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
        std::uint64_t s = master;
        std::uint64_t a = splitmix64(s);
        s = a ^ (stream * 0xda942042e4dd58b5ull);
        std::uint64_t b = splitmix64(s);
        s = b ^ (index * 0x2545f4914f6cdd1dull);
        return Rng(splitmix64(s));
    }

    // xoshiro256++
    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in (0,1); never returns 0, safe under log().
    double next_unit() {
        return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

    // Box-Muller; the spare keeps draws in deterministic pairs.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace gff2d
