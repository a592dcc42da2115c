#pragma once

#include <array>
#include <cstdint>

namespace bbs {

// xoshiro256++ seeded through splitmix64. Self-contained so that sampled
// values are identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) { seed_state(seed); }
    Rng(std::uint64_t seed, std::uint64_t stream) {
        seed_state(seed ^ (0x9e3779b97f4a7c15ULL + stream * 0xbf58476d1ce4e5b9ULL));
    }

    std::uint64_t next() {
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    long below(long n) {  // uniform in [0, n), unbiased
        std::uint64_t bound = static_cast<std::uint64_t>(n);
        std::uint64_t limit = ~0ULL - ~0ULL % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return static_cast<long>(x % bound);
    }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    void seed_state(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& w : s_) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t t = z;
            t = (t ^ (t >> 30)) * 0xbf58476d1ce4e5b9ULL;
            t = (t ^ (t >> 27)) * 0x94d049bb133111ebULL;
            w = t ^ (t >> 31);
        }
        if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
    }
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace bbs
