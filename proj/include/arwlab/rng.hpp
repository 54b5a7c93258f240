#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace arwlab {

// splitmix64, used to derive independent stream seeds from (master, key...).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(seed ^ splitmix64(key + 0x632be59bd9b4e019ULL));
}

// xoshiro256** with hand-rolled distributions. Output sequences depend only on
// the seed, not on the standard library, so golden files stay stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t s = seed;
        for (auto& w : state_) {
            s = splitmix64(s);
            w = s;
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, n)
    std::uint64_t uniform_below(std::uint64_t n) {
        // rejection to kill modulo bias
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // uniform in (0, 1]
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double exponential(double rate = 1.0) {
        return -std::log(uniform_pos()) / rate;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Knuth product-of-uniforms for small mean, splitting for large ones.
    long long poisson(double mean) {
        long long total = 0;
        while (mean > 30.0) {
            // Poisson(m) = Poisson(m/2) + Poisson(m/2)
            total += poisson_small(mean / 2.0);
            mean /= 2.0;
        }
        return total + poisson_small(mean);
    }

    Rng child(std::uint64_t key) const {
        return Rng(mix_seed(state_[0] ^ state_[3], key));
    }

private:
    long long poisson_small(double mean) {
        const double limit = std::exp(-mean);
        double prod = 1.0;
        long long n = -1;
        do {
            ++n;
            prod *= uniform_pos();
        } while (prod > limit);
        return n;
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace arwlab
