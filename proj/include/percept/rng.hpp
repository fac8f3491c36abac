#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace percept {

// splitmix64; used to derive independent substreams from one campaign seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic RNG. std::mt19937_64 is fully specified by the standard and
// the distribution code below avoids std::uniform_*_distribution, whose
// output is implementation-defined, so identical seeds give identical
// streams on every platform and compiler.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, n) via rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            std::uint64_t x = engine_();
            if (x >= threshold) return x % n;
        }
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Box-Muller; second value cached.
    double normal(double mean = 0.0, double sd = 1.0);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Substream seed derived from a root seed and up to three stream keys.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
                               std::uint64_t k3 = 0) {
    std::uint64_t h = splitmix64(seed ^ 0x5058595253ULL);
    h = splitmix64(h ^ k1);
    h = splitmix64(h ^ k2);
    h = splitmix64(h ^ k3);
    return h;
}

}  // namespace percept
