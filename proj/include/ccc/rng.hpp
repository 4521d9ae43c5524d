#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace ccc {

// Deterministic random stream. Wraps mt19937_64 but implements its own
// bounded-int / real / normal draws, since the std:: distributions are
// implementation-defined and would break seed-stable tests across stdlibs.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // Derive an independent stream from a master seed and stream tags.
    // seed_seq keeps only 32 bits per word, so every input is split.
    static RngStream derive(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b = 0) {
        const std::uint64_t a = tag_a ^ 0x9e3779b97f4a7c15ull;
        const std::uint64_t b = tag_b ^ 0xbf58476d1ce4e5b9ull;
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(a),    static_cast<std::uint32_t>(a >> 32),
                          static_cast<std::uint32_t>(b),    static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 eng(seq);
        RngStream s(0);
        s.engine_ = eng;
        return s;
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller (pair cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ccc
