#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace qpipe {

// splitmix64 step, used to spread seed material over 64 bits.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a hash for string tags (method ids, dataset names, stage names).
constexpr std::uint64_t hash_tag(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Folds a base seed and a list of tags into one stream seed. Every stochastic
// draw in the engine comes from a stream derived this way, so results do not
// depend on scheduling or evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = splitmix64(base ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t t : tags) {
        h = splitmix64(h ^ splitmix64(t));
    }
    return h;
}

// Deterministic random stream. mt19937_64 is fully specified by the standard
// and the extraction helpers below avoid std::*_distribution, whose output is
// implementation-defined; the same seed therefore gives the same values on
// every platform.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); unbiased via masked rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) {
            return 0;
        }
        const std::uint64_t mask = ~0ULL >> std::countl_zero(n - 1);
        std::uint64_t v;
        do {
            v = engine_() & mask;
        } while (v >= n);
        return v;
    }

    // Standard normal via Box-Muller (one value per call, spare cached).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) {
            u1 = uniform_double();
        }
        const double u2 = uniform_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_below(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qpipe
