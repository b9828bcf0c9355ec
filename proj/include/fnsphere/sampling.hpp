#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "fnsphere/scalar.hpp"

namespace fnsphere {

/// Deterministic generator used by every seeded routine.
///
/// std::mt19937_64 has a fully specified output sequence; the standard
/// distributions do not, so bounded draws use plain rejection sampling on
/// the raw 64-bit output. Results are therefore identical on every
/// conforming platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(mix(seed)) {}

    /// Seed derived from a caller seed plus a byte string describing the
    /// context (problem, height, ...).
    SeededRng(std::uint64_t seed, std::string_view context) : engine_(mix(seed ^ mix(fnv1a(context)))) {}

    /// Uniform integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// n/d with |n| <= height and 1 <= d <= height, reduced.
    Scalar rational(std::int64_t height) {
        std::int64_t n = between(-height, height);
        std::int64_t d = between(1, height);
        return Scalar(mpz_class(std::to_string(n)), mpz_class(std::to_string(d)));
    }

    static std::uint64_t fnv1a(std::string_view bytes) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : bytes) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace fnsphere
