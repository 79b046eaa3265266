#pragma once

#include <cstdint>

#include "mmiso/field.hpp"

namespace mmiso {

/// Deterministic generator (splitmix64). All randomness in the library and
/// the CLI flows through an explicit seed; the stream is identical across
/// platforms, so seeded runs are byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish integer in [lo, hi] (modulo reduction; the tiny bias is
    /// irrelevant here, determinism is what matters).
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    /// Random element: full range for GF(q), small fractions over Q.
    Scalar scalar(const FieldSpec& f) {
        if (f.is_prime_field())
            return Scalar::of_residue(f, uniform(0, f.modulus() - 1));
        return Scalar::of_fraction(f, uniform(-4, 4), uniform(1, 3));
    }

    Scalar nonzero_scalar(const FieldSpec& f) {
        for (;;) {
            Scalar s = scalar(f);
            if (!s.is_zero()) return s;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace mmiso
