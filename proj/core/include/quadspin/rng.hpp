#ifndef QUADSPIN_RNG_HPP
#define QUADSPIN_RNG_HPP

#include <cstdint>

#include "quadspin/fields.hpp"

namespace quadspin {

// Deterministic generator (splitmix64). We roll our own bounded sampling
// because std::uniform_int_distribution is implementation-defined and the
// reproducibility contract is byte-level.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), unbiased by rejection.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t x, r;
        do {
            x = next();
            r = x % n;
        } while (x - r > UINT64_MAX - n + 1);
        return r;
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    Fp fp(std::uint64_t p) { return Fp(static_cast<std::int64_t>(below(p)), p); }
    Fp fp_nonzero(std::uint64_t p) { return Fp(static_cast<std::int64_t>(1 + below(p - 1)), p); }

    // Deterministic child seed for case `index` of a suite.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0xa5a5a5a5deadbeefull + index * 0x9e3779b97f4a7c15ull));
        return r.next();
    }

private:
    std::uint64_t state_;
};

// Uniform scalar with the conventions of the random generators: uniform in
// F_p, and uniform integers in [-9, 9] as a stand-in over Q.
inline Rat random_scalar(Rng& rng, const Rat&) { return Rat(rng.range(-9, 9)); }
inline Fp random_scalar(Rng& rng, const Fp& like) { return rng.fp(like.p); }

}  // namespace quadspin

#endif
