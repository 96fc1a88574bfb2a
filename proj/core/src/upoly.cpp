#include "quadspin/upoly.hpp"

namespace quadspin {

namespace {

UniPoly<Fp> mulmod(const UniPoly<Fp>& a, const UniPoly<Fp>& b, const UniPoly<Fp>& f) {
    return divmod(a * b, f).second;
}

UniPoly<Fp> powmod(UniPoly<Fp> base, std::uint64_t e, const UniPoly<Fp>& f) {
    UniPoly<Fp> r = UniPoly<Fp>::constant(one_like(f.proto()));
    r = divmod(r, f).second;
    base = divmod(base, f).second;
    while (e) {
        if (e & 1) r = mulmod(r, base, f);
        base = mulmod(base, base, f);
        e >>= 1;
    }
    return r;
}

// Splits a product of distinct linear factors into roots (Cantor-Zassenhaus).
void split_linear(const UniPoly<Fp>& f, Rng& rng, std::vector<Fp>& out) {
    if (f.deg() <= 0) return;
    const Fp one = one_like(f.proto());
    if (f.deg() == 1) {
        out.push_back((zero_like(one) - f.coeff(0)) * inv_of(f.coeff(1)));
        return;
    }
    const std::uint64_t p = f.proto().p;
    for (;;) {
        Fp shift = rng.fp(p);
        UniPoly<Fp> base({shift, one}, one);  // x + shift
        UniPoly<Fp> h = powmod(base, (p - 1) / 2, f);
        h = h - UniPoly<Fp>::constant(one);
        UniPoly<Fp> g = upoly_gcd(h, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            split_linear(g, rng, out);
            split_linear(divmod(f, g).first, rng, out);
            return;
        }
    }
}

}  // namespace

UniPoly<Fp> fp_pow_x_mod(std::uint64_t e, const UniPoly<Fp>& f) {
    return powmod(UniPoly<Fp>::x(f.proto()), e, f);
}

std::vector<Fp> fp_roots(const UniPoly<Fp>& f, std::uint64_t seed) {
    std::vector<Fp> out;
    if (f.deg() <= 0) return out;
    const std::uint64_t p = f.proto().p;
    // gcd(x^p - x, f) collects each root exactly once
    UniPoly<Fp> xp = fp_pow_x_mod(p, f);
    UniPoly<Fp> lin = upoly_gcd(xp - UniPoly<Fp>::x(f.proto()), f);
    Rng rng(seed ^ 0xf00d1234abcdull);
    split_linear(lin, rng, out);
    std::sort(out.begin(), out.end(), [](Fp a, Fp b) { return a.v < b.v; });
    return out;
}

}  // namespace quadspin
