#include "quadspin/fields.hpp"

namespace quadspin {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

Fp Fp::inverse() const {
    if (v == 0) throw OperationalError("division by zero in F_p");
    // extended Euclid on (v, p)
    std::int64_t a = static_cast<std::int64_t>(v), m = static_cast<std::int64_t>(p);
    std::int64_t x0 = 1, x1 = 0, b = m;
    while (b) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    if (a != 1) throw OperationalError("Fp::inverse: modulus not prime?");
    if (x0 < 0) x0 += m;
    return Fp(x0, p);
}

Fp Fp::pow(std::uint64_t e) const {
    Fp r(1, p);
    Fp b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::optional<Fp> fp_sqrt(Fp a) {
    const std::uint64_t p = a.p;
    if (a.v == 0) return Fp(0, p);
    if (pow_mod(a.v, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) {
        Fp r = a.pow((p + 1) / 4);
        return (r * r == a) ? std::optional<Fp>(r) : std::nullopt;
    }
    // Tonelli-Shanks, p ≡ 1 (mod 4)
    std::uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = pow_mod(z, q, p);
    std::uint64_t t = pow_mod(a.v, q, p);
    std::uint64_t r = pow_mod(a.v, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
            if (i == m) return std::nullopt;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    Fp root(static_cast<std::int64_t>(r), p);
    return (root * root == a) ? std::optional<Fp>(root) : std::nullopt;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 17; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p == 2) throw OperationalError("characteristic 2 is not supported");
    if (p < 3 || p > 0x7fffffffull || !is_prime_u64(p))
        throw OperationalError("invalid prime modulus: " + std::to_string(p));
    return FieldSpec{Kind::prime_field, p};
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "q" || text == "Q") return rationals();
    if (text.rfind("fp:", 0) == 0) {
        const std::string num = text.substr(3);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw OperationalError("bad field spec: " + text);
        return prime(std::stoull(num));
    }
    throw OperationalError("bad field spec: " + text + " (expected \"q\" or \"fp:<p>\")");
}

std::string FieldSpec::str() const {
    return kind == Kind::rationals ? "q" : "fp:" + std::to_string(p);
}

std::string scalar_str(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(const std::string& text) {
    const auto bad = [&] { return OperationalError("bad rational literal: " + text); };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(text);
            return Rat(n);
        }
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        if (den == 0) throw bad();
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

Fp fp_from_string(const std::string& text, std::uint64_t p) {
    Rat q = rat_from_string(text);
    mpz_class den = q.get_den();
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class num_m = q.get_num() % pz;
    mpz_class den_m = den % pz;
    if (den_m == 0) throw OperationalError("denominator not invertible mod p: " + text);
    Fp n(num_m.get_si(), p), d(den_m.get_si(), p);
    return n / d;
}

}  // namespace quadspin
