#ifndef QUADSPIN_FIELDS_HPP
#define QUADSPIN_FIELDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "quadspin/errors.hpp"

namespace quadspin {

// Arbitrary-precision rationals, always kept in canonical form by GMP.
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// Prime fields F_p, p an odd prime. Elements carry their modulus so that
// values from different fields cannot be mixed silently; all moduli are
// capped at 2^31 - 1 so products fit in uint64_t.
// ---------------------------------------------------------------------------

struct Fp {
    std::uint64_t v{0};
    std::uint64_t p{0};

    Fp() = default;
    Fp(std::int64_t value, std::uint64_t modulus) : p(modulus) {
        std::int64_t r = value % static_cast<std::int64_t>(modulus);
        if (r < 0) r += static_cast<std::int64_t>(modulus);
        v = static_cast<std::uint64_t>(r);
    }

    friend Fp operator+(Fp a, Fp b) {
        a.check(b);
        a.v += b.v;
        if (a.v >= a.p) a.v -= a.p;
        return a;
    }
    friend Fp operator-(Fp a, Fp b) {
        a.check(b);
        a.v = (a.v >= b.v) ? a.v - b.v : a.v + a.p - b.v;
        return a;
    }
    friend Fp operator*(Fp a, Fp b) {
        a.check(b);
        a.v = (a.v * b.v) % a.p;
        return a;
    }
    friend Fp operator-(Fp a) {
        a.v = (a.v == 0) ? 0 : a.p - a.v;
        return a;
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }
    friend bool operator==(Fp a, Fp b) { return a.p == b.p && a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }

    Fp inverse() const;
    Fp pow(std::uint64_t e) const;

    void check(const Fp& other) const {
        if (p == 0 || other.p != p) throw OperationalError("Fp: mixed or unset moduli");
    }
};

// Square root in F_p via Tonelli-Shanks; nullopt when a is a non-residue.
std::optional<Fp> fp_sqrt(Fp a);

bool is_prime_u64(std::uint64_t n);

// ---------------------------------------------------------------------------
// FieldSpec: the runtime description of the coefficient field.
// ---------------------------------------------------------------------------

struct FieldSpec {
    enum class Kind { rationals, prime_field };
    Kind kind{Kind::rationals};
    std::uint64_t p{0};

    static FieldSpec rationals() { return FieldSpec{Kind::rationals, 0}; }
    static FieldSpec prime(std::uint64_t p);

    // Accepts "q" and "fp:<p>".
    static FieldSpec parse(const std::string& text);
    std::string str() const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.kind == b.kind && a.p == b.p;
    }
};

// ---------------------------------------------------------------------------
// Generic scalar helpers used by the templated linear algebra. The exemplar
// argument supplies the modulus for Fp; it is ignored for Rat.
// ---------------------------------------------------------------------------

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Fp& x) { return x.v == 0; }

// mpq_class(num, den) does not canonicalize; this does.
inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat zero_like(const Rat&) { return Rat(0); }
inline Fp zero_like(const Fp& x) { return Fp(0, x.p); }

inline Rat one_like(const Rat&) { return Rat(1); }
inline Fp one_like(const Fp& x) { return Fp(1, x.p); }

inline Rat int_like(const Rat&, long n) { return Rat(n); }
inline Fp int_like(const Fp& x, long n) { return Fp(n, x.p); }

inline Rat inv_of(const Rat& x) {
    if (is_zero(x)) throw OperationalError("division by zero in Q");
    return Rat(1) / x;
}
inline Fp inv_of(const Fp& x) { return x.inverse(); }

std::string scalar_str(const Rat& x);
inline std::string scalar_str(const Fp& x) { return std::to_string(x.v); }

// Parses either a plain integer or "a/b"; for Fp the denominator must be a
// unit mod p.
Rat rat_from_string(const std::string& text);
Fp fp_from_string(const std::string& text, std::uint64_t p);

template <class K>
concept ScalarField = requires(K a, K b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { inv_of(a) } -> std::convertible_to<K>;
    { zero_like(a) } -> std::convertible_to<K>;
    { one_like(a) } -> std::convertible_to<K>;
};

}  // namespace quadspin

#endif
