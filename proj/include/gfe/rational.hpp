#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace gfe {

using Int = mpz_class;
using Rat = mpq_class;

// ---- small integer/rational utilities on top of GMP ----

inline Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int ipow(long b, unsigned long e) { return ipow(Int(b), e); }

// valuation of a nonzero integer at prime ell
inline long valuation(const Int& n, long ell) {
    if (n == 0) throw std::domain_error("valuation(0)");
    Int m = n, q, r;
    long v = 0;
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), ell);
        if (r != 0) return v;
        m = q;
        ++v;
    }
}

inline long valuation(const Rat& x, long ell) {
    if (x == 0) throw std::domain_error("valuation(0)");
    long v = valuation(Int(x.get_num()), ell);
    if (x.get_den() != 1) v -= valuation(Int(x.get_den()), ell);
    return v;
}

// strip all factors of ell: n = ell^v * unit
inline Int strip(const Int& n, long ell, long* v_out = nullptr) {
    Int m = n, q, r;
    long v = 0;
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), ell);
        if (r != 0) break;
        m = q;
        ++v;
    }
    if (v_out) *v_out = v;
    return m;
}

inline Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int invmod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("invmod: not invertible");
    return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Legendre symbol (a/p), p odd prime
inline int legendre(const Int& a, long p) {
    return mpz_legendre(a.get_mpz_t(), Int(p).get_mpz_t());
}

inline int legendre(long a, long p) { return legendre(Int(a), p); }

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// exact integer k-th root: returns r with r^k == n, if one exists.
// Newton-style via mpz_root plus exact verification; handles negative n for odd k.
inline std::optional<Int> exact_root(const Int& n, unsigned long k) {
    if (n < 0 && k % 2 == 0) return std::nullopt;
    Int a = abs(n), r;
    mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
    if (ipow(r, k) != a) return std::nullopt;
    if (n < 0) r = -r;
    return r;
}

inline bool is_perfect_power(const Int& n, unsigned long k) { return exact_root(n, k).has_value(); }

// canonical "p/q" rendering used by every JSON emitter
inline std::string rat_str(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_parse(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

// working precision (ell-adic digits); override with GFE_PRECISION
inline int default_precision() {
    if (const char* e = std::getenv("GFE_PRECISION")) {
        int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 64;
}

} // namespace gfe
