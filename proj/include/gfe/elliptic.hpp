#pragma once

#include "rational.hpp"
#include "poly.hpp"
#include "series.hpp"

#include <array>
#include <climits>
#include <optional>
#include <string>
#include <vector>

namespace gfe {

/**
 * Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
 */
struct Model {
    Rat a1, a2, a3, a4, a6;

    static Model from_ints(long a1, long a2, long a3, long a4, long a6) {
        return Model{Rat(a1), Rat(a2), Rat(a3), Rat(a4), Rat(a6)};
    }

    Rat b2() const { return a1 * a1 + 4 * a2; }
    Rat b4() const { return 2 * a4 + a1 * a3; }
    Rat b6() const { return a3 * a3 + 4 * a6; }
    Rat b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    Rat c4() const { return b2() * b2() - 24 * b4(); }
    Rat c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    Rat disc() const {
        return -b2() * b2() * b8() - 8 * b4() * b4() * b4() - 27 * b6() * b6() +
               9 * b2() * b4() * b6();
    }
    Rat j() const {
        Rat d = disc();
        if (d == 0) throw std::domain_error("singular model");
        return c4() * c4() * c4() / d;
    }

    bool integral() const {
        return a1.get_den() == 1 && a2.get_den() == 1 && a3.get_den() == 1 &&
               a4.get_den() == 1 && a6.get_den() == 1;
    }

    // change of variable x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
    Model transform(const Rat& u, const Rat& r, const Rat& s, const Rat& t) const {
        Model m;
        m.a1 = (a1 + 2 * s) / u;
        m.a2 = (a2 - s * a1 + 3 * r - s * s) / (u * u);
        m.a3 = (a3 + r * a1 + 2 * t) / (u * u * u);
        m.a4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) /
               (u * u * u * u);
        m.a6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) /
               (u * u * u * u * u * u);
        return m;
    }

    // an integral model in the same isomorphism class (scale by lcm of denominators)
    Model integral_model() const {
        Int u = 1;
        for (const Rat* a : {&a1, &a2, &a3, &a4, &a6})
            mpz_lcm(u.get_mpz_t(), u.get_mpz_t(), a->get_den().get_mpz_t());
        return transform(Rat(1) / Rat(u), 0, 0, 0);
    }

    // right-hand side of y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 (square of 2-division poly)
    PolyQ two_division_poly() const { return PolyQ({b6(), 2 * b4(), b2(), Rat(4)}); }
};

/**
 * Quadratic twist by squarefree d: complete the square, scale x by d.
 * Exact invariant scaling: c4' = d^2 c4, c6' = d^3 c6, disc' = d^6 disc.
 */
inline Model quadratic_twist(const Model& e, const Int& d) {
    Rat dd(d);
    Model m;
    m.a1 = 0;
    m.a3 = 0;
    m.a2 = e.b2() * dd / 4;
    m.a4 = e.b4() * dd * dd / 2;
    m.a6 = e.b6() * dd * dd * dd / 4;
    return m;
}

// ---- rational points ----

struct Point {
    bool inf = true;
    Rat x, y;
    static Point infinity() { return Point{}; }
    static Point at(const Rat& x, const Rat& y) { return Point{false, x, y}; }
};

inline bool on_curve(const Model& e, const Point& p) {
    if (p.inf) return true;
    Rat lhs = p.y * p.y + e.a1 * p.x * p.y + e.a3 * p.y;
    Rat rhs = p.x * p.x * p.x + e.a2 * p.x * p.x + e.a4 * p.x + e.a6;
    return lhs == rhs;
}

inline Point point_neg(const Model& e, const Point& p) {
    if (p.inf) return p;
    return Point::at(p.x, -p.y - e.a1 * p.x - e.a3);
}

inline Point point_add(const Model& e, const Point& p, const Point& q) {
    if (p.inf) return q;
    if (q.inf) return p;
    if (p.x == q.x) {
        Rat qy_neg = -q.y - e.a1 * q.x - e.a3;
        if (p.y == qy_neg) return Point::infinity();
    }
    Rat lam, nu;
    if (p.x == q.x && p.y == q.y) {
        Rat den = 2 * p.y + e.a1 * p.x + e.a3;
        lam = (3 * p.x * p.x + 2 * e.a2 * p.x + e.a4 - e.a1 * p.y) / den;
        nu = (-p.x * p.x * p.x + e.a4 * p.x + 2 * e.a6 - e.a3 * p.y) / den;
    } else {
        lam = (q.y - p.y) / (q.x - p.x);
        nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
    }
    Rat x3 = lam * lam + e.a1 * lam - e.a2 - p.x - q.x;
    Rat y3 = -(lam + e.a1) * x3 - nu - e.a3;
    return Point::at(x3, y3);
}

inline Point point_mul(const Model& e, long n, Point p) {
    if (n < 0) {
        p = point_neg(e, p);
        n = -n;
    }
    Point r = Point::infinity();
    while (n) {
        if (n & 1) r = point_add(e, r, p);
        p = point_add(e, p, p);
        n >>= 1;
    }
    return r;
}

// ---- formal group ----

/**
 * Formal expansion at the origin in t = -x/y, w = -1/y:
 * w(t) solves w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3.
 * Returns x(t), y(t) as Laurent series (x = t/w, y = -1/w).
 */
struct FormalExpansion {
    SeriesQ w;  // order n
    LaurentQ x; // t^-2 * unit
    LaurentQ y; // t^-3 * unit
};

inline FormalExpansion formal_expansion(const Model& e, size_t n) {
    SeriesQ w = SeriesQ::zero(n);
    if (n > 3) w.c[3] = 1;
    for (size_t it = 0; it < n; ++it) {
        SeriesQ t = SeriesQ::t(n);
        SeriesQ nw = SeriesQ::zero(n);
        // t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3
        SeriesQ w2 = w * w;
        SeriesQ tw = t * w;
        nw.c[3] += 1;
        nw = nw + e.a1 * tw + e.a2 * (t * tw) + e.a3 * w2 + e.a4 * (t * w2) + e.a6 * (w * w2);
        if (nw.c == w.c) break;
        w = nw;
    }
    // w = t^3 * u(t), u unit
    SeriesQ u = SeriesQ::zero(n >= 3 ? n - 3 : 0);
    for (size_t i = 0; i + 3 < n; ++i) u.c[i] = w.c[i + 3];
    LaurentQ x(-2, u.inverse());            // x = t/w = t^-2 / u
    LaurentQ y(-3, -Rat(1) * u.inverse());  // y = -1/w = -t^-3 / u
    return {w, x, y};
}

/**
 * Formal-group logarithm: integral of the invariant differential
 * dx/(2y + a1 x + a3) expanded in t. log(t) = t + c2 t^2 + ...
 */
inline SeriesQ formal_log(const Model& e, size_t n) {
    FormalExpansion fe = formal_expansion(e, n + 4);
    // dx/dt as Laurent series
    LaurentQ dx(fe.x.off - 1, SeriesQ::zero(fe.x.s.order()));
    for (size_t i = 0; i < fe.x.s.order(); ++i)
        dx.s.c[i] = Rat(fe.x.off + (long)i) * fe.x.s.c[i];
    LaurentQ den = LaurentQ(0, SeriesQ::constant(Rat(2), fe.y.s.order())) * fe.y;
    den = den + LaurentQ(0, SeriesQ::constant(e.a1, fe.x.s.order())) * fe.x;
    den = den + LaurentQ(0, SeriesQ::constant(e.a3, n + 4));
    LaurentQ omega = dx * den.inverse(); // a power series with constant term 1
    if (omega.off > 0) throw std::logic_error("formal_log: unexpected offset");
    SeriesQ om = SeriesQ::zero(n);
    for (size_t i = 0; i < n; ++i) om.c[i] = omega.coeff((long)i);
    return om.integral().truncated(n + 1);
}

// ---- Tate's algorithm ----

struct LocalData {
    std::string kodaira;   // "I0", "In", "II", ..., "I0*", "In*", "IV*", "III*", "II*"
    long n = 0;            // the n in In / In*
    long f = 0;            // conductor exponent
    long vdisc = 0;        // valuation of the minimal discriminant
    bool split = false;    // split multiplicative reduction (type In only)
};

namespace detail {

inline long vz(const Int& n, long p) { return n == 0 ? LONG_MAX / 4 : valuation(n, p); }

struct ITate {
    Int a1, a2, a3, a4, a6;
    long p;

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b4() const { return 2 * a4 + a1 * a3; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    Int c4() const { return b2() * b2() - 24 * b4(); }
    Int disc() const {
        Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    void translate(const Int& r, const Int& s, const Int& t) {
        Int A1 = a1 + 2 * s;
        Int A2 = a2 - s * a1 + 3 * r - s * s;
        Int A3 = a3 + r * a1 + 2 * t;
        Int A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        Int A6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = A1; a2 = A2; a3 = A3; a4 = A4; a6 = A6;
    }

    // singular point of the reduction mod p (brute force; p small)
    std::pair<Int, Int> singular_point() const {
        for (long x = 0; x < p; ++x)
            for (long y = 0; y < p; ++y) {
                Int X(x), Y(y);
                Int F = Y * Y + a1 * X * Y + a3 * Y - X * X * X - a2 * X * X - a4 * X - a6;
                if (mod(F, p) != 0) continue;
                Int Fy = 2 * Y + a1 * X + a3;
                if (mod(Fy, p) != 0) continue;
                Int Fx = a1 * Y - 3 * X * X - 2 * a2 * X - a4;
                if (mod(Fx, p) != 0) continue;
                return {X, Y};
            }
        throw std::logic_error("tate: singular point not found");
    }
};

// roots with multiplicity of a polynomial mod p (brute force; p small)
inline std::vector<std::pair<long, int>> roots_mod_p(const std::vector<Int>& f, long p) {
    std::vector<std::pair<long, int>> out;
    for (long x = 0; x < p; ++x) {
        // multiplicity via repeated synthetic division
        std::vector<Int> g = f;
        int mult = 0;
        for (;;) {
            Int v = 0;
            for (auto it = g.rbegin(); it != g.rend(); ++it) v = v * x + *it;
            if (mod(v, p) != 0) break;
            ++mult;
            // divide by (X - x) mod p
            std::vector<Int> q(g.size() > 0 ? g.size() - 1 : 0);
            Int carry = 0;
            for (size_t i = g.size(); i-- > 1;) {
                carry = mod(carry * x + g[i], p);
                q[i - 1] = carry;
            }
            g = q;
            if (g.empty()) break;
        }
        if (mult > 0) out.push_back({x, mult});
    }
    return out;
}

} // namespace detail

/**
 * Tate's algorithm at prime p for an integral (not necessarily minimal) model.
 * Returns Kodaira type, conductor exponent f (via Ogg's formula), and the
 * valuation of the minimal discriminant. Valid at all primes, including 2, 3.
 */
inline LocalData tate_algorithm(const Model& em, long p) {
    using detail::vz;
    Model mm = em.integral() ? em : em.integral_model();
    detail::ITate E{mm.a1.get_num(), mm.a2.get_num(), mm.a3.get_num(),
                    mm.a4.get_num(), mm.a6.get_num(), p};
    Int P(p), P2 = P * P, P3 = P2 * P, P4 = P3 * P, P6 = P4 * P2;

    for (int pass = 0; pass < 64; ++pass) {
        Int D = E.disc();
        if (D == 0) throw std::domain_error("tate: singular curve");
        long n = vz(D, p);
        if (n == 0) return {"I0", 0, 0, 0, false};

        auto [x0, y0] = E.singular_point();
        E.translate(x0, 0, y0);

        if (vz(E.c4(), p) == 0) {
            // multiplicative: split iff T^2 + a1 T - a2 has a root mod p
            bool split = false;
            for (long t = 0; t < p; ++t) {
                Int v = Int(t) * t + E.a1 * t - E.a2;
                if (mod(v, p) == 0) { split = true; break; }
            }
            return {"In", n, 1, n, split};
        }
        if (vz(E.a6, p) < 2) return {"II", 0, n, n, false};
        if (vz(E.b8(), p) < 3) return {"III", 0, n - 1, n, false};
        if (vz(E.b6(), p) < 3) return {"IV", 0, n - 2, n, false};

        // normalize so that p|a1,a2, p^2|a3,a4, p^3|a6
        if (p == 2) {
            Int s = mod(E.a2, 2);
            E.translate(0, s, 0);
            Int t = 2 * mod(E.a6 / 4, 2); // a3 = 0 mod 4 here (else type IV above)
            E.translate(0, 0, t);
        } else {
            Int inv2 = invmod(Int(2), P2);
            E.translate(0, mod(-E.a1 * inv2, P2), 0);
            E.translate(0, 0, mod(-E.a3 * inv2, P2));
        }

        // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + a6/p^3 mod p
        std::vector<Int> PT{E.a6 / P3, E.a4 / P2, E.a2 / P, Int(1)};
        auto rts = detail::roots_mod_p(PT, p);
        int maxmult = 0;
        long where = 0;
        for (auto& [x, m] : rts)
            if (m > maxmult) { maxmult = m; where = x; }
        if (maxmult <= 1) return {"I0*", 0, n - 4, n, false};

        if (maxmult == 2) {
            // I_m* subprocedure
            E.translate(P * where, 0, 0);
            Int mx = P2, my = P2;
            long m = 1;
            for (;;) {
                // quadratic in Y: Y^2 + (a3/my) Y - a6/(mx*my)
                Int b = E.a3 / my, c = -(E.a6 / (mx * my));
                bool dbl;
                Int y1;
                if (p == 2) { dbl = mod(b, 2) == 0; y1 = mod(-c, 2); }
                else { dbl = mod(b * b - 4 * c, p) == 0; y1 = mod(-b * invmod(Int(2), P), P); }
                if (!dbl) return {"In*", m, n - 4 - m, n, false};
                E.translate(0, 0, my * y1);
                my *= P;
                ++m;
                // quadratic in X: (a2/p) X^2 + (a4/(p*mx)) X + a6/(mx*my)
                Int A = E.a2 / P, B = E.a4 / (P * mx), C = E.a6 / (mx * my);
                Int x1;
                if (p == 2) { dbl = mod(B, 2) == 0; x1 = mod(C * invmod(mod(A, 2) == 0 ? Int(1) : A, P), 2); }
                else { dbl = mod(B * B - 4 * A * C, p) == 0; x1 = mod(-B * invmod(2 * A, P), P); }
                if (!dbl) return {"In*", m, n - 4 - m, n, false};
                E.translate(mx * x1, 0, 0);
                mx *= P;
                ++m;
            }
        }

        // triple root: move it to the origin
        E.translate(P * where, 0, 0);

        // Y^2 + (a3/p^2) Y - a6/p^4 mod p
        {
            Int b = E.a3 / P2, c = -(E.a6 / P4);
            bool dbl;
            Int y1;
            if (p == 2) { dbl = mod(b, 2) == 0; y1 = mod(-c, 2); }
            else { dbl = mod(b * b - 4 * c, p) == 0; y1 = mod(-b * invmod(Int(2), P), P); }
            if (!dbl) return {"IV*", 0, n - 6, n, false};
            E.translate(0, 0, P2 * y1);
        }
        if (vz(E.a4, p) < 4) return {"III*", 0, n - 7, n, false};
        if (vz(E.a6, p) < 6) return {"II*", 0, n - 8, n, false};

        // non-minimal: rescale and restart
        E.a1 /= P;
        E.a2 /= P2;
        E.a3 /= P3;
        E.a4 /= P4;
        E.a6 /= P6;
    }
    throw std::logic_error("tate: did not terminate");
}

} // namespace gfe
