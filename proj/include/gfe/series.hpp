#pragma once

#include "rational.hpp"

#include <vector>

namespace gfe {

/**
 * Truncated power series over Q with a fixed order: value = sum c[i] t^i + O(t^n).
 * All binary operations truncate to the shorter order.
 */
struct SeriesQ {
    std::vector<Rat> c; // c.size() = truncation order n

    SeriesQ() = default;
    SeriesQ(std::vector<Rat> cc) : c(std::move(cc)) {}
    static SeriesQ zero(size_t n) { return SeriesQ(std::vector<Rat>(n, Rat(0))); }
    static SeriesQ t(size_t n) {
        auto s = zero(n);
        if (n > 1) s.c[1] = 1;
        return s;
    }
    static SeriesQ constant(const Rat& a, size_t n) {
        auto s = zero(n);
        if (n > 0) s.c[0] = a;
        return s;
    }

    size_t order() const { return c.size(); }
    Rat coeff(size_t i) const { return i < c.size() ? c[i] : Rat(0); }

    SeriesQ truncated(size_t n) const {
        SeriesQ s = *this;
        if (s.c.size() > n) s.c.resize(n);
        while (s.c.size() < n) s.c.push_back(Rat(0));
        return s;
    }

    friend SeriesQ operator+(const SeriesQ& a, const SeriesQ& b) {
        size_t n = std::min(a.order(), b.order());
        SeriesQ r = zero(n);
        for (size_t i = 0; i < n; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend SeriesQ operator-(const SeriesQ& a, const SeriesQ& b) {
        size_t n = std::min(a.order(), b.order());
        SeriesQ r = zero(n);
        for (size_t i = 0; i < n; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend SeriesQ operator-(const SeriesQ& a) {
        SeriesQ r = a;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend SeriesQ operator*(const SeriesQ& a, const SeriesQ& b) {
        size_t n = std::min(a.order(), b.order());
        SeriesQ r = zero(n);
        for (size_t i = 0; i < n; ++i) {
            if (a.c[i] == 0) continue;
            for (size_t j = 0; i + j < n; ++j)
                if (b.c[j] != 0) r.c[i + j] += a.c[i] * b.c[j];
        }
        return r;
    }
    friend SeriesQ operator*(const Rat& s, const SeriesQ& a) {
        SeriesQ r = a;
        for (auto& x : r.c) x *= s;
        return r;
    }

    // 1/this, constant term a unit
    SeriesQ inverse() const {
        if (c.empty() || c[0] == 0) throw std::domain_error("series inverse: zero constant term");
        SeriesQ r = zero(order());
        r.c[0] = Rat(1) / c[0];
        for (size_t k = 1; k < order(); ++k) {
            Rat s(0);
            for (size_t i = 1; i <= k; ++i) s += coeff(i) * r.c[k - i];
            r.c[k] = -s / c[0];
        }
        return r;
    }

    // this(g), requires g(0) = 0
    SeriesQ compose(const SeriesQ& g) const {
        if (!g.c.empty() && g.c[0] != 0) throw std::domain_error("series compose: g(0) != 0");
        size_t n = std::min(order(), g.order());
        SeriesQ r = zero(n);
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            r = r * g;
            r.c[0] += *it;
        }
        return r.truncated(n);
    }

    SeriesQ derivative() const {
        SeriesQ r = zero(order() > 0 ? order() - 1 : 0);
        for (size_t i = 1; i < order(); ++i) r.c[i - 1] = Rat((long)i) * c[i];
        return r;
    }

    // termwise antiderivative with zero constant
    SeriesQ integral() const {
        SeriesQ r = zero(order() + 1);
        for (size_t i = 0; i < order(); ++i) r.c[i + 1] = c[i] / Rat((long)i + 1);
        return r;
    }

    /**
     * Functional inverse (series reversion): this(0)=0, this'(0) a unit.
     * Returns g with this(g(u)) = u + O(u^n). Newton iteration.
     */
    SeriesQ revert() const {
        if (order() < 2 || coeff(0) != 0 || coeff(1) == 0)
            throw std::domain_error("series revert: need f(0)=0, f'(0) unit");
        size_t n = order();
        SeriesQ g = zero(n);
        g.c[1] = Rat(1) / c[1];
        SeriesQ df = derivative().truncated(n);
        for (size_t iter = 0; iter < n; ++iter) {
            // g <- g - (f(g) - u)/f'(g)
            SeriesQ fg = compose(g);
            fg.c[1] -= 1; // subtract u
            bool done = true;
            for (auto& x : fg.c)
                if (x != 0) { done = false; break; }
            if (done) break;
            SeriesQ corr = fg * df.compose(g).inverse();
            g = g - corr;
        }
        return g;
    }

    Rat operator()(const Rat& x) const {
        Rat r(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }
};

/**
 * Laurent series: t^off * (power series). Used for expansions at the cusp
 * where x(t), y(t), j(t) have poles.
 */
struct LaurentQ {
    long off = 0;
    SeriesQ s; // unit part; s.c[0] may be zero only for the zero series

    LaurentQ() = default;
    LaurentQ(long o, SeriesQ ss) : off(o), s(std::move(ss)) { normalize(); }
    static LaurentQ from_series(const SeriesQ& ss) { return LaurentQ(0, ss); }

    bool is_zero() const {
        for (auto& x : s.c)
            if (x != 0) return false;
        return true;
    }

    void normalize() {
        size_t k = 0;
        while (k < s.c.size() && s.c[k] == 0) ++k;
        if (k == s.c.size()) return; // zero (to precision); keep as-is
        if (k > 0) {
            s.c.erase(s.c.begin(), s.c.begin() + k);
            off += (long)k;
        }
    }

    Rat coeff(long i) const { return i < off ? Rat(0) : s.coeff((size_t)(i - off)); }

    friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
        return LaurentQ(a.off + b.off, a.s * b.s);
    }
    friend LaurentQ operator+(const LaurentQ& a, const LaurentQ& b) {
        long o = std::min(a.off, b.off);
        long hi = std::min(a.off + (long)a.s.order(), b.off + (long)b.s.order());
        if (hi <= o) return LaurentQ(o, SeriesQ::zero(0));
        SeriesQ r = SeriesQ::zero((size_t)(hi - o));
        for (long i = o; i < hi; ++i) r.c[(size_t)(i - o)] = a.coeff(i) + b.coeff(i);
        return LaurentQ(o, std::move(r));
    }
    friend LaurentQ operator-(const LaurentQ& a, const LaurentQ& b) {
        LaurentQ nb = b;
        for (auto& x : nb.s.c) x = -x;
        return a + nb;
    }
    LaurentQ inverse() const {
        return LaurentQ(-off, s.inverse());
    }

    // substitute a pure power series (g(0)=0, g'(0) unit) — off may be negative,
    // in which case powers of 1/g are taken via series inversion
    LaurentQ compose(const SeriesQ& g) const {
        SeriesQ gu = g;
        // g = t * u with u a unit series
        SeriesQ u = SeriesQ::zero(g.order() > 0 ? g.order() - 1 : 0);
        for (size_t i = 0; i + 1 < g.order(); ++i) u.c[i] = g.coeff(i + 1);
        SeriesQ tail = s.compose(g);
        // result = t^off * u^off * tail  (as Laurent in t)
        SeriesQ upow = SeriesQ::constant(Rat(1), u.order());
        long e = off >= 0 ? off : -off;
        SeriesQ base = off >= 0 ? u : u.inverse();
        for (long i = 0; i < e; ++i) upow = upow * base;
        return LaurentQ(off, upow * tail);
    }
};

// polynomial evaluated on a Laurent series
inline LaurentQ eval_poly_laurent(const std::vector<Rat>& coeffs, const LaurentQ& x,
                                  size_t order_hint) {
    LaurentQ r(0, SeriesQ::constant(Rat(0), order_hint));
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        r = r * x;
        r = r + LaurentQ(0, SeriesQ::constant(*it, order_hint));
    }
    return r;
}

} // namespace gfe
