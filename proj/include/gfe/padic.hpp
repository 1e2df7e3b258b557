#pragma once

#include "rational.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace gfe {

/**
 * Truncated ell-adic number: x = ell^val * unit with unit known modulo ell^prec
 * (relative precision model, absolute precision val+prec).
 *
 * Two degenerate states:
 *   ell == 0            exact zero, compatible with any prime
 *   unit == 0, ell > 0  O(ell^val): zero to the known precision
 */
struct Padic {
    long ell = 0;
    int prec = 0;
    long val = 0;
    Int unit = 0;

    Padic() = default;
    Padic(long ell_, int prec_, long val_, Int unit_)
        : ell(ell_), prec(prec_), val(val_), unit(std::move(unit_)) {}

    static Padic zero() { return Padic{}; }

    static Padic big_oh(long ell, long v) { return Padic{ell, 0, v, 0}; }

    static Padic from_int(const Int& n, long ell, int prec) {
        if (n == 0) return Padic{ell, prec, prec, 0}; // exact 0 carried as O(ell^prec)
        long v;
        Int u = strip(n, ell, &v);
        return Padic{ell, prec, v, mod(u, ipow(ell, prec))};
    }

    static Padic from_rat(const Rat& x, long ell, int prec) {
        if (x == 0) return Padic{ell, prec, prec, 0};
        Padic n = from_int(Int(x.get_num()), ell, prec + 4);
        Padic d = from_int(Int(x.get_den()), ell, prec + 4);
        Padic q = n / d;
        return q.truncate(prec);
    }

    bool exact_zero() const { return ell == 0; }
    bool indistinct_zero() const { return ell == 0 || unit == 0; }
    // absolute precision: value is known modulo ell^abs_prec
    long abs_prec() const { return indistinct_zero() ? val : val + prec; }

    Padic truncate(int new_prec) const {
        if (indistinct_zero()) return *this;
        if (new_prec >= prec) return *this;
        Padic r = *this;
        r.prec = new_prec;
        r.unit = mod(unit, ipow(ell, new_prec));
        return r;
    }

    // representative integer of x/ell^val (the unit), in [0, ell^prec)
    const Int& unit_rep() const { return unit; }

    // canonical lift ell^val*unit as a rational
    Rat lift() const {
        if (indistinct_zero()) return Rat(0);
        Rat r(unit);
        if (val >= 0) r *= Rat(ipow(ell, (unsigned long)val));
        else r /= Rat(ipow(ell, (unsigned long)(-val)));
        return r;
    }

    friend Padic operator-(const Padic& a) {
        if (a.indistinct_zero()) return a;
        Padic r = a;
        r.unit = mod(-a.unit, ipow(a.ell, a.prec));
        return r;
    }

    friend Padic operator+(const Padic& a, const Padic& b) {
        if (a.exact_zero()) return b;
        if (b.exact_zero()) return a;
        if (a.ell != b.ell) throw std::domain_error("padic: mixed primes");
        long ap = std::min(a.abs_prec(), b.abs_prec());
        long v0 = std::min(a.val, b.val);
        if (v0 >= ap) return big_oh(a.ell, ap);
        Int m = ipow(a.ell, (unsigned long)(ap - v0));
        Int s = 0;
        if (!a.indistinct_zero()) s += a.unit * ipow(a.ell, (unsigned long)(a.val - v0));
        if (!b.indistinct_zero()) s += b.unit * ipow(b.ell, (unsigned long)(b.val - v0));
        s = mod(s, m);
        if (s == 0) return big_oh(a.ell, ap);
        long w;
        Int u = strip(s, a.ell, &w);
        long val = v0 + w;
        return Padic{a.ell, (int)(ap - val), val, mod(u, ipow(a.ell, (unsigned long)(ap - val)))};
    }

    friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

    friend Padic operator*(const Padic& a, const Padic& b) {
        if (a.exact_zero() || b.exact_zero()) return zero();
        if (a.ell != b.ell) throw std::domain_error("padic: mixed primes");
        if (a.indistinct_zero() || b.indistinct_zero())
            return big_oh(a.ell, a.val + b.val);
        int p = std::min(a.prec, b.prec);
        return Padic{a.ell, p, a.val + b.val, mod(a.unit * b.unit, ipow(a.ell, p))};
    }

    friend Padic operator/(const Padic& a, const Padic& b) {
        if (b.indistinct_zero()) throw std::domain_error("padic: division by (indistinct) zero");
        if (a.exact_zero()) return zero();
        if (a.ell != b.ell) throw std::domain_error("padic: mixed primes");
        if (a.indistinct_zero()) return big_oh(a.ell, a.val - b.val);
        int p = std::min(a.prec, b.prec);
        Int m = ipow(a.ell, p);
        return Padic{a.ell, p, a.val - b.val, mod(a.unit * invmod(b.unit, m), m)};
    }

    Padic pow(unsigned long e) const {
        if (exact_zero()) return e == 0 ? Padic{0, 0, 0, 1} : zero();
        if (indistinct_zero()) return big_oh(ell, val * (long)e);
        Int m = ipow(ell, prec);
        return Padic{ell, prec, val * (long)e, powmod(unit, Int(e), m)};
    }

    // equality to the shared precision
    friend bool operator==(const Padic& a, const Padic& b) {
        Padic d = a - b;
        return d.indistinct_zero();
    }

    std::string str() const {
        if (exact_zero()) return "0";
        if (indistinct_zero()) return "O(" + std::to_string(ell) + "^" + std::to_string(val) + ")";
        return unit.get_str() + "*" + std::to_string(ell) + "^" + std::to_string(val) +
               " + O(" + std::to_string(ell) + "^" + std::to_string(abs_prec()) + ")";
    }
};

inline Padic padic_shift(const Padic& a, long k) {
    if (a.exact_zero()) return a;
    Padic r = a;
    r.val += k;
    return r;
}

// ---- squares ----

// Is x a square in Q_ell? Requires enough precision (>= 3 digits at ell = 2).
inline bool padic_is_square(const Padic& x) {
    if (x.exact_zero()) return true;
    if (x.indistinct_zero()) throw std::domain_error("square test on indistinct zero");
    if (x.val % 2 != 0) return false;
    if (x.ell == 2) {
        if (x.prec < 3) throw std::domain_error("square test at 2 needs precision >= 3");
        return mod(x.unit, 8) == 1;
    }
    return legendre(x.unit, x.ell) == 1; // Euler criterion
}

enum class SquareClass { Square, NonSquare };

inline SquareClass square_class(const Padic& x) {
    return padic_is_square(x) ? SquareClass::Square : SquareClass::NonSquare;
}

// square root of a unit u mod ell (brute force, ell small)
inline std::optional<Int> sqrt_mod_ell(const Int& u, long ell) {
    Int r = mod(u, ell);
    for (long y = 0; y < ell; ++y)
        if (mod(Int(y) * y, ell) == r) return Int(y);
    return std::nullopt;
}

inline std::optional<Padic> padic_sqrt(const Padic& x) {
    if (x.exact_zero()) return x;
    if (!padic_is_square(x)) return std::nullopt;
    long ell = x.ell;
    Int m = ipow(ell, x.prec);
    Int y;
    long k; // y^2 = unit mod ell^k
    if (ell == 2) {
        y = 1;
        k = 3;
        // lift along 2^k: digit-by-digit
        while (k < x.prec) {
            Int mk = ipow(2, k + 1);
            if (mod(y * y - x.unit, mk) != 0) y += ipow(2, k - 1);
            ++k;
        }
    } else {
        y = *sqrt_mod_ell(x.unit, ell);
        k = 1;
        while (k < x.prec) { // Newton doubling
            k = std::min(2 * k, (long)x.prec);
            Int mk = ipow(ell, k);
            y = mod((y + x.unit * invmod(y, mk)) * invmod(Int(2), mk), mk);
        }
    }
    int p = (int)(x.prec - (ell == 2 ? 1 : 0));
    Padic r{ell, p, x.val / 2, mod(y, ipow(ell, p))};
    return r;
}

// ---- polynomials with p-adic coefficients ----

using PadicPoly = std::vector<Padic>; // c[0] + c[1] x + ...

inline Padic padic_poly_eval(const PadicPoly& f, const Padic& x) {
    Padic r = Padic::zero();
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
    return r;
}

inline PadicPoly padic_poly_derivative(const PadicPoly& f) {
    PadicPoly d;
    for (size_t i = 1; i < f.size(); ++i) {
        Padic c = f[i];
        if (!c.exact_zero()) {
            long ell = c.ell;
            c = c * Padic::from_int(Int((unsigned long)i), ell, c.prec + 8);
        }
        d.push_back(c);
    }
    return d;
}

/**
 * Lower Newton polygon of f = sum a_i x^i: lower convex hull of {(i, v(a_i))}.
 * Segment slopes s appear with multiplicity = horizontal length; the roots on
 * that segment have valuation -s.
 */
struct NewtonSegment {
    Rat slope;
    long length; // horizontal extent = number of roots of valuation -slope
};

struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices; // (i, v(a_i)) hull vertices
    std::vector<NewtonSegment> segments;
};

inline NewtonPolygon newton_polygon(const std::vector<std::pair<long, long>>& pts_in) {
    NewtonPolygon np;
    auto pts = pts_in;
    std::sort(pts.begin(), pts.end());
    // Andrew-monotone-chain lower hull
    std::vector<std::pair<long, long>> h;
    for (auto& p : pts) {
        while (h.size() >= 2) {
            auto& a = h[h.size() - 2];
            auto& b = h[h.size() - 1];
            // keep strictly convex-down turns; drop b if it lies on/above segment a-p
            Int cross = Int(b.first - a.first) * (p.second - a.second) -
                        Int(b.second - a.second) * (p.first - a.first);
            if (cross <= 0) h.pop_back();
            else break;
        }
        h.push_back(p);
    }
    np.vertices = h;
    for (size_t i = 0; i + 1 < h.size(); ++i) {
        Rat s(h[i + 1].second - h[i].second, h[i + 1].first - h[i].first);
        s.canonicalize();
        np.segments.push_back({s, h[i + 1].first - h[i].first});
    }
    return np;
}

inline NewtonPolygon newton_polygon(const PadicPoly& f) {
    std::vector<std::pair<long, long>> pts;
    for (size_t i = 0; i < f.size(); ++i)
        if (!f[i].indistinct_zero()) pts.push_back({(long)i, f[i].val});
    return newton_polygon(pts);
}

// Gauss valuation w_rho(f) = min_i (v(a_i) + i*rho).
// Coefficients that are zero-to-precision are skipped (their contribution is
// >= the known bound; callers needing a guarantee must supply enough precision).
inline Rat gauss_valuation(const PadicPoly& f, const Rat& rho) {
    bool first = true;
    Rat best;
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].indistinct_zero()) continue;
        Rat w = Rat(f[i].val) + Rat((long)i) * rho;
        if (first || w < best) { best = w; first = false; }
    }
    if (first) throw std::domain_error("gauss_valuation of zero polynomial");
    return best;
}

/**
 * Hensel lift: given x0 with v(f(x0)) > 2 v(f'(x0)), Newton-iterate to a root
 * determined to the working precision. Throws if the criterion fails.
 */
inline Padic hensel_lift(const PadicPoly& f, const Padic& x0) {
    PadicPoly df = padic_poly_derivative(f);
    Padic x = x0;
    Padic fx = padic_poly_eval(f, x);
    Padic dfx = padic_poly_eval(df, x);
    if (dfx.indistinct_zero()) throw std::domain_error("hensel: derivative indistinct from 0");
    if (!fx.indistinct_zero() && fx.val <= 2 * dfx.val)
        throw std::domain_error("hensel: v(f(x0)) <= 2 v(f'(x0))");
    for (int it = 0; it < 200; ++it) {
        if (fx.indistinct_zero()) break;
        x = x - fx / dfx;
        fx = padic_poly_eval(f, x);
        dfx = padic_poly_eval(df, x);
    }
    return x;
}

// ---- roots of integer polynomials in Z_ell ----

namespace detail {

inline void zroots_rec(const std::vector<Int>& f, const std::vector<Int>& df, long ell,
                       const Int& center, long depth, long max_depth, int prec,
                       std::vector<Padic>& out) {
    // candidates x = center + ell^depth * t
    Int step = ipow(ell, depth);
    for (long t = 0; t < ell; ++t) {
        Int a = center + step * t;
        // evaluate f(a) and f'(a)
        Int fa = 0, dfa = 0;
        for (auto it = f.rbegin(); it != f.rend(); ++it) fa = fa * a + *it;
        for (auto it = df.rbegin(); it != df.rend(); ++it) dfa = dfa * a + *it;
        long vdf = dfa == 0 ? -1 : valuation(dfa, ell);
        if (fa == 0) { // exact integer root; keep descending, the disk may hold another root
            out.push_back(Padic::from_int(a, ell, prec));
        } else {
            long vf = valuation(fa, ell);
            if (vf <= depth) continue; // f is constant != 0 on this disk mod ell^(depth+1)
            if (vdf >= 0 && vf > 2 * vdf) {
                // certified simple root near a: Newton-lift to working precision
                PadicPoly fp;
                for (auto& c : f) fp.push_back(Padic::from_int(c, ell, prec + 8));
                out.push_back(hensel_lift(fp, Padic::from_int(a, ell, prec + 8)).truncate(prec));
                // fall through: a second root may share the residue disk
            }
        }
        if (depth + 1 <= max_depth)
            zroots_rec(f, df, ell, a, depth + 1, max_depth, prec, out);
    }
}

} // namespace detail

/**
 * All roots of an integer polynomial in Z_ell, found by residue-disk refinement
 * with Hensel certification. max_depth bounds the refinement; a squarefree f
 * separates by depth v_ell(disc f). Exact integer roots may be reported once
 * per certifying disk; callers dedupe if needed.
 */
inline std::vector<Padic> padic_integer_roots(const std::vector<Int>& f, long ell, int prec,
                                              long max_depth = 64) {
    std::vector<Int> df;
    for (size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * (unsigned long)i);
    std::vector<Padic> out;
    detail::zroots_rec(f, df, ell, Int(0), 0, max_depth, prec, out);
    // dedupe (distinct certified roots differ at the working precision)
    std::vector<Padic> uniq;
    for (auto& r : out) {
        bool seen = false;
        for (auto& u : uniq)
            if ((r - u).indistinct_zero()) { seen = true; break; }
        if (!seen) uniq.push_back(r);
    }
    return uniq;
}

} // namespace gfe
