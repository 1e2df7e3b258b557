#pragma once

#include "elliptic.hpp"
#include "rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gfe {

// ---------------------------------------------------------------------------
// Frey curves for a^2 + b^3 = c^p and their local classification at 2 and 3.
// ---------------------------------------------------------------------------

// y^2 = x^3 + 3 b x - 2 a, with c4 = -144 b, c6 = 1728 a, disc = -1728 (a^2+b^3)
inline Model frey_model(const Int& a, const Int& b) {
    if (a * a + b * b * b == 0) throw std::domain_error("frey_model: singular (a^2 + b^3 = 0)");
    return Model{0, 0, 0, Rat(3 * b), Rat(-2 * a)};
}

// ---- 2-adic / 3-adic residue disks of j-invariants -------------------------

enum class JDiskVariant {
    CenterModulus,    // { center + ell^k Z_ell }
    QuadraticFamily,  // { 1728 + s t^2 : t in Z_ell }
    PolyCube,         // { s t^3 : t in Z_ell }
    InversePower,     // { ell^(s-p) t^-p : t in Z_ell \ {0} }
};

struct JDisk {
    JDiskVariant variant;
    long ell = 2;
    Rat center = 0;   // CenterModulus
    long mod_exp = 0; // CenterModulus: k
    Int scale = 0;    // QuadraticFamily / PolyCube: s
    long s_exp = 0;   // InversePower: s
    long pexp = 0;    // InversePower: p (0 = take p from the membership query)

    static JDisk center_mod(long ell, const Rat& c, long k) {
        JDisk d;
        d.variant = JDiskVariant::CenterModulus;
        d.ell = ell; d.center = c; d.mod_exp = k;
        return d;
    }
    static JDisk quad(long ell, const Int& s) {
        JDisk d;
        d.variant = JDiskVariant::QuadraticFamily;
        d.ell = ell; d.scale = s;
        return d;
    }
    static JDisk cube(long ell, const Int& s) {
        JDisk d;
        d.variant = JDiskVariant::PolyCube;
        d.ell = ell; d.scale = s;
        return d;
    }
    static JDisk inv_pow(long ell, long s, long p = 0) {
        JDisk d;
        d.variant = JDiskVariant::InversePower;
        d.ell = ell; d.s_exp = s; d.pexp = p;
        return d;
    }

    // unit part of a nonzero rational at ell, reduced mod m (ell-power modulus)
    static Int unit_mod(const Rat& u, long ell, long m) {
        Int n = strip(Int(u.get_num()), ell), d = strip(Int(u.get_den()), ell);
        return mod(n * invmod(d, m), m);
    }
    // is u a square in Z_ell (u rational, exact)?
    static bool is_zl_square(const Rat& u, long ell) {
        if (u == 0) return true;
        long v = valuation(u, ell);
        if (v < 0 || v % 2 != 0) return false;
        if (ell == 2) return unit_mod(u, 2, 8) == 1;
        return legendre(unit_mod(u, ell, ell), ell) == 1;
    }
    // is u a cube in Z_ell?  (cubing is bijective on Z_2^x; on Z_3^x the image
    // is the units congruent to +-1 mod 9)
    static bool is_zl_cube(const Rat& u, long ell) {
        if (u == 0) return true;
        long v = valuation(u, ell);
        if (v < 0 || v % 3 != 0) return false;
        if (ell == 2) return true;
        Int m = unit_mod(u, 3, 9);
        return m == 1 || m == 8;
    }

    // exact membership for a rational j; p supplies the exponent for
    // inverse-power disks declared with pexp = 0
    bool contains(const Rat& j, long p = 0) const {
        switch (variant) {
        case JDiskVariant::CenterModulus:
            return j == center || valuation(j - center, ell) >= mod_exp;
        case JDiskVariant::QuadraticFamily:
            return is_zl_square((j - 1728) / Rat(scale), ell);
        case JDiskVariant::PolyCube:
            return is_zl_cube(j / Rat(scale), ell);
        case JDiskVariant::InversePower: {
            long q = pexp ? pexp : p;
            if (q == 0) throw std::domain_error("JDisk::contains: exponent p required");
            if (j == 0) return false;
            long v = valuation(j, ell);
            return v <= s_exp - q && ((s_exp - v) % q) == 0;
        }
        }
        return false;
    }

    std::string str() const {
        switch (variant) {
        case JDiskVariant::CenterModulus:
            return rat_str(center) + " + " + std::to_string(ell) + "^" +
                   std::to_string(mod_exp) + "*Z" + std::to_string(ell);
        case JDiskVariant::QuadraticFamily:
            return "1728 + (" + scale.get_str() + ")*t^2";
        case JDiskVariant::PolyCube:
            return scale.get_str() + "*t^3";
        case JDiskVariant::InversePower: {
            std::string p = pexp ? std::to_string(pexp) : "p";
            return std::to_string(ell) + "^(" + std::to_string(s_exp) + "-" + p +
                   ")*t^(-" + p + ")";
        }
        }
        return "";
    }
};

// the nine 2-adic residue disks relevant for level-11 descent (exponent 11)
inline const std::vector<JDisk>& standard_disk_family() {
    static const std::vector<JDisk> dd = {
        JDisk::center_mod(2, 15 * 64, 11),  JDisk::center_mod(2, -64, 11),
        JDisk::center_mod(2, 512, 11),      JDisk::center_mod(2, -512, 11),
        JDisk::inv_pow(2, 6, 11),
        JDisk::quad(2, Int(-3) * 1024),     JDisk::quad(2, -1024),
        JDisk::quad(2, 1024),               JDisk::quad(2, Int(3) * 1024),
    };
    return dd;
}

// all family members containing j; the branch points 1728 and infinity of the
// degree-12 covering are excluded
inline std::vector<JDisk> jdisk_membership(const Rat& j) {
    std::vector<JDisk> out;
    if (j == 1728) return out;
    for (auto& d : standard_disk_family())
        if (d.contains(j, 11)) out.push_back(d);
    return out;
}

// static disk assignment: which family members can carry the j-invariant of a
// rational point on the twisted level-11 cover attached to each curve class
inline std::vector<JDisk> curve_disks(const std::string& label) {
    auto& D = standard_disk_family();
    if (label == "54a1") return {D[4]};
    if (label == "96a1") return {D[0], D[1], D[3]};
    if (label == "864a1") return {D[5], D[7]};
    if (label == "864b1") return {D[6], D[8], D[2]};
    if (label == "864c1") return {D[0], D[1], D[3]};
    throw std::domain_error("curve_disks: unknown label " + label);
}

// ---- the local classification tables ---------------------------------------

struct FreyLocalRow {
    bool feasible = true;
    int row = 0;                      // line number; 0 for infeasible classes
    std::vector<long> d_set;          // admissible quadratic twists
    std::vector<std::string> curves;  // matching reference curves
    long vN = 0;                      // valuation of the conductor
    std::optional<JDisk> disk;        // residue disk of the j-invariant
    std::string witness;              // for infeasible classes
};

namespace detail {
// machine check: a^2 + b^3 is never congruent to c^p mod m for any c
// (valid for every odd p >= 3 because c -> c^p factors through c mod m
// for the two moduli we use: mod 8 odd c^p = c, even c^p = 0; mod 9
// unit cubes are +-1 and 3 | c forces c^p = 0)
inline bool no_pth_power_mod(const Int& a, const Int& b, long m) {
    Int s = mod(a * a + b * b * b, m);
    for (long c = 0; c < m; ++c) {
        bool hit = false;
        // c^p mod m for all odd primes p >= 7 takes finitely many values:
        // powers of c cycle, so scan the full multiplicative cycle of c
        long x = ((c % m) + m) % m;
        std::vector<long> seen;
        long y = x;
        for (int i = 0; i < 2 * m; ++i) {
            seen.push_back(y);
            y = (y * x) % m;
        }
        // odd exponents >= 7 hit indices 6, 8, 10, ... (0-based: exponent k at
        // index k-1); collect the attained values over odd k
        for (size_t k = 7; k <= seen.size(); k += 2)
            if (Int(seen[k - 1]) == s) { hit = true; break; }
        if (hit) return false;
    }
    return true;
}
} // namespace detail

inline FreyLocalRow classify_2adic(const Int& a, const Int& b) {
    if (mod(a, 2) == 0 && mod(b, 2) == 0)
        throw std::domain_error("classify_2adic: a, b both even");
    long am4 = mod(a, 4).get_si(), bm8 = mod(b, 8).get_si();
    FreyLocalRow r;
    if (am4 % 2 == 1) { // a odd
        switch (bm8) {
        case 7:
            r.row = 1; r.vN = 1;
            r.d_set = (am4 == 1) ? std::vector<long>{1, -3} : std::vector<long>{-1, 3};
            r.curves = {"54a1"};
            r.disk = JDisk::inv_pow(2, 6);
            return r;
        case 0:
            r.row = 4; r.vN = 0;
            r.d_set = (am4 == 1) ? std::vector<long>{-2, 6} : std::vector<long>{2, -6};
            r.curves = {"27a1"};
            r.disk = JDisk::cube(2, Int(1) << 15);
            return r;
        case 2:
            r.row = 5; r.vN = 5;
            r.d_set = {2, -2, 6, -6};
            r.curves = {"96a1", "864c1"};
            r.disk = JDisk::center_mod(2, -512, 11);
            return r;
        case 6:
            r.row = 6; r.vN = 5;
            r.d_set = {2, -2, 6, -6};
            r.curves = {"288a1", "864a1", "864b1"};
            r.disk = JDisk::center_mod(2, 512, 11);
            return r;
        case 4:
            // the would-be row: twists with good reduction at 2 have Frobenius
            // trace +-2 there, so no curve of odd conductor dividing 12^3 can
            // match; recorded infeasible
            r.feasible = false; r.row = 7;
            r.disk = JDisk::center_mod(2, 1 << 12, 13);
            r.witness = "good-reduction twists have trace of Frobenius +-2 at 2";
            return r;
        default: // b = 1, 3, 5 mod 8: a^2 + b^3 = 2, 4, 6 mod 8
            r.feasible = false;
            if (!detail::no_pth_power_mod(a, b, 8))
                throw std::logic_error("classify_2adic: witness check failed");
            r.witness = "a^2 + b^3 = " + mod(a * a + b * b * b, 8).get_str() +
                        " mod 8 is not a p-th power residue";
            return r;
        }
    }
    // a even, b odd
    r.vN = 5;
    if (am4 == 0) {
        r.row = 2;
        r.curves = {"288a1", "864a1", "864b1"};
        // disk assignment verified by exact 2-adic computation: for a = 4a',
        // (1728 - j) / 2^10 = 27 a'^2 / s with s = a^2 + b^3 = b mod 8, so the
        // scale must absorb the non-square unit 27/s mod 8
        switch (bm8) {
        case 1: r.d_set = {1, -1, 3, -3}; r.disk = JDisk::quad(2, Int(-3) * 1024); break;
        case 5: r.d_set = {1, -1, 3, -3}; r.disk = JDisk::quad(2, 1024); break;
        case 3: r.d_set = {2, -2, 6, -6}; r.disk = JDisk::quad(2, -1024); break;
        case 7: r.d_set = {2, -2, 6, -6}; r.disk = JDisk::quad(2, Int(3) * 1024); break;
        }
    } else {
        r.row = 3;
        r.curves = {"96a1", "864c1"};
        switch (bm8) {
        case 1: r.d_set = {1, -1, 3, -3}; r.disk = JDisk::center_mod(2, -64, 11); break;
        case 5: r.d_set = {1, -1, 3, -3}; r.disk = JDisk::center_mod(2, 15 * 64, 11); break;
        case 3: r.d_set = {2, -2, 6, -6}; r.disk = JDisk::center_mod(2, 7 * 64, 11); break;
        case 7: r.d_set = {2, -2, 6, -6}; r.disk = JDisk::center_mod(2, -9 * 64, 11); break;
        }
    }
    return r;
}

inline FreyLocalRow classify_3adic(const Int& a, const Int& b) {
    if (mod(a, 3) == 0 && mod(b, 3) == 0)
        throw std::domain_error("classify_3adic: a, b both divisible by 3");
    long am9 = mod(a, 9).get_si(), bm3 = mod(b, 3).get_si();
    FreyLocalRow r;
    std::vector<long> all = {1, -1, 2, -2, 3, -3, 6, -6};
    if (bm3 == 2) { // b = -1 mod 3
        if (am9 == 1 || am9 == 8) {
            r.row = 1; r.vN = 1;
            r.d_set = (am9 == 1) ? std::vector<long>{-3, 6} : std::vector<long>{3, -6};
            r.curves = {"96a1"};
            r.disk = JDisk::inv_pow(3, 3);
            return r;
        }
        if (am9 == 0) {
            r.row = 2; r.vN = 2; r.d_set = all;
            r.curves = {"288a1"};
            r.disk = JDisk::quad(3, ipow(3, 7));
            return r;
        }
        if (am9 == 3 || am9 == 6) {
            r.row = 4; r.vN = 3; r.d_set = all;
            r.curves = {"54a1", "864a1"};
            r.disk = JDisk::center_mod(3, -8 * 27, 6);
            return r;
        }
        // a = +-2, +-4 mod 9: a^2 + b^3 = 3 or 6 mod 9
        r.feasible = false;
        if (!detail::no_pth_power_mod(a, b, 9))
            throw std::logic_error("classify_3adic: witness check failed");
        r.witness = "a^2 + b^3 = " + mod(a * a + b * b * b, 9).get_str() +
                    " mod 9 is not a p-th power residue";
        return r;
    }
    if (bm3 == 1) {
        r.d_set = all;
        if (am9 == 0) {
            r.row = 2; r.vN = 2;
            r.curves = {"288a1"};
            r.disk = JDisk::quad(3, -ipow(3, 7));
        } else if (am9 == 3 || am9 == 6) {
            r.row = 3; r.vN = 3;
            r.curves = {"27a1", "864b1", "864c1"};
            r.disk = JDisk::center_mod(3, 27, 6);
        } else if (am9 == 2 || am9 == 7) {
            r.row = 6; r.vN = 2;
            r.curves = {"288a1"};
            r.disk = JDisk::center_mod(3, 2 * 27, 5);
        } else if (am9 == 1 || am9 == 8) {
            r.row = 7; r.vN = 3;
            r.curves = {"54a1", "864a1"};
            r.disk = JDisk::center_mod(3, -4 * 27, 5);
        } else { // am9 = 4 or 5
            r.row = 7; r.vN = 3;
            r.curves = {"54a1", "864a1"};
            r.disk = JDisk::center_mod(3, -27, 5);
        }
        return r;
    }
    // b = 0 mod 3, a prime to 3: j / 3^6 = 64 (b/3)^3 / s with s = a^2 mod 27,
    // so the cube family carries the unit factor (a^2)^-1 mod 9
    long u = (am9 == 1 || am9 == 8) ? 1 : (am9 == 2 || am9 == 7) ? 7 : 4;
    r.d_set = all;
    r.disk = JDisk::cube(3, u * ipow(3, 6));
    if (am9 == 4 || am9 == 5) {
        // 2a is a cube unit mod 9, so the translated a6 gains an extra factor
        // of 3 and Tate's algorithm lands in type III with v3(b8) = 2 exactly:
        // conductor exponent 2 for every twist, matching the conductor-2^5*3^2
        // class rather than the 3^3 classes
        r.row = 6; r.vN = 2;
        r.curves = {"288a1"};
    } else {
        r.row = 5; r.vN = 3;
        r.curves = {"27a1", "864b1", "864c1"};
    }
    return r;
}

// the (row at 2, row at 3) -> curve matrix; empty string for impossible pairs
inline std::string match_curve(int i2, int i3) {
    auto ri = [](int i) {
        switch (i) {
        case 1: return 0;
        case 2: case 6: return 1;
        case 3: case 5: return 2;
        case 4: return 3;
        }
        throw std::domain_error("match_curve: bad row index");
    };
    static const char* tab[4][4] = {
        {"", "", "", "54a1"},
        {"", "288a1", "864b1", "864a1"},
        {"96a1", "", "864c1", ""},
        {"", "", "27a1", ""},
    };
    int ci = [](int i) {
        switch (i) {
        case 1: return 0;
        case 2: case 6: return 1;
        case 3: case 5: return 2;
        case 4: case 7: return 3;
        }
        throw std::domain_error("match_curve: bad column index");
    }(i3);
    return tab[ri(i2)][ci];
}

// constraints every primitive solution of a^2 + b^3 = c^p (p >= 11) satisfies
inline std::vector<std::string> corollary_checks(const Int& a, const Int& b, const Int& c,
                                                 long /*p*/) {
    std::vector<std::string> bad;
    if (mod(b, 8) == 4) bad.push_back("B4Mod8");
    if (c != 0 && mod(c, 6) == 0) bad.push_back("SixDividesC");
    (void)a;
    return bad;
}

// ---- good j-invariants -----------------------------------------------------

// j is "good" when j = 1728 b^3 / c^p and 1728 - j = 1728 a^2 / c^p for some
// coprime integers a, b, c; returns a witness (a >= 0) or nothing
inline std::optional<std::array<Int, 3>> good_j(const Rat& j, long p) {
    Rat jr = j;
    jr.canonicalize();
    Int d = jr.get_den();
    std::vector<Int> divisors;
    for (Int k = 1; k * k <= 1728; ++k)
        if (1728 % k == 0) { divisors.push_back(k); divisors.push_back(1728 / k); }
    for (const Int& k : divisors)
        for (int sgn : {1, -1}) {
            Int C = sgn * d * k;
            auto c = exact_root(C, p);
            if (!c) continue;
            Rat b3 = jr * C / 1728, a2 = (1728 - jr) * C / 1728;
            if (b3.get_den() != 1 || a2.get_den() != 1) continue;
            auto b = exact_root(b3.get_num(), 3);
            auto av = exact_root(a2.get_num(), 2);
            if (!b || !av) continue;
            Int a = abs(*av);
            if (a * a + (*b) * (*b) * (*b) != C) continue;
            Int g = gcd(gcd(a, *b), *c);
            if (g != 1) continue;
            return std::array<Int, 3>{a, *b, *c};
        }
    return std::nullopt;
}

// ---- known solutions and exhaustive search ---------------------------------

enum class SolutionKind { Trivial, Catalan, NonTrivial };

struct SolutionTriple {
    Int a, b, c;
    long p;
    SolutionKind kind;
    bool primitive;
};

inline SolutionKind classify_solution(const Int& a, const Int& b, const Int& c) {
    if (a * b * c == 0 || (abs(a) == 1 && b == -1)) return SolutionKind::Trivial;
    if (abs(a) == 3 && b == -2 && abs(c) == 1) return SolutionKind::Catalan;
    return SolutionKind::NonTrivial;
}

struct KnownIdentity {
    Int a, b;
    Int base;
    long exp;
    bool negated; // right-hand side is -(base^exp)
};

inline const std::vector<KnownIdentity>& known_identities() {
    static const std::vector<KnownIdentity> k = {
        {13, 7, 2, 9, false},
        {71, -17, 2, 7, false},
        {21063928, -76271, 17, 7, false},
        {2213459, 1414, 65, 7, false},
        {15312283, 9262, 113, 7, false},
        {30042907, -96222, 43, 8, false},
        {1549034, -15613, 33, 8, true},
        {3, -2, 1, 1, false}, // Catalan: holds with any exponent on 1
    };
    return k;
}

struct KnownReport {
    KnownIdentity id;
    bool holds;
    bool primitive;
    SolutionKind kind;
};

inline std::vector<KnownReport> verify_known_solutions() {
    std::vector<KnownReport> out;
    for (auto& k : known_identities()) {
        Int rhs = ipow(k.base, k.exp);
        if (k.negated) rhs = -rhs;
        bool holds = (k.a * k.a + k.b * k.b * k.b == rhs);
        bool prim = gcd(gcd(k.a, k.b), k.base) == 1;
        out.push_back({k, holds, prim, classify_solution(k.a, k.b, k.base)});
    }
    return out;
}

// all primitive (a, b, c) with a^2 + b^3 = c^p and max(|a|, |b|) <= B,
// ordered by (a, b) ascending.  For each b the candidate values c^p with
// |c^p| <= B^2 + |b|^3 form a tiny set, so iterate (b, c) and solve for a.
inline std::vector<SolutionTriple> search_solutions(long p, const Int& B) {
    std::vector<SolutionTriple> out;
    for (Int b = -B; b <= B; ++b) {
        Int b3 = b * b * b, smax = B * B + abs(b3);
        for (Int c = 0;; c == 0 ? c = 1 : (c > 0 ? c = -c : c = -c + 1)) {
            Int cp = ipow(c, p);
            if (abs(cp) > smax) {
                if (c <= 0) break; // both signs exhausted
                continue;
            }
            Int a2 = cp - b3;
            if (a2 < 0) continue;
            Int a = isqrt(a2);
            if (a * a != a2 || a > B) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c, p, classify_solution(a, b, c), true});
            if (a != 0) out.push_back({-a, b, c, p, classify_solution(-a, b, c), true});
        }
    }
    std::sort(out.begin(), out.end(), [](const SolutionTriple& x, const SolutionTriple& y) {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    });
    return out;
}

} // namespace gfe
