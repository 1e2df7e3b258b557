#pragma once

// end-to-end validation suite: every public table and algorithm is checked
// against independently embedded expected data and randomized oracles.  The
// same runner backs the standalone acceptance binary and the CLI verifier.

#include <gfe/elliptic.hpp>
#include <gfe/frey.hpp>
#include <gfe/galois.hpp>
#include <gfe/padic.hpp>
#include <gfe/registry.hpp>
#include <gfe/twist.hpp>
#include <gfe/x011.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gfe {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail; // first failure, or a short success note
    double seconds = 0.0;
};

namespace acceptance_detail {

// a tiny check collector: remembers the first failure message
struct Checker {
    bool ok = true;
    std::string first;
    void expect(bool cond, const std::string& msg) {
        if (!cond && ok) { ok = false; first = msg; }
    }
};

inline bool jdisk_eq(const JDisk& a, const JDisk& b) {
    return a.variant == b.variant && a.ell == b.ell && a.center == b.center &&
           a.mod_exp == b.mod_exp && a.scale == b.scale && a.s_exp == b.s_exp &&
           a.pexp == b.pexp;
}

inline std::vector<long> sorted(std::vector<long> v) {
    std::sort(v.begin(), v.end());
    return v;
}
inline std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// ---- embedded expected local tables ----------------------------------------
// These literals restate the published classification data (with its known
// corrections) independently of the classify_* implementations.

struct ExpectedRow {
    bool feasible = true;
    int row = 0;
    std::vector<long> d_set;
    std::vector<std::string> curves;
    long vN = 0;
    std::optional<JDisk> disk;
};

inline ExpectedRow expected_2adic(long a0, long b0) {
    ExpectedRow r;
    const std::vector<long> dpm2 = {2, -2, 6, -6};
    if (a0 % 2 == 1) {
        switch (b0) {
        case 7:
            r.row = 1; r.vN = 1;
            r.d_set = (a0 == 1) ? std::vector<long>{1, -3} : std::vector<long>{-1, 3};
            r.curves = {"54a1"};
            r.disk = JDisk::inv_pow(2, 6);
            return r;
        case 0:
            r.row = 4; r.vN = 0;
            r.d_set = (a0 == 1) ? std::vector<long>{-2, 6} : std::vector<long>{2, -6};
            r.curves = {"27a1"};
            r.disk = JDisk::cube(2, Int(1) << 15);
            return r;
        case 2:
            r.row = 5; r.vN = 5; r.d_set = dpm2;
            r.curves = {"96a1", "864c1"};
            r.disk = JDisk::center_mod(2, -512, 11);
            return r;
        case 6:
            r.row = 6; r.vN = 5; r.d_set = dpm2;
            r.curves = {"288a1", "864a1", "864b1"};
            r.disk = JDisk::center_mod(2, 512, 11);
            return r;
        case 4:
            r.feasible = false; r.row = 7;
            return r;
        default:
            r.feasible = false; r.row = 0;
            return r;
        }
    }
    r.vN = 5;
    bool dunit = (b0 == 1 || b0 == 5);
    r.d_set = dunit ? std::vector<long>{1, -1, 3, -3} : dpm2;
    if (a0 == 0) {
        r.row = 2;
        r.curves = {"288a1", "864a1", "864b1"};
        switch (b0) {
        case 1: r.disk = JDisk::quad(2, Int(-3) * 1024); break;
        case 3: r.disk = JDisk::quad(2, -1024); break;
        case 5: r.disk = JDisk::quad(2, 1024); break;
        case 7: r.disk = JDisk::quad(2, Int(3) * 1024); break;
        }
    } else {
        r.row = 3;
        r.curves = {"96a1", "864c1"};
        switch (b0) {
        case 1: r.disk = JDisk::center_mod(2, -64, 11); break;
        case 3: r.disk = JDisk::center_mod(2, 7 * 64, 11); break;
        case 5: r.disk = JDisk::center_mod(2, 15 * 64, 11); break;
        case 7: r.disk = JDisk::center_mod(2, -9 * 64, 11); break;
        }
    }
    return r;
}

inline ExpectedRow expected_3adic(long a0, long b0) {
    ExpectedRow r;
    const std::vector<long> all = {1, -1, 2, -2, 3, -3, 6, -6};
    long s = (a0 * a0) % 9; // square class of a mod 9: 0, 1, 4, 7
    if (b0 == 2) {
        if (s == 1 && (a0 == 1 || a0 == 8)) {
            r.row = 1; r.vN = 1;
            r.d_set = (a0 == 1) ? std::vector<long>{-3, 6} : std::vector<long>{3, -6};
            r.curves = {"96a1"};
            r.disk = JDisk::inv_pow(3, 3);
            return r;
        }
        if (a0 == 0) {
            r.row = 2; r.vN = 2; r.d_set = all;
            r.curves = {"288a1"};
            r.disk = JDisk::quad(3, ipow(3, 7));
            return r;
        }
        if (a0 == 3 || a0 == 6) {
            r.row = 4; r.vN = 3; r.d_set = all;
            r.curves = {"54a1", "864a1"};
            r.disk = JDisk::center_mod(3, -8 * 27, 6);
            return r;
        }
        r.feasible = false;
        return r;
    }
    if (b0 == 1) {
        r.d_set = all;
        if (a0 == 0) {
            r.row = 2; r.vN = 2;
            r.curves = {"288a1"};
            r.disk = JDisk::quad(3, -ipow(3, 7));
        } else if (a0 == 3 || a0 == 6) {
            r.row = 3; r.vN = 3;
            r.curves = {"27a1", "864b1", "864c1"};
            r.disk = JDisk::center_mod(3, 27, 6);
        } else if (a0 == 2 || a0 == 7) {
            r.row = 6; r.vN = 2;
            r.curves = {"288a1"};
            r.disk = JDisk::center_mod(3, 2 * 27, 5);
        } else if (a0 == 1 || a0 == 8) {
            r.row = 7; r.vN = 3;
            r.curves = {"54a1", "864a1"};
            r.disk = JDisk::center_mod(3, -4 * 27, 5);
        } else { // a0 = 4 or 5
            r.row = 7; r.vN = 3;
            r.curves = {"54a1", "864a1"};
            r.disk = JDisk::center_mod(3, -27, 5);
        }
        return r;
    }
    // b = 0 mod 3, a prime to 3; the cube family scale carries the inverse
    // square class of a as its unit factor
    long u = (s == 1) ? 1 : (s == 4) ? 7 : 4;
    r.d_set = all;
    r.disk = JDisk::cube(3, u * ipow(3, 6));
    if (a0 == 4 || a0 == 5) {
        r.row = 6; r.vN = 2;
        r.curves = {"288a1"};
    } else {
        r.row = 5; r.vN = 3;
        r.curves = {"27a1", "864b1", "864c1"};
    }
    return r;
}

inline std::string row_key(const FreyLocalRow& r) {
    std::ostringstream os;
    os << r.row << '|' << r.vN << '|';
    for (long d : sorted(r.d_set)) os << d << ',';
    os << '|';
    for (auto& c : sorted(r.curves)) os << c << ',';
    os << '|' << (r.disk ? r.disk->str() : "-");
    return os.str();
}

// shift a by multiples of the class modulus until v_ell(a^2 + b^3) is a
// multiple of p (inverse-power disks only hold on pure p-th power levels)
inline bool force_pth_power_val(Int& a, const Int& b, long ell, long p) {
    long m = ell == 2 ? 8 : 9;
    for (long k = 0; k < 4000; ++k) {
        Int cand = a + k * m;
        Int sc = cand * cand + b * b * b;
        if (sc != 0 && valuation(sc, ell) % p == 0) { a = cand; return true; }
    }
    return false;
}

// ---- local solubility oracle (independent finite-modulus scan) -------------

inline Rat ratpow(const Rat& b, long e) {
    Rat r(1);
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

inline Rat resultant(PolyQ a, PolyQ b) {
    if (a.is_zero() || b.is_zero()) return Rat(0);
    Rat r(1);
    while (b.degree() >= 1) {
        PolyQ rem = poly_divmod(a, b).second;
        if (rem.is_zero()) return Rat(0);
        long da = a.degree(), db = b.degree(), dr = rem.degree();
        if ((da % 2) && (db % 2)) r = -r;
        r = r * ratpow(b.lead(), da - dr);
        a = b;
        b = rem;
    }
    return r * ratpow(b.c[0], a.degree());
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)(((unsigned __int128)a * b) % m);
}

// can the residue value m mod ell^k still be a square in Q_ell?
inline bool residue_may_work(uint64_t m, long ell, long k) {
    if (m == 0) return true;
    long v = 0;
    while (m % (uint64_t)ell == 0) { m /= (uint64_t)ell; ++v; }
    if (v % 2 != 0) return false;
    if (ell == 2) {
        if (k - v >= 3) return m % 8 == 1;
        if (k - v >= 2) return m % 4 != 3;
        return true;
    }
    return legendre(Int((long)(m % (uint64_t)ell)), ell) == 1;
}

// finite-modulus scan for a Q_ell point on y^2 = f(x): affine chart plus the
// chart at infinity; rejection is exact at depth >= v(disc) + 3
inline bool brute_force_soluble(const PolyQ& f, long ell, long k) {
    uint64_t M = 1;
    for (long i = 0; i < k; ++i) M *= (uint64_t)ell;
    std::vector<Int> ci = int_coeffs(f);
    long d = f.degree();
    auto reduced = [&](const std::vector<Int>& cs) {
        std::vector<uint64_t> r;
        for (const Int& c : cs) r.push_back(mpz_fdiv_ui(c.get_mpz_t(), M));
        return r;
    };
    auto scan = [&](const std::vector<uint64_t>& cs, uint64_t start, uint64_t step) {
        for (uint64_t x = start;; x += step) {
            uint64_t m = 0;
            for (auto it = cs.rbegin(); it != cs.rend(); ++it)
                m = (mulmod_u64(m, x, M) + *it) % M;
            if (residue_may_work(m, ell, k)) return true;
            if (x + step >= M || x + step < x) break;
        }
        return false;
    };
    if (scan(reduced(ci), 0, 1)) return true;
    std::vector<Int> h(ci.rbegin(), ci.rend());
    if (d % 2 != 0) h.insert(h.begin(), Int(0));
    return scan(reduced(h), 0, (uint64_t)ell);
}

// ---- rational linear algebra (plane-relation interpolation) ----------------

inline std::vector<std::vector<Rat>> kernel_basis(std::vector<std::vector<Rat>> M,
                                                  size_t ncols) {
    size_t nrows = M.size();
    std::vector<long> pivot_of_col(ncols, -1);
    size_t prow = 0;
    for (size_t col = 0; col < ncols && prow < nrows; ++col) {
        size_t sel = prow;
        while (sel < nrows && M[sel][col] == 0) ++sel;
        if (sel == nrows) continue;
        std::swap(M[sel], M[prow]);
        Rat inv = Rat(1) / M[prow][col];
        for (auto& x : M[prow]) x *= inv;
        for (size_t r = 0; r < nrows; ++r) {
            if (r == prow || M[r][col] == 0) continue;
            Rat fct = M[r][col];
            for (size_t cc = col; cc < ncols; ++cc) M[r][cc] -= fct * M[prow][cc];
        }
        pivot_of_col[col] = (long)prow;
        ++prow;
    }
    std::vector<std::vector<Rat>> basis;
    for (size_t col = 0; col < ncols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<Rat> v(ncols, Rat(0));
        v[col] = Rat(1);
        for (size_t c2 = 0; c2 < ncols; ++c2)
            if (pivot_of_col[c2] >= 0) v[c2] = -M[(size_t)pivot_of_col[c2]][col];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline bool padic_small(const Padic& d, long bits) {
    return d.indistinct_zero() || d.val >= bits;
}

// ---- criterion bodies ------------------------------------------------------

// criteria 1 and 2: per-class table reproduction plus a randomized oracle
// sweep (200 lifts per data row) checking the conductor exponent of every
// admissible twist and the j-disk membership
inline void check_local_table(Checker& ck, long ell, bool fast,
                              int expected_data_rows) {
    long ma = ell == 2 ? 4 : 9, mb = ell == 2 ? 8 : 3;
    std::map<std::string, std::vector<std::pair<long, long>>> classes_of_row;
    for (long a0 = 0; a0 < ma; ++a0)
        for (long b0 = 0; b0 < mb; ++b0) {
            if (a0 % ell == 0 && b0 % ell == 0) continue;
            std::ostringstream tag;
            tag << "ell=" << ell << " class (" << a0 << "," << b0 << ")";
            FreyLocalRow got = ell == 2 ? classify_2adic(a0, b0) : classify_3adic(a0, b0);
            ExpectedRow want = ell == 2 ? expected_2adic(a0, b0) : expected_3adic(a0, b0);
            ck.expect(got.feasible == want.feasible, tag.str() + ": feasibility");
            if (!want.feasible || !got.feasible) continue;
            ck.expect(got.row == want.row, tag.str() + ": line number");
            ck.expect(got.vN == want.vN, tag.str() + ": conductor exponent");
            ck.expect(sorted(got.d_set) == sorted(want.d_set), tag.str() + ": d-set");
            ck.expect(sorted(got.curves) == sorted(want.curves), tag.str() + ": curves");
            ck.expect(got.disk.has_value() && want.disk.has_value() &&
                          jdisk_eq(*got.disk, *want.disk),
                      tag.str() + ": j-disk");
            classes_of_row[row_key(got)].push_back({a0, b0});
        }
    ck.expect((int)classes_of_row.size() == expected_data_rows,
              "ell=" + std::to_string(ell) + ": number of distinct data rows is " +
                  std::to_string(classes_of_row.size()) + ", expected " +
                  std::to_string(expected_data_rows));
    if (fast || !ck.ok) return;

    std::mt19937_64 rng(20260826u + (unsigned)ell);
    auto sample = [&](long lo, long hi) {
        return (long)(rng() % (unsigned long)(hi - lo + 1)) + lo;
    };
    const long p = 11;
    const int per_row = 200;
    for (auto& [key, classes] : classes_of_row) {
        int done = 0;
        size_t ci = 0;
        FreyLocalRow row = ell == 2 ? classify_2adic(classes[0].first, classes[0].second)
                                    : classify_3adic(classes[0].first, classes[0].second);
        while (done < per_row && ck.ok) {
            auto [a0, b0] = classes[ci % classes.size()];
            ++ci;
            Int a = a0 + ma * Int(sample(-300, 300));
            Int b = b0 + mb * Int(sample(-300, 300));
            if (gcd(a, b) != 1 || a * a + b * b * b == 0) continue;
            FreyLocalRow cls = ell == 2 ? classify_2adic(a, b) : classify_3adic(a, b);
            if (cls.disk->variant == JDiskVariant::InversePower &&
                !force_pth_power_val(a, b, ell, p))
                continue;
            Model e = frey_model(a, b);
            std::ostringstream tag;
            tag << "ell=" << ell << " sweep a=" << a.get_str() << " b=" << b.get_str();
            for (long d : cls.d_set) {
                LocalData ld = tate_algorithm(quadratic_twist(e, d), ell);
                ck.expect(ld.f == cls.vN, tag.str() + ": conductor exponent of twist " +
                                              std::to_string(d));
            }
            ck.expect(cls.disk->contains(e.j(), p), tag.str() + ": j-disk membership");
            ++done;
        }
    }
}

} // namespace acceptance_detail

inline std::vector<CriterionResult> run_acceptance(bool fast) {
    using namespace acceptance_detail;
    namespace chr = std::chrono;
    std::vector<CriterionResult> out;

    auto run = [&](int num, const std::string& name,
                   const std::function<void(Checker&)>& body) {
        CriterionResult r;
        r.number = num;
        r.name = name;
        auto t0 = chr::steady_clock::now();
        Checker ck;
        try {
            body(ck);
            r.passed = ck.ok;
            r.detail = ck.ok ? "" : ck.first;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = chr::duration<double>(chr::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    };

    // 1 & 2: local classification tables with oracle sweeps
    run(1, "2-adic classification table", [&](Checker& ck) {
        check_local_table(ck, 2, fast, 14);
    });
    run(2, "3-adic classification table", [&](Checker& ck) {
        check_local_table(ck, 3, fast, 12);
    });

    // 3: the (row at 2, row at 3) -> curve matrix, all 16 cells
    run(3, "curve-matching matrix", [&](Checker& ck) {
        static const char* tab[4][4] = {
            {"", "", "", "54a1"},
            {"", "288a1", "864b1", "864a1"},
            {"96a1", "", "864c1", ""},
            {"", "", "27a1", ""},
        };
        const std::vector<std::vector<int>> rows2 = {{1}, {2, 6}, {3, 5}, {4}};
        const std::vector<std::vector<int>> rows3 = {{1}, {2, 6}, {3, 5}, {4, 7}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int i2 : rows2[i])
                    for (int i3 : rows3[j]) {
                        std::ostringstream tag;
                        tag << "cell (" << i2 << "," << i3 << ")";
                        ck.expect(match_curve(i2, i3) == tab[i][j], tag.str());
                    }
        bool threw = false;
        try { match_curve(8, 1); } catch (const std::domain_error&) { threw = true; }
        ck.expect(threw, "out-of-range row index must be rejected");
    });

    // 4: twist plan table, both the static residue rows and the re-derivation
    run(4, "twist plan table", [&](Checker& ck) {
        auto ent = [](const std::string& label, const char* s) {
            TwistPlanEntry e{label, {}, {}};
            for (const char* c = s; *c; ++c)
                e.signs.insert(*c == '+' ? TwistSign::Plus : TwistSign::Minus);
            return e;
        };
        std::map<long, std::vector<TwistPlanEntry>> expected = {
            {73, {ent("54a1", "+"), ent("96a1", "+"), ent("864a1", "+"),
                  ent("864b1", "+"), ent("864c1", "+")}},
            {29, {ent("27a1", "+"), ent("54a1", "-"), ent("96a1", "+"),
                  ent("864a1", "+-"), ent("864b1", "+-"), ent("864c1", "+-")}},
            {31, {ent("54a1", "-"), ent("96a1", "+"), ent("288a1", "+"),
                  ent("864a1", "+"), ent("864b1", "+"), ent("864c1", "+")}},
            {11, {ent("27a1", "+"), ent("54a1", "+"), ent("96a1", "+"),
                  ent("288a1", "+-"), ent("864a1", "+"), ent("864b1", "+"),
                  ent("864c1", "+")}},
            {13, {ent("96a1", "-"), ent("864a1", "+"), ent("864b1", "+"),
                  ent("864c1", "+")}},
            {17, {ent("27a1", "+"), ent("54a1", "+"), ent("864a1", "+"),
                  ent("864b1", "+"), ent("864c1", "+")}},
            {19, {ent("54a1", "+"), ent("96a1", "-"), ent("288a1", "+-"),
                  ent("864a1", "+-"), ent("864b1", "+-"), ent("864c1", "+-")}},
            {23, {ent("27a1", "+"), ent("288a1", "+"), ent("864a1", "+"),
                  ent("864b1", "+"), ent("864c1", "+")}},
        };
        for (auto& [p, want] : expected) {
            auto got = twist_table(p);
            ck.expect(got == want, "static table row p = " + std::to_string(p) +
                                       " (residue " + std::to_string(p % 24) + ")");
        }
        for (long p = 11; p < 200; ++p) {
            if (mpz_probab_prime_p(Int(p).get_mpz_t(), 30) == 0) continue;
            auto a = twist_table(p), b = derive_twist_table(p);
            auto key = [](std::vector<TwistPlanEntry> v) {
                std::sort(v.begin(), v.end(),
                          [](const TwistPlanEntry& x, const TwistPlanEntry& y) {
                              return x.label < y.label;
                          });
                std::string s;
                for (auto& e : v) {
                    s += e.label + ":";
                    for (auto sg : e.signs) s += sg == TwistSign::Plus ? '+' : '-';
                    s += ";";
                }
                return s;
            };
            ck.expect(key(a) == key(b),
                      "derived table differs at p = " + std::to_string(p));
        }
    });

    // 5: normalizer / centralizer structure of the two exceptional images
    run(5, "normalizer lemmas", [&](Checker& ck) {
        for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
            std::string sp = "p = " + std::to_string(p);
            {
                auto emb = embed_h8(p);
                ck.expect(emb.group.elems.size() == 8, sp + ": quaternion order");
                auto nd = normalizer_centralizer(emb.group);
                ck.expect(nd.centralizer.size() * 24 == nd.normalizer.size(),
                          sp + ": quaternion N/C index");
                ck.expect(nd.centralizer.size() == (size_t)(p - 1),
                          sp + ": quaternion centralizer is the scalars");
                DetPattern want = legendre(2, p) == 1 ? DetPattern::AllSquare
                                                      : DetPattern::IndexTwoSquare;
                ck.expect(det_pattern(nd.normalizer, p) == want,
                          sp + ": quaternion determinant pattern");
            }
            {
                auto emb = embed_dic12(p);
                ck.expect(emb.group.elems.size() == 12, sp + ": dicyclic order");
                auto nd = normalizer_centralizer(emb.group);
                ck.expect(nd.centralizer.size() * 12 == nd.normalizer.size(),
                          sp + ": dicyclic N/C index");
                ck.expect(nd.centralizer.size() == (size_t)(p - 1),
                          sp + ": dicyclic centralizer is the scalars");
                DetPattern want = legendre(3, p) == 1 ? DetPattern::AllSquare
                                                      : DetPattern::IndexTwoSquare;
                ck.expect(det_pattern(nd.normalizer, p) == want,
                          sp + ": dicyclic determinant pattern");
            }
        }
    });

    // 6: Tate-module equivariance and the multiplicative symplectic criterion
    run(6, "Tate-module suite", [&](Checker& ck) {
        for (long ell : {2L, 3L})
            for (long p : {3L, 5L, 7L, 11L, 13L})
                for (long e1 = 1; e1 <= 12; ++e1)
                    for (long e2 = 1; e2 <= 12; ++e2) {
                        if (e1 % p == 0 || e2 % p == 0) continue;
                        std::ostringstream tag;
                        tag << "ell=" << ell << " p=" << p << " (e1,e2)=(" << e1
                            << "," << e2 << ")";
                        auto tm = tate_module_matrix(p, e1, e2);
                        ck.expect((e2 - tm.n * e1) % p == 0 && tm.n >= 1 && tm.n < p,
                                  tag.str() + ": matrix normalization");
                        ck.expect(tate_equivariance_check(p, tm.n),
                                  tag.str() + ": Galois equivariance");
                        ck.expect(symplectic_type_of_det(tm.matrix.det(), p) ==
                                      ko_criterion(e1, e2, p),
                                  tag.str() + ": symplectic type");
                    }
    });

    // 7: formal logarithm of the level-11 curve
    run(7, "formal logarithm coefficients", [&](Checker& ck) {
        SeriesQ lg = formal_log(x011_data().model, 9);
        const std::vector<Rat> want = {Rat(1),      Rat(0),  Rat(-1, 3), Rat(1, 2),
                                       Rat(-19, 5), Rat(-1), Rat(5, 7),  Rat(-27, 2)};
        for (size_t i = 0; i < want.size(); ++i)
            ck.expect(lg.coeff(i + 1) == want[i],
                      "coefficient of degree " + std::to_string(i + 1));
    });

    // 8: Newton polygon of the two-division polynomial at 2
    run(8, "two-division Newton polygon", [&](Checker& ck) {
        PolyQ psi = x011_data().model.two_division_poly();
        auto np = newton_polygon(to_padic(psi, 2, 60));
        ck.expect(np.segments.size() == 1, "single segment");
        if (np.segments.size() == 1) {
            ck.expect(np.segments[0].slope == Rat(2, 3), "slope 2/3");
            ck.expect(np.segments[0].length == 3, "length 3");
        }
    });

    // 9: rational points of bounded height on the two nonsplit-Cartan twists
    run(9, "nonsplit-Cartan twist search", [&](Checker& ck) {
        std::set<Rat> xs;
        bool inf = false;
        for (long d : {-1L, -3L}) {
            auto res = xns_twist_point_search(d, 1000);
            inf = inf || res.infinity;
            for (auto& x : res.xs) xs.insert(x);
        }
        ck.expect(inf, "point at infinity found");
        ck.expect(xs == std::set<Rat>{Rat(5, 4), Rat(4), Rat(-2)},
                  "x-coordinate union at height 1000");
    });

    // 10: the display of known identities
    run(10, "known identities", [&](Checker& ck) {
        auto reports = verify_known_solutions();
        ck.expect(reports.size() == 8, "eight identities");
        for (auto& r : reports) {
            std::string tag = "identity a=" + r.id.a.get_str() + " b=" + r.id.b.get_str();
            ck.expect(r.holds, tag + ": equation");
            ck.expect(r.primitive, tag + ": primitivity");
        }
    });

    // 11: exhaustive small searches
    run(11, "exhaustive searches", [&](Checker& ck) {
        auto nontrivial = [](const std::vector<SolutionTriple>& v) {
            std::set<std::string> s;
            for (auto& t : v) {
                if (t.kind == SolutionKind::Trivial) continue;
                s.insert(t.a.get_str() + "," + t.b.get_str() + "," + t.c.get_str());
            }
            return s;
        };
        auto s11 = search_solutions(11, ipow(10, 4));
        for (auto& t : s11)
            ck.expect(t.a * t.a + t.b * t.b * t.b == ipow(t.c, 11) &&
                          gcd(gcd(t.a, t.b), t.c) == 1,
                      "p=11: returned triple must solve the equation primitively");
        ck.expect(nontrivial(s11) == std::set<std::string>{"3,-2,1", "-3,-2,1"},
                  "p=11, bound 10^4: only the Catalan pair beyond the trivial set");
        auto s7 = search_solutions(7, 100);
        ck.expect(nontrivial(s7) == std::set<std::string>{"3,-2,1", "-3,-2,1",
                                                          "71,-17,2", "-71,-17,2"},
                  "p=7, bound 100: Catalan pair plus (+-71, -17, 2)");
    });

    // 12: local solubility of the level-13 twisted sextics, with an
    // independent finite-modulus oracle
    run(12, "local solubility suite", [&](Checker& ck) {
        const auto& table = x13_twist_table();
        ck.expect(table.size() == 8, "eight twisted sextics");
        for (const X13Twist& row : table) {
            std::string tag = "sextic " + std::to_string(row.number);
            for (long ell : {2L, 3L, 13L})
                ck.expect(local_solubility(row.f, ell),
                          tag + " soluble at " + std::to_string(ell));
            Rat res = resultant(row.f, row.f.derivative());
            ck.expect(res != 0, tag + " squarefree");
            // capped scan depth: a cap can only err by accepting, and both
            // sides accept on every table row
            auto depth = [&](long ell, long cap) {
                return std::min(valuation(res, ell) + 3, cap);
            };
            ck.expect(brute_force_soluble(row.f, 2, depth(2, 12)), tag + " scan at 2");
            ck.expect(brute_force_soluble(row.f, 3, depth(3, 8)), tag + " scan at 3");
            ck.expect(brute_force_soluble(row.f, 13, depth(13, 4)), tag + " scan at 13");
        }
        // randomized oracle equivalence at full depth v(disc) + 3
        std::mt19937 rng(13571113u);
        int kept = 0;
        while (kept < 100 && ck.ok) {
            std::vector<Rat> cs(7);
            for (auto& c : cs) c = Rat((long)(rng() % 41) - 20);
            PolyQ f(cs);
            if (f.degree() < 2) continue;
            Rat res = resultant(f, f.derivative());
            if (res == 0) continue;
            bool depth_ok = true;
            for (long ell : {2L, 3L, 13L}) {
                double modulus = std::pow((double)ell, (double)(valuation(res, ell) + 3));
                if (modulus > 2e6) { depth_ok = false; break; }
            }
            if (!depth_ok) continue;
            ++kept;
            for (long ell : {2L, 3L, 13L}) {
                long k = valuation(res, ell) + 3;
                ck.expect(local_solubility(f, ell) == brute_force_soluble(f, ell, k),
                          "random sextic " + std::to_string(kept) +
                              " disagrees with the scan at " + std::to_string(ell));
            }
        }
    });

    // 13: special values of the level-13 j-map
    run(13, "level-13 j-map special values", [&](Checker& ck) {
        auto J = [](const Rat& v) { return x013_jmap(std::optional<Rat>(v)); };
        ck.expect(!x013_jmap(std::nullopt), "v = infinity maps to the cusp");
        ck.expect(!J(Rat(1)), "v = 1 maps to the cusp");
        auto eq = [&](const Rat& v, const Rat& want, const std::string& tag) {
            auto j = J(v);
            ck.expect(j && *j == want, tag);
        };
        eq(Rat(0), ratpow(Rat(12), 3) / Rat(3), "v = 0");
        eq(Rat(-4), -ratpow(Rat(12), 3) * ratpow(Rat(13), 4) / Rat(5), "v = -4");
        eq(Rat(-12), -ratpow(Rat(12), 3) * ratpow(Rat(4079), 3) / Rat(3), "v = -12");
        eq(Rat(-8, 5),
           -ratpow(Rat(12), 3) * ratpow(Rat(17 * 29), 3) * Rat(13) / ratpow(Rat(5), 13),
           "v = -8/5");
    });

    // 14: the good-j predicate
    run(14, "good j-invariants", [&](Checker& ck) {
        ck.expect(!good_j(Rat(21952, 9), 11), "21952/9 rejected");
        ck.expect(!good_j(Rat(1536), 11), "1536 rejected");
        auto w1 = good_j(Rat(-13824), 11);
        ck.expect(w1 && (*w1)[0] == 3 && (*w1)[1] == -2 && abs((*w1)[2]) == 1,
                  "-13824 accepted with witness (3, -2, 1)");
        auto w2 = good_j(Rat(0), 11);
        ck.expect(w2 && (*w2)[0] == 1 && (*w2)[1] == 0 && (*w2)[2] == 1,
                  "0 accepted with witness (1, 0, 1)");
    });

    // 15: the plane relation F(x, j) and the branch solver
    run(15, "plane relation and branch solver", [&](Checker& ck) {
        const JMapData& D = x011_data(); // construction re-verifies the identities
        for (const Point& p : x011_rational_points()) {
            if (p.inf) continue;
            auto j = x011_j(p);
            if (j)
                ck.expect(D.F(p.x, *j) == 0,
                          "F vanishes at the rational point x = " + rat_str(p.x));
        }

        // synthetic ramified case: y^2 = x over Q_3, branches y = +-t after x = t^2
        {
            BiPolyQ F{{PolyQ({Rat(0), Rat(-1)}), PolyQ(), PolyQ::constant(Rat(1))}};
            BranchReport r = branch_series(F, 3, 2, Rat(0), Rat(0), 12, 240);
            ck.expect(r.hypotheses_ok, "synthetic case: hypotheses");
            ck.expect(r.series.size() == 2, "synthetic case: two branches");
            ck.expect(r.slope_law, "synthetic case: slope law");
            ck.expect(r.residual_valuation > 50, "synthetic case: residual below 2^-50");
        }

        // cusp branch: interpolate the bidegree-(12, 3) plane relation between
        // the uniformizer t and u = 1/j from the formal expansion, then solve
        // the branch through the cusp and compare against the oracle series
        const size_t N = 96, K = 64, DT = 12, DU = 3, NC = (DT + 1) * (DU + 1);
        FormalExpansion fe = formal_expansion(D.model, N);
        LaurentQ num = eval_poly_laurent(D.a_poly.c, fe.x, N) +
                       eval_poly_laurent(D.b_poly.c, fe.x, N) * fe.y;
        LaurentQ den = LaurentQ(0, SeriesQ::constant(Rat(1), N));
        LaurentQ x16 = fe.x - LaurentQ(0, SeriesQ::constant(Rat(16), N));
        for (int i = 0; i < 11; ++i) den = den * x16;
        LaurentQ j = num * den.inverse();
        ck.expect(j.off == -1, "cusp: j has a simple pole");
        LaurentQ u = j.inverse();
        ck.expect(u.off == 1, "cusp: u vanishes to first order");
        SeriesQ us = SeriesQ::zero(K + 14);
        for (size_t i = 0; i < us.order(); ++i) us.c[i] = u.coeff((long)i);
        std::vector<SeriesQ> upow = {SeriesQ::constant(Rat(1), K + 14)};
        for (size_t n = 1; n <= DU; ++n) upow.push_back(upow.back() * us);
        std::vector<std::vector<Rat>> M(K, std::vector<Rat>(NC, Rat(0)));
        for (size_t m = 0; m <= DT; ++m)
            for (size_t n = 0; n <= DU; ++n)
                for (size_t k = m; k < K; ++k)
                    M[k][m * (DU + 1) + n] = upow[n].coeff(k - m);
        auto kb = kernel_basis(std::move(M), NC);
        ck.expect(kb.size() == 1, "cusp: the plane relation is unique");
        if (kb.size() != 1) return;
        BiPolyQ Phi;
        Phi.cy.resize(DU + 1);
        for (size_t n = 0; n <= DU; ++n) {
            std::vector<Rat> cv(DT + 1, Rat(0));
            for (size_t m = 0; m <= DT; ++m) cv[m] = kb[0][m * (DU + 1) + n];
            Phi.cy[n] = PolyQ(std::move(cv));
        }
        BranchReport r = branch_series(Phi, 2, 1, Rat(0), Rat(50), 24, 1600);
        ck.expect(r.hypotheses_ok, "cusp: hypotheses at depth 50");
        ck.expect(r.slope_law, "cusp: slope law");
        ck.expect(r.series.size() == 1, "cusp: one branch");
        if (r.series.size() == 1)
            for (size_t i = 0; i < 24; ++i)
                ck.expect(padic_small(r.series[0][i] -
                                          Padic::from_rat(us.coeff(i), 2, 1600),
                                      100),
                          "cusp: branch coefficient " + std::to_string(i));
        ck.expect(r.residual_valuation > 50, "cusp: residual below 2^-50");
    });

    return out;
}

} // namespace gfe
