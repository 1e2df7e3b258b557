#pragma once

#include "rational.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace gfe {

// 2x2 matrix over F_p, entries reduced to [0, p)
struct Mat2 {
    long p = 0;
    long a = 0, b = 0, c = 0, d = 0;

    static Mat2 id(long p) { return {p, 1, 0, 0, 1}; }
    static Mat2 scalar(long p, long s) { s = ((s % p) + p) % p; return {p, s, 0, 0, s}; }
    static Mat2 of(long p, long a, long b, long c, long d) {
        auto r = [p](long x) { return ((x % p) + p) % p; };
        return {p, r(a), r(b), r(c), r(d)};
    }

    long det() const { return ((a * d - b * c) % p + p) % p; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        long p = x.p;
        return {p, (x.a * y.a + x.b * y.c) % p, (x.a * y.b + x.b * y.d) % p,
                (x.c * y.a + x.d * y.c) % p, (x.c * y.b + x.d * y.d) % p};
    }

    Mat2 inv() const {
        long dt = det();
        if (dt == 0) throw std::domain_error("Mat2: singular");
        long di = invmod(Int(dt), Int(p)).get_si();
        return Mat2::of(p, d * di, -b * di, -c * di, a * di);
    }

    long encode() const { return ((a * p + b) * p + c) * p + d; }
    friend bool operator==(const Mat2& x, const Mat2& y) { return x.encode() == y.encode(); }
    friend bool operator<(const Mat2& x, const Mat2& y) { return x.encode() < y.encode(); }
};

// subgroup given by an explicit element list
struct Subgroup {
    long p;
    std::vector<Mat2> elems;
    std::set<long> codes;
    bool contains(const Mat2& m) const { return codes.count(m.encode()) > 0; }
};

inline Subgroup group_closure(long p, std::vector<Mat2> gens) {
    Subgroup g{p, {}, {}};
    std::vector<Mat2> frontier{Mat2::id(p)};
    g.elems.push_back(Mat2::id(p));
    g.codes.insert(Mat2::id(p).encode());
    while (!frontier.empty()) {
        std::vector<Mat2> next;
        for (auto& x : frontier)
            for (auto& s : gens) {
                Mat2 y = x * s;
                if (g.codes.insert(y.encode()).second) {
                    g.elems.push_back(y);
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    return g;
}

/**
 * Quaternion subgroup of GL_2(F_p): generated by [[0,-1],[1,0]] and
 * [[a,b],[b,-a]] with a^2+b^2 = -1, (a,b) lexicographically least such that
 * the closure has order exactly 8.
 */
struct Embedding {
    Subgroup group;
    long alpha, beta;
    std::vector<Mat2> gens;
};

inline Embedding embed_h8(long p) {
    Mat2 g1 = Mat2::of(p, 0, -1, 1, 0);
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b) {
            if ((a * a + b * b + 1) % p != 0) continue;
            Mat2 g2 = Mat2::of(p, a, b, b, -a);
            Subgroup g = group_closure(p, {g1, g2});
            if (g.elems.size() == 8) return {g, a, b, {g1, g2}};
        }
    throw std::domain_error("embed_h8: no embedding (p must be an odd prime)");
}

/**
 * Dicyclic subgroup of order 12: generated by [[a,b],[b,1-a]] and [[0,-1],[1,0]]
 * with b^2 = -a^2+a-1, b != 0, (a,b) lexicographically least with closure of order 12.
 */
inline Embedding embed_dic12(long p) {
    Mat2 g2 = Mat2::of(p, 0, -1, 1, 0);
    for (long a = 0; a < p; ++a)
        for (long b = 1; b < p; ++b) {
            if ((b * b + a * a - a + 1) % p != 0) continue;
            Mat2 g1 = Mat2::of(p, a, b, b, 1 - a);
            Subgroup g = group_closure(p, {g1, g2});
            if (g.elems.size() == 12) return {g, a, b, {g1, g2}};
        }
    throw std::domain_error("embed_dic12: no embedding (p >= 5 required)");
}

// brute-force normalizer and centralizer of H in GL_2(F_p); p small
struct NormalizerData {
    std::vector<Mat2> normalizer;
    std::vector<Mat2> centralizer;
};

inline NormalizerData normalizer_centralizer(const Subgroup& h) {
    long p = h.p;
    NormalizerData nd;
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c)
                for (long d = 0; d < p; ++d) {
                    Mat2 g{p, a, b, c, d};
                    if (g.det() == 0) continue;
                    Mat2 gi = g.inv();
                    bool normal_ok = true, cent = true;
                    for (auto& x : h.elems) {
                        Mat2 y = g * x * gi;
                        if (!h.contains(y)) { normal_ok = false; cent = false; break; }
                        if (!(y == x)) cent = false;
                    }
                    if (normal_ok) nd.normalizer.push_back(g);
                    if (cent) nd.centralizer.push_back(g);
                }
    return nd;
}

enum class DetPattern { AllSquare, IndexTwoSquare, Other };

// determinant pattern of a set of matrices: all squares mod p, or squares on
// an index-2 subset, or neither
inline DetPattern det_pattern(const std::vector<Mat2>& elems, long p) {
    size_t sq = 0;
    for (auto& m : elems)
        if (legendre(m.det(), p) == 1) ++sq;
    if (sq == elems.size()) return DetPattern::AllSquare;
    if (2 * sq == elems.size()) return DetPattern::IndexTwoSquare;
    return DetPattern::Other;
}

// ---- symplectic bookkeeping ----

enum class SymplecticType { Symplectic, AntiSymplectic };

// an isomorphism with matrix M is symplectic iff det(M) is a square mod p
inline SymplecticType symplectic_type_of_det(long det, long p) {
    return legendre(((det % p) + p) % p, p) == 1 ? SymplecticType::Symplectic
                                                 : SymplecticType::AntiSymplectic;
}

/**
 * Criterion for curves with potentially multiplicative reduction: the p-torsion
 * isomorphism is symplectic iff v(Delta) * v(Delta') is a square mod p.
 */
inline SymplecticType ko_criterion(long vdelta1, long vdelta2, long p) {
    return symplectic_type_of_det(vdelta1 * vdelta2, p);
}

// sign of an n-isogeny on p-torsion: acts (anti-)symplectically as (n/p) = +-1
inline SymplecticType isogeny_sign(long n, long p) {
    return symplectic_type_of_det(n, p);
}

// ---- Tate modules of Tate curves ----

/**
 * For Tate curves with parameters q_i of valuations e_1, e_2 (p | e_2 - n e_1),
 * the p-torsion isomorphism is represented by diag(n, 1) where
 * n = e_2/e_1 mod p, normalized to 1 <= n < p; m = (e_2 - n e_1)/p.
 */
struct TateModuleMap {
    long n;
    long m;
    Mat2 matrix;
};

inline TateModuleMap tate_module_matrix(long p, long e1, long e2) {
    if (e1 % p == 0) throw std::domain_error("tate_module_matrix: p | e1");
    long n = Int(Int(e2) * invmod(Int(e1), Int(p)) % p).get_si();
    n = ((n % p) + p) % p;
    if (n == 0) throw std::domain_error("tate_module_matrix: p | e2");
    if ((e2 - n * e1) % p != 0) throw std::logic_error("tate_module_matrix: bad congruence");
    long m = (e2 - n * e1) / p;
    return {n, m, Mat2::of(p, n, 0, 0, 1)};
}

/**
 * Galois equivariance of diag(n,1): for every sigma acting on the bases
 * (zeta |-> zeta^r, gamma_1 |-> zeta^s gamma_1, gamma_2 |-> zeta^(ns) gamma_2)
 * the action matrices A1 = [[r,s],[0,1]], A2 = [[r,ns],[0,1]] must satisfy
 * M A1 = A2 M. Checking all (r, s) in F_p^* x F_p.
 */
// n_used lets callers probe a corrupted map matrix diag(n_used, 1) against the
// true action (built from n); equivariance holds iff n_used = n mod p.
inline bool tate_equivariance_check(long p, long n, long n_used = -1) {
    if (n_used < 0) n_used = n;
    Mat2 M = Mat2::of(p, n_used, 0, 0, 1);
    for (long r = 1; r < p; ++r)
        for (long s = 0; s < p; ++s) {
            Mat2 A1 = Mat2::of(p, r, s, 0, 1);
            Mat2 A2 = Mat2::of(p, r, (n * s) % p, 0, 1);
            if (!(M * A1 == A2 * M)) return false;
        }
    return true;
}

} // namespace gfe
