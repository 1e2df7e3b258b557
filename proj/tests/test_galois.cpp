#include <catch2/catch_amalgamated.hpp>

#include <gfe/galois.hpp>

using namespace gfe;

namespace {
long primitive_root(long p) {
    for (long g = 2; g < p; ++g) {
        std::set<long> pow;
        long x = 1;
        for (long i = 0; i + 1 < p; ++i) { x = (x * g) % p; pow.insert(x); }
        if ((long)pow.size() == p - 1) return g;
    }
    return 1;
}

bool same_group(const Subgroup& a, const std::vector<Mat2>& b) {
    if (a.elems.size() != b.size()) return false;
    for (auto& m : b)
        if (!a.contains(m)) return false;
    return true;
}
} // namespace

TEST_CASE("quaternion embedding") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 31L}) {
        Embedding e = embed_h8(p);
        INFO("p = " << p);
        CHECK(e.group.elems.size() == 8);
        // H8 inside SL_2
        for (auto& m : e.group.elems) CHECK(m.det() == 1);
        // g1^2 = g2^2 = -1, and the group is non-abelian
        Mat2 minus1 = Mat2::scalar(p, -1);
        CHECK(e.gens[0] * e.gens[0] == minus1);
        CHECK(e.gens[1] * e.gens[1] == minus1);
        CHECK(!(e.gens[0] * e.gens[1] == e.gens[1] * e.gens[0]));
        CHECK((e.alpha * e.alpha + e.beta * e.beta + 1) % p == 0);
    }
}

TEST_CASE("dicyclic embedding") {
    for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 31L}) {
        Embedding e = embed_dic12(p);
        INFO("p = " << p);
        CHECK(e.group.elems.size() == 12);
        for (auto& m : e.group.elems) CHECK(m.det() == 1);
        CHECK(e.beta != 0);
        CHECK((e.beta * e.beta + e.alpha * e.alpha - e.alpha + 1) % p == 0);
        // contains a unique element of order 2 (dicyclic, not dihedral)
        int order2 = 0;
        for (auto& m : e.group.elems)
            if (!(m == Mat2::id(p)) && m * m == Mat2::id(p)) ++order2;
        CHECK(order2 == 1);
    }
}

TEST_CASE("normalizer of H8: structure and determinants") {
    for (long p : {5L, 7L, 11L, 13L}) {
        INFO("p = " << p);
        Embedding e = embed_h8(p);
        auto nd = normalizer_centralizer(e.group);
        // N/C(G) iso S4 and C = scalars
        CHECK(nd.normalizer.size() == 24 * (size_t)(p - 1));
        CHECK(nd.centralizer.size() == (size_t)(p - 1));
        for (auto& m : nd.centralizer) CHECK((m.b == 0 && m.c == 0 && m.a == m.d));
        // generated by H, the two auxiliary matrices of determinant 2, and scalars
        long a = e.alpha, b = e.beta;
        Mat2 n1 = Mat2::of(p, 1, -1, 1, 1);
        Mat2 n2 = Mat2::of(p, a, b - 1, b + 1, -a);
        CHECK(n1.det() == 2 % p);
        CHECK(n2.det() == 2 % p);
        Subgroup gen = group_closure(
            p, {e.gens[0], e.gens[1], n1, n2, Mat2::scalar(p, primitive_root(p))});
        CHECK(same_group(gen, nd.normalizer));
        DetPattern dp = det_pattern(nd.normalizer, p);
        if (legendre(2, p) == 1) CHECK(dp == DetPattern::AllSquare);
        else CHECK(dp == DetPattern::IndexTwoSquare);
    }
}

TEST_CASE("normalizer of Dic12: structure and determinants") {
    for (long p : {5L, 7L, 11L, 13L}) {
        INFO("p = " << p);
        Embedding e = embed_dic12(p);
        auto nd = normalizer_centralizer(e.group);
        // N/C(G) iso D6 (order 12) and C = scalars
        CHECK(nd.normalizer.size() == 12 * (size_t)(p - 1));
        CHECK(nd.centralizer.size() == (size_t)(p - 1));
        long a = e.alpha, b = e.beta;
        Mat2 M = Mat2::of(p, 2 * a - 1, 2 * b, 2 * b, 1 - 2 * a);
        CHECK(M.det() == 3 % p);
        Subgroup gen = group_closure(
            p, {e.gens[0], e.gens[1], M, Mat2::scalar(p, primitive_root(p))});
        CHECK(same_group(gen, nd.normalizer));
        DetPattern dp = det_pattern(nd.normalizer, p);
        if (legendre(3, p) == 1) CHECK(dp == DetPattern::AllSquare);
        else CHECK(dp == DetPattern::IndexTwoSquare);
    }
}

TEST_CASE("symplectic classification helpers") {
    CHECK(symplectic_type_of_det(1, 7) == SymplecticType::Symplectic);
    CHECK(symplectic_type_of_det(3, 7) == SymplecticType::AntiSymplectic);
    // KO criterion: v(D) v(D') square mod p
    CHECK(ko_criterion(-6, 3, 11) == symplectic_type_of_det(-18, 11));
    CHECK(ko_criterion(-6, 3, 11) == SymplecticType::Symplectic);  // -18 = 4 mod 11 = 2^2
    CHECK(ko_criterion(-3, 2, 13) == symplectic_type_of_det(-6, 13));
    // isogeny sign: (n/p)
    CHECK(isogeny_sign(2, 7) == SymplecticType::Symplectic);
    CHECK(isogeny_sign(2, 11) == SymplecticType::AntiSymplectic);
    CHECK(isogeny_sign(3, 11) == SymplecticType::Symplectic);
}

TEST_CASE("tate module matrix and equivariance") {
    // valuations e1 = 3, e2 = 5 at p = 11: n = 9, m = (5 - 27)/11 = -2
    TateModuleMap t = tate_module_matrix(11, 3, 5);
    CHECK(t.n == 9);
    CHECK(t.m == -2);
    CHECK(t.matrix == Mat2::of(11, 9, 0, 0, 1));
    CHECK(5 == t.n * 3 + 11 * t.m);
    CHECK(tate_equivariance_check(11, t.n));
    // a corrupted matrix breaks equivariance
    CHECK(!tate_equivariance_check(11, t.n, 5));
    for (long p : {3L, 5L, 7L, 11L, 13L})
        for (long n = 1; n < p; ++n) {
            CHECK(tate_equivariance_check(p, n));
            CHECK(!tate_equivariance_check(p, n, n == 1 ? 2 : 1));
        }
}
