#include <catch2/catch_amalgamated.hpp>

#include <gfe/padic.hpp>
#include <gfe/poly.hpp>
#include <gfe/series.hpp>

using namespace gfe;

TEST_CASE("integer valuation and roots") {
    CHECK(valuation(Int(48), 2) == 4);
    CHECK(valuation(Rat(9, 8), 2) == -3);
    CHECK(valuation(Rat(9, 8), 3) == 2);
    CHECK(exact_root(Int(128), 7).value() == 2);
    CHECK(exact_root(Int(-128), 7).value() == -2);
    CHECK(!exact_root(Int(100), 3));
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(2, 11) == -1);
}

TEST_CASE("padic arithmetic round trips") {
    auto x = Padic::from_rat(Rat(7, 4), 2, 40);
    CHECK(x.val == -2);
    auto y = Padic::from_rat(Rat(-7, 4), 2, 40);
    CHECK((x + y).indistinct_zero());
    auto z = x * Padic::from_rat(Rat(4, 7), 2, 40);
    CHECK(z.val == 0);
    CHECK((z - Padic::from_int(1, 2, 30)).indistinct_zero());

    // cancellation loses absolute precision, not correctness
    auto a = Padic::from_int(Int(1) + ipow(2, 20), 2, 40);
    auto b = Padic::from_int(1, 2, 40);
    auto d = a - b;
    CHECK(d.val == 20);
}

TEST_CASE("square classes in Q_2 and Q_3") {
    CHECK(padic_is_square(Padic::from_int(17, 2, 30)));     // 1 mod 8
    CHECK(!padic_is_square(Padic::from_int(5, 2, 30)));     // 5 mod 8
    CHECK(!padic_is_square(Padic::from_int(2, 2, 30)));     // odd valuation
    CHECK(padic_is_square(Padic::from_int(4, 2, 30)));
    CHECK(padic_is_square(Padic::from_int(7, 3, 30)));      // 7 = 1 mod 3
    CHECK(!padic_is_square(Padic::from_int(5, 3, 30)));
    auto r = padic_sqrt(Padic::from_int(17, 2, 40));
    REQUIRE(r);
    CHECK(((*r) * (*r) - Padic::from_int(17, 2, 40)).indistinct_zero());
    auto s = padic_sqrt(Padic::from_rat(Rat(49, 9), 3, 40));
    REQUIRE(s);
    CHECK(((*s) * (*s) - Padic::from_rat(Rat(49, 9), 3, 40)).indistinct_zero());
}

TEST_CASE("newton polygon lower hull") {
    // f = 8 + 2x + x^2: points (0,3),(1,1),(2,0): slopes -2, -1 -> roots have v 2 and 1
    PadicPoly f{Padic::from_int(8, 2, 30), Padic::from_int(2, 2, 30), Padic::from_int(1, 2, 30)};
    auto np = newton_polygon(f);
    REQUIRE(np.segments.size() == 2);
    CHECK(np.segments[0].slope == Rat(-2));
    CHECK(np.segments[0].length == 1);
    CHECK(np.segments[1].slope == Rat(-1));
    CHECK(np.segments[1].length == 1);

    // collinear points merge into one segment
    auto np2 = newton_polygon({{0, 2}, {1, 1}, {2, 0}});
    REQUIRE(np2.segments.size() == 1);
    CHECK(np2.segments[0].slope == Rat(-1));
    CHECK(np2.segments[0].length == 2);
}

TEST_CASE("gauss valuation") {
    // w_rho(f) = min(v(a_i) + i rho)
    PadicPoly f{Padic::from_int(8, 2, 30), Padic::from_int(2, 2, 30), Padic::from_int(1, 2, 30)};
    CHECK(gauss_valuation(f, Rat(0)) == Rat(0));
    CHECK(gauss_valuation(f, Rat(2)) == Rat(3));
    CHECK(gauss_valuation(f, Rat(3, 2)) == Rat(5, 2));
}

TEST_CASE("hensel lifting") {
    // x^2 - 17 over Q_2, x0 = 1: v(f(1)) = 4 > 2 = 2 v(f'(1))
    PadicPoly f{Padic::from_int(-17, 2, 50), Padic::zero(), Padic::from_int(1, 2, 50)};
    auto r = hensel_lift(f, Padic::from_int(1, 2, 50));
    CHECK(padic_poly_eval(f, r).indistinct_zero());
    // failing criterion throws
    CHECK_THROWS(hensel_lift(f, Padic::from_int(2, 2, 50)));
}

TEST_CASE("roots of integer polynomials in Z_ell") {
    // (x-3)(x-10)(x^2+1) over Z_5: x^2+1 contributes two roots as well (-1 is a QR mod 5)
    PolyQ f = PolyQ({Rat(-3), Rat(1)}) * PolyQ({Rat(-10), Rat(1)}) * PolyQ({Rat(1), Rat(0), Rat(1)});
    auto roots = padic_integer_roots(int_coeffs(f), 5, 30);
    CHECK(roots.size() == 4);
    for (auto& r : roots) {
        PadicPoly fp = to_padic(f, 5, 30);
        CHECK(padic_poly_eval(fp, r).indistinct_zero());
    }
    // no roots of x^2 - 2 in Z_5
    CHECK(padic_integer_roots({Int(-2), Int(0), Int(1)}, 5, 30).empty());
}

TEST_CASE("power series toolkit") {
    size_t n = 12;
    // geometric series inverse
    SeriesQ one_minus_t = SeriesQ::constant(Rat(1), n);
    one_minus_t.c[1] = -1;
    auto inv = one_minus_t.inverse();
    for (size_t i = 0; i < n; ++i) CHECK(inv.c[i] == 1);
    // reversion: f = t + t^2 -> g with f(g(u)) = u
    SeriesQ f = SeriesQ::t(n);
    f.c[2] = 1;
    auto g = f.revert();
    auto chk = f.compose(g);
    CHECK(chk.c[1] == 1);
    for (size_t i = 2; i < n; ++i) CHECK(chk.c[i] == 0);
    // integral/derivative inverse to each other
    CHECK(f.integral().derivative().truncated(n).c == f.truncated(n).c);
}
