#pragma once

#include "rational.hpp"
#include "padic.hpp"

#include <vector>

namespace gfe {

// dense univariate polynomial over Q, c[i] = coefficient of x^i
struct PolyQ {
    std::vector<Rat> c;

    PolyQ() = default;
    explicit PolyQ(std::vector<Rat> cc) : c(std::move(cc)) { trim(); }
    static PolyQ constant(const Rat& a) { return PolyQ({a}); }
    static PolyQ x() { return PolyQ({Rat(0), Rat(1)}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    long degree() const { return (long)c.size() - 1; } // -1 for the zero polynomial
    bool is_zero() const { return c.empty(); }
    Rat coeff(size_t i) const { return i < c.size() ? c[i] : Rat(0); }
    Rat lead() const { return c.empty() ? Rat(0) : c.back(); }

    Rat operator()(const Rat& x) const {
        Rat r(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return PolyQ(std::move(r));
    }
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return PolyQ(std::move(r));
    }
    friend PolyQ operator-(const PolyQ& a) {
        std::vector<Rat> r = a.c;
        for (auto& x : r) x = -x;
        return PolyQ(std::move(r));
    }
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
        if (a.is_zero() || b.is_zero()) return PolyQ();
        std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return PolyQ(std::move(r));
    }
    friend PolyQ operator*(const Rat& s, const PolyQ& a) {
        std::vector<Rat> r = a.c;
        for (auto& x : r) x *= s;
        return PolyQ(std::move(r));
    }
    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c == b.c; }

    PolyQ pow(unsigned e) const {
        PolyQ r = constant(Rat(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    PolyQ derivative() const {
        std::vector<Rat> r;
        for (size_t i = 1; i < c.size(); ++i) r.push_back(Rat((long)i) * c[i]);
        return PolyQ(std::move(r));
    }

    // composition: this(g)
    PolyQ compose(const PolyQ& g) const {
        PolyQ r;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * g + constant(*it);
        return r;
    }
};

// division with remainder (divisor nonzero)
inline std::pair<PolyQ, PolyQ> poly_divmod(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw std::domain_error("poly division by zero");
    PolyQ r = a, q;
    q.c.assign(a.c.size(), Rat(0));
    Rat bl = b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long k = r.degree() - b.degree();
        Rat f = r.lead() / bl;
        q.c[k] += f;
        for (long i = 0; i <= b.degree(); ++i) r.c[k + i] -= f * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

inline PolyQ poly_gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = (Rat(1) / a.lead()) * a; // monic normalization
    return a;
}

inline PadicPoly to_padic(const PolyQ& f, long ell, int prec) {
    PadicPoly r;
    for (auto& a : f.c) r.push_back(Padic::from_rat(a, ell, prec));
    return r;
}

inline std::vector<Int> int_coeffs(const PolyQ& f) {
    std::vector<Int> r;
    for (auto& a : f.c) {
        if (a.get_den() != 1) throw std::domain_error("non-integer coefficient");
        r.push_back(a.get_num());
    }
    return r;
}

// bivariate polynomial over Q: coefficient of y^j is a PolyQ in x
struct BiPolyQ {
    std::vector<PolyQ> cy; // cy[j](x) * y^j

    PolyQ coeff_y(size_t j) const { return j < cy.size() ? cy[j] : PolyQ(); }

    // substitute y = g(x), leaving a polynomial in x
    PolyQ eval_y(const PolyQ& g) const {
        PolyQ r;
        for (auto it = cy.rbegin(); it != cy.rend(); ++it) r = r * g + *it;
        return r;
    }

    // full evaluation at rationals
    Rat operator()(const Rat& x, const Rat& y) const {
        Rat r(0);
        for (auto it = cy.rbegin(); it != cy.rend(); ++it) r = r * y + (*it)(x);
        return r;
    }
};

} // namespace gfe
