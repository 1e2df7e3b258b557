#pragma once

#include "rational.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace gfe {

// ---------------------------------------------------------------------------
// The list of quadratic twists of the level-p modular cover that survive the
// local sieve, as a function of p mod 24, both as static data and re-derived
// from its proof ingredients (symplectic criteria, CM eliminations).
// ---------------------------------------------------------------------------

enum class TwistSign { Plus, Minus };

struct TwistPlanEntry {
    std::string label;
    std::set<TwistSign> signs;
    std::vector<std::string> provenance;
    bool operator==(const TwistPlanEntry& o) const {
        return label == o.label && signs == o.signs;
    }
};

namespace detail {
inline TwistPlanEntry entry(const std::string& label, const char* s,
                            std::vector<std::string> prov = {}) {
    TwistPlanEntry e{label, {}, std::move(prov)};
    for (const char* c = s; *c; ++c)
        e.signs.insert(*c == '+' ? TwistSign::Plus : TwistSign::Minus);
    return e;
}
} // namespace detail

// static table, keyed on p mod 24; valid for all primes p >= 11
inline std::vector<TwistPlanEntry> twist_table(long p) {
    if (p < 11 || mpz_probab_prime_p(Int(p).get_mpz_t(), 30) == 0)
        throw std::domain_error("twist_table: p must be a prime >= 11");
    using detail::entry;
    switch (p % 24) {
    case 1:
        return {entry("54a1", "+"), entry("96a1", "+"), entry("864a1", "+"),
                entry("864b1", "+"), entry("864c1", "+")};
    case 5:
        return {entry("27a1", "+"),  entry("54a1", "-"),  entry("96a1", "+"),
                entry("864a1", "+-"), entry("864b1", "+-"), entry("864c1", "+-")};
    case 7:
        return {entry("54a1", "-"),  entry("96a1", "+"),  entry("288a1", "+"),
                entry("864a1", "+"), entry("864b1", "+"), entry("864c1", "+")};
    case 11:
        return {entry("27a1", "+"),  entry("54a1", "+"),  entry("96a1", "+"),
                entry("288a1", "+-"), entry("864a1", "+"), entry("864b1", "+"),
                entry("864c1", "+")};
    case 13:
        return {entry("96a1", "-"), entry("864a1", "+"), entry("864b1", "+"),
                entry("864c1", "+")};
    case 17:
        return {entry("27a1", "+"), entry("54a1", "+"), entry("864a1", "+"),
                entry("864b1", "+"), entry("864c1", "+")};
    case 19:
        return {entry("54a1", "+"),  entry("96a1", "-"),  entry("288a1", "+-"),
                entry("864a1", "+-"), entry("864b1", "+-"), entry("864c1", "+-")};
    case 23:
        return {entry("27a1", "+"), entry("288a1", "+"), entry("864a1", "+"),
                entry("864b1", "+"), entry("864c1", "+")};
    }
    throw std::domain_error("twist_table: p not coprime to 24");
}

/**
 * Recompute the table from first principles:
 *  - the forced sign of 54a1 is the square class of -2 mod p (potentially
 *    multiplicative at 2 with discriminant valuations -6 and 3);
 *  - the forced sign of 96a1 is the square class of -6 mod p (potentially
 *    multiplicative at 3 with discriminant valuations -3 and 2);
 *  - when (2/p) = 1 the minus twists of the conductor-2^5 set
 *    {96a1, 288a1, 864a1, 864b1, 864c1} carry no primitive 2-adic points, so
 *    Minus is removed there (and a curve whose forced sign is Minus drops out);
 *  - when (3/p) = 1 the same happens at 3 for the conductor-3^3 set
 *    {27a1, 54a1, 864a1, 864b1, 864c1};
 *  - when (3/p) = -1 the two twists of the 27a1 cover are identified through
 *    the CM 3-isogeny, leaving a single Plus entry;
 *  - 27a1 (CM by Z[sqrt(-3)]) drops out entirely when p splits, p = 1 mod 3,
 *    and 288a1 (CM by Z[i]) when p = 1 mod 4 (split-Cartan elimination; also
 *    valid at p = 13 by a dedicated argument).
 */
inline std::vector<TwistPlanEntry> derive_twist_table(long p) {
    if (p < 11 || mpz_probab_prime_p(Int(p).get_mpz_t(), 30) == 0)
        throw std::domain_error("derive_twist_table: p must be a prime >= 11");
    int q2 = legendre(2, p), q3 = legendre(3, p);
    std::vector<TwistPlanEntry> out;
    auto push = [&](TwistPlanEntry e) { out.push_back(std::move(e)); };

    // 27a1: eliminated when p splits in Z[omega]; otherwise a single Plus
    // (Minus is removed by the 3-adic criterion when (3/p) = 1, and merged
    // into Plus via the CM 3-isogeny when (3/p) = -1)
    if (p % 3 == 2)
        push({"27a1", {TwistSign::Plus},
              {q3 == 1 ? "MainCrit3" : "CMReduction", "IsogenyTwist"}});

    // 54a1: forced sign (-2/p); killed when Minus and (3/p) = 1
    {
        TwistSign s = legendre(-2, p) == 1 ? TwistSign::Plus : TwistSign::Minus;
        if (!(s == TwistSign::Minus && q3 == 1))
            push({"54a1", {s}, {"KO2", "MainCrit3"}});
    }

    // 96a1: forced sign (-6/p); killed when Minus and (2/p) = 1
    {
        TwistSign s = legendre(-6, p) == 1 ? TwistSign::Plus : TwistSign::Minus;
        if (!(s == TwistSign::Minus && q2 == 1))
            push({"96a1", {s}, {"KO3", "MainCrit2"}});
    }

    // 288a1: eliminated when p splits in Z[i]; Minus removed when (2/p) = 1
    if (p % 4 == 3) {
        std::set<TwistSign> s = {TwistSign::Plus};
        if (q2 != 1) s.insert(TwistSign::Minus);
        push({"288a1", s, {q2 == 1 ? "MainCrit2" : "Fine2", "CMReduction"}});
    }

    // the three conductor-864 curves always remain; Minus survives only when
    // both residue symbols are -1
    for (const char* label : {"864a1", "864b1", "864c1"}) {
        std::set<TwistSign> s = {TwistSign::Plus};
        if (q2 != 1 && q3 != 1) s.insert(TwistSign::Minus);
        push({label, s, {"MainCrit2", "MainCrit3"}});
    }
    return out;
}

// ---- signed isomorphism tables at 2 and 3 ----------------------------------

struct SignedIso {
    std::string a, b;
    TwistSign sign;
};

struct SignedIsoTable {
    int side; // 2 or 3
    std::vector<SignedIso> entries;
};

/**
 * The exclusive symplectic/anti-symplectic isomorphism types between the
 * p-torsion modules of the reference curves over Q_2 (side 2) resp. Q_3
 * (side 3).  When the residue symbol (side/p) is +1 every listed isomorphism
 * is symplectic; when it is -1 the signs below apply.
 */
inline SignedIsoTable fine_table(int side, long p) {
    if (side != 2 && side != 3) throw std::domain_error("fine_table: side must be 2 or 3");
    bool nonsplit = legendre(side, p) == -1;
    auto sgn = [&](TwistSign s) { return nonsplit ? s : TwistSign::Plus; };
    if (side == 2)
        return {2,
                {{"96a1", "864c1", sgn(TwistSign::Plus)},
                 {"288a1", "864a1", sgn(TwistSign::Minus)},
                 {"288a1", "864b1", sgn(TwistSign::Plus)},
                 {"864a1", "864b1", sgn(TwistSign::Minus)}}};
    return {3,
            {{"27a1", "864c1", sgn(TwistSign::Plus)},
             {"27a1", "864b1", sgn(TwistSign::Minus)},
             {"864b1", "864c1", sgn(TwistSign::Minus)},
             {"54a1", "864a1", sgn(TwistSign::Minus)}}};
}

} // namespace gfe
