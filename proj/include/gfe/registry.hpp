#pragma once

#include "elliptic.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gfe {

// ---------------------------------------------------------------------------
// Static registry of the reference curves: the seven level-lowering targets,
// their isogeny-class siblings, and the four conductor-121 curves appearing
// in the Jacobian decomposition of the non-split-Cartan cover at level 11.
// Sibling models were generated from the pinned base models by 2- and
// 3-isogeny quotients followed by minimal-model reduction, and are verified
// against conductors and point counts by the test suite.
// ---------------------------------------------------------------------------

struct CurveRecord {
    std::string label;
    Model model;
    std::vector<std::pair<std::string, int>> isogeny_edges; // (label, degree)
    std::optional<long> cm;                                 // CM discriminant
    std::map<long, std::string> inertial_class_tags;        // prime -> tag
};

inline const std::vector<CurveRecord>& curve_registry() {
    static const std::vector<CurveRecord> reg = [] {
        auto M = [](long a1, long a2, long a3, long a4, long a6) {
            return Model::from_ints(a1, a2, a3, a4, a6);
        };
        // shared local-inertia classes: at 2 the additive curves with
        // conductor exponent 5 fall into two quaternion-inertia field classes;
        // at 3 the curves with conductor exponent 3 fall into two
        // dicyclic-inertia field classes
        const std::string h8a = "quaternion-2adic-A", h8b = "quaternion-2adic-B";
        const std::string d12a = "dicyclic-3adic-A", d12b = "dicyclic-3adic-B";
        std::vector<CurveRecord> r;
        r.push_back({"27a1", M(0, 0, 1, 0, -7), {{"27a2", 3}, {"27a3", 3}}, -3, {{3, d12a}}});
        r.push_back({"27a2", M(0, 0, 1, -270, -1708), {{"27a1", 3}}, -27, {}});
        r.push_back({"27a3", M(0, 0, 1, 0, 0), {{"27a1", 3}, {"27a4", 3}}, -3, {}});
        r.push_back({"27a4", M(0, 0, 1, -30, 63), {{"27a3", 3}}, -27, {}});
        r.push_back({"54a1", M(1, -1, 0, 12, 8), {{"54a2", 3}, {"54a3", 3}}, std::nullopt,
                     {{3, d12b}}});
        r.push_back({"54a2", M(1, -1, 0, -3, 3), {{"54a1", 3}}, std::nullopt, {}});
        r.push_back({"54a3", M(1, -1, 0, -123, -667), {{"54a1", 3}}, std::nullopt, {}});
        r.push_back({"96a1", M(0, 1, 0, -2, 0), {{"96a2", 2}, {"96a3", 2}, {"96a4", 2}},
                     std::nullopt, {{2, h8a}}});
        r.push_back({"96a2", M(0, 1, 0, -17, -33), {{"96a1", 2}}, std::nullopt, {}});
        r.push_back({"96a3", M(0, 1, 0, -32, 60), {{"96a1", 2}}, std::nullopt, {}});
        r.push_back({"96a4", M(0, 1, 0, 8, 8), {{"96a1", 2}}, std::nullopt, {}});
        r.push_back({"288a1", M(0, 0, 0, 3, 0), {{"288a2", 2}}, -4, {{2, h8b}}});
        r.push_back({"288a2", M(0, 0, 0, -12, 0), {{"288a1", 2}}, -4, {}});
        r.push_back({"864a1", M(0, 0, 0, -3, 6), {}, std::nullopt, {{2, h8b}, {3, d12b}}});
        r.push_back({"864b1", M(0, 0, 0, -24, 48), {}, std::nullopt, {{2, h8b}, {3, d12a}}});
        r.push_back({"864c1", M(0, 0, 0, 24, -16), {}, std::nullopt, {{2, h8a}, {3, d12a}}});
        r.push_back({"121a1", M(1, 1, 1, -30, -76), {}, std::nullopt, {}});
        r.push_back({"121b1", M(0, -1, 1, -7, 10), {}, -11, {}});
        r.push_back({"121c1", M(1, 1, 0, -2, -7), {}, std::nullopt, {}});
        r.push_back({"121d1", M(0, -1, 1, -40, -221), {}, std::nullopt, {}});
        return r;
    }();
    return reg;
}

inline const CurveRecord& reference_curve(const std::string& label) {
    for (const auto& r : curve_registry())
        if (r.label == label) return r;
    throw std::domain_error("reference_curve: unknown label " + label);
}

// conductor encoded in a Cremona-style label ("864b1" -> 864)
inline long label_conductor(const std::string& label) {
    size_t i = 0;
    while (i < label.size() && std::isdigit((unsigned char)label[i])) ++i;
    if (i == 0) throw std::domain_error("label_conductor: bad label");
    return std::stol(label.substr(0, i));
}

// trace of Frobenius at a good odd prime q by exhaustive point count
inline long trace_of_frobenius(const Model& e, long q) {
    Int Q(q);
    auto red = [&](const Rat& r) {
        return mod(r.get_num() * invmod(r.get_den(), Q), q).get_si();
    };
    long A1 = red(e.a1), A2 = red(e.a2), A3 = red(e.a3), A4 = red(e.a4), A6 = red(e.a6);
    long cnt = 1;
    for (long x = 0; x < q; ++x)
        for (long y = 0; y < q; ++y) {
            long lhs = ((y * y + A1 * x % q * y + A3 * y) % q + q) % q;
            long rhs = ((x * x % q * x + A2 * x % q * x + A4 * x + A6) % q + q) % q;
            if (lhs == rhs) ++cnt;
        }
    return q + 1 - cnt;
}

} // namespace gfe
