// command-line front end: every library module behind a stable JSON surface.
//
// Exit codes: 0 = Ok, 1 = computation error or failed verification,
// 2 = usage error.  JSON output uses sorted keys, rationals as "num/den"
// strings, p-adic numbers as {ell, prec, unit, val} objects, and residue
// disks as tagged unions, so output is byte-stable for fixed inputs.

#include <gfe/acceptance.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace gfe;

namespace {

json jrat(const Rat& x) { return rat_str(x); }

json jpadic(const Padic& x) {
    return json{{"ell", x.ell},
                {"prec", x.prec},
                {"unit", x.unit.get_str()},
                {"val", rat_str(Rat(x.val))}};
}

json jdisk(const JDisk& d) {
    json params;
    std::string variant;
    switch (d.variant) {
    case JDiskVariant::CenterModulus:
        variant = "CenterModulus";
        params = {{"center", jrat(d.center)}, {"ell", d.ell}, {"modExp", d.mod_exp}};
        break;
    case JDiskVariant::QuadraticFamily:
        variant = "QuadraticFamily";
        params = {{"ell", d.ell}, {"scale", d.scale.get_str()}};
        break;
    case JDiskVariant::PolyCube:
        variant = "PolyCube";
        params = {{"ell", d.ell}, {"scale", d.scale.get_str()}};
        break;
    case JDiskVariant::InversePower:
        variant = "InversePower";
        params = {{"ell", d.ell}, {"pExp", d.pexp}, {"sExp", d.s_exp}};
        break;
    }
    return json{{"params", params}, {"variant", variant}};
}

json jlocal_row(const FreyLocalRow& r) {
    json out{{"feasible", r.feasible}, {"line", r.row}, {"vN", r.vN}};
    out["dSet"] = r.d_set;
    out["curves"] = r.curves;
    out["jdisk"] = r.disk ? jdisk(*r.disk) : json(nullptr);
    if (!r.witness.empty()) out["witness"] = r.witness;
    return out;
}

std::string kind_str(SolutionKind k) {
    switch (k) {
    case SolutionKind::Trivial: return "Trivial";
    case SolutionKind::Catalan: return "Catalan";
    case SolutionKind::NonTrivial: return "NonTrivial";
    }
    return "";
}

json jsolution(const SolutionTriple& t) {
    return json{{"a", t.a.get_str()},     {"b", t.b.get_str()},
                {"c", t.c.get_str()},     {"kind", kind_str(t.kind)},
                {"p", t.p},               {"primitive", t.primitive}};
}

json jtwist_entry(const TwistPlanEntry& e) {
    std::vector<std::string> signs;
    for (auto s : e.signs) signs.push_back(s == TwistSign::Plus ? "+" : "-");
    return json{{"label", e.label}, {"provenance", e.provenance}, {"signs", signs}};
}

// the uniform envelope: {command, payload, status}; exit 0 iff status Ok
int emit(const std::string& command, const std::string& status, const json& payload) {
    json out{{"command", command}, {"payload", payload}, {"status", status}};
    std::cout << out.dump(2) << "\n";
    if (status == "Ok") return 0;
    return 1;
}

std::optional<Rat> parse_rat_or_inf(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "oo") return std::nullopt;
    return rat_parse(s);
}

PolyQ parse_poly(const std::string& s) {
    std::vector<Rat> cs;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) cs.push_back(rat_parse(item));
    if (cs.empty()) throw std::domain_error("empty coefficient list");
    return PolyQ(cs);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Fermat x^2 + y^3 = z^p toolkit"};
    app.require_subcommand(1);
    int threads = 1; // accepted for interface stability; output is
                     // deterministic and single-threaded either way
    app.add_option("--threads", threads, "worker threads (determinism guaranteed)");

    // classify
    std::string cl_a, cl_b;
    auto* classify = app.add_subcommand("classify", "local classification of (a, b)");
    classify->add_option("--a", cl_a, "a")->required();
    classify->add_option("--b", cl_b, "b")->required();

    // search
    long se_p = 11;
    std::string se_bound = "100";
    bool se_json = false;
    auto* search = app.add_subcommand("search", "exhaustive primitive-solution search");
    search->add_option("--p", se_p, "exponent p")->required();
    search->add_option("--bound", se_bound, "bound on max(|a|, |b|)")->required();
    search->add_flag("--json", se_json, "JSON output");

    // verify-known
    auto* vknown = app.add_subcommand("verify-known", "check the known identities");

    // twistplan
    long tw_p = 11;
    bool tw_derive = false;
    auto* twistplan = app.add_subcommand("twistplan", "per-curve twist plan");
    twistplan->add_option("--p", tw_p, "prime p >= 11")->required();
    twistplan->add_flag("--derive", tw_derive, "recompute instead of the static table");

    // glgroup
    long gl_p = 5;
    std::string gl_group = "h8";
    auto* glgroup = app.add_subcommand("glgroup", "exceptional image and its normalizer");
    glgroup->add_option("--p", gl_p, "prime p")->required();
    glgroup->add_option("--group", gl_group, "h8 or dic12")
        ->check(CLI::IsMember({"h8", "dic12"}));

    // tate-module
    long tm_p = 5, tm_e1 = 1, tm_e2 = 1;
    auto* tatemod = app.add_subcommand("tate-module", "Tate-curve torsion map");
    tatemod->add_option("--p", tm_p, "prime p")->required();
    tatemod->add_option("--e1", tm_e1, "valuation of q_1")->required();
    tatemod->add_option("--e2", tm_e2, "valuation of q_2")->required();

    // x011
    auto* x11 = app.add_subcommand("x011", "level-11 modular curve toolkit");
    x11->require_subcommand(1);
    std::string fx, fj;
    auto* x11_fj = x11->add_subcommand("fj", "evaluate the plane relation F(x, j)");
    x11_fj->add_option("--x", fx, "x-coordinate")->required();
    x11_fj->add_option("--j", fj, "j-invariant")->required();
    std::string lt;
    auto* x11_log = x11->add_subcommand("log", "2-adic elliptic logarithm in the kernel");
    x11_log->add_option("--t", lt, "uniformizer value, v_2(t) >= 1")->required();

    // xns-search
    long xs_d = -1, xs_h = 100;
    bool xs_json = false;
    auto* xns = app.add_subcommand("xns-search", "points on a nonsplit-Cartan twist");
    xns->add_option("--d", xs_d, "twist discriminant, -1 or -3")->required();
    xns->add_option("--height", xs_h, "naive height bound")->required();
    xns->add_flag("--json", xs_json, "JSON output");

    // localsolve
    std::string ls_poly;
    long ls_ell = 2;
    auto* lsolve = app.add_subcommand("localsolve", "Q_ell solubility of y^2 = f(x)");
    lsolve->add_option("--poly", ls_poly, "coefficients c0,c1,...,c6")->required();
    lsolve->add_option("--ell", ls_ell, "prime ell")->required();

    // x013-j
    std::string x13_v;
    auto* x13 = app.add_subcommand("x013-j", "level-13 j-map value");
    x13->add_option("--v", x13_v, "coordinate v (rational, or inf)")->required();

    // verify-paper
    std::string vp_level = "full";
    auto* vpaper = app.add_subcommand("verify-paper", "run the acceptance suite");
    vpaper->add_option("--level", vp_level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e); // prints help or the usage message
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*classify) {
            Int a(cl_a), b(cl_b);
            FreyLocalRow r2 = classify_2adic(a, b);
            FreyLocalRow r3 = classify_3adic(a, b);
            json payload{{"a", a.get_str()},  {"b", b.get_str()},
                         {"i2", r2.row},      {"i3", r3.row},
                         {"local2", jlocal_row(r2)}, {"local3", jlocal_row(r3)},
                         {"v2N", r2.vN},      {"v3N", r3.vN},
                         {"jdisk2", r2.disk ? jdisk(*r2.disk) : json(nullptr)},
                         {"jdisk3", r3.disk ? jdisk(*r3.disk) : json(nullptr)}};
            // the joint d-set and matched curve exist only when both local
            // classes are feasible
            if (r2.feasible && r3.feasible) {
                std::vector<long> dset;
                for (long d : r2.d_set)
                    if (std::find(r3.d_set.begin(), r3.d_set.end(), d) != r3.d_set.end())
                        dset.push_back(d);
                payload["dSet"] = dset;
                std::string curve = match_curve(r2.row, r3.row);
                payload["curves"] =
                    curve.empty() ? std::vector<std::string>{}
                                  : std::vector<std::string>{curve};
            } else {
                payload["dSet"] = std::vector<long>{};
                payload["curves"] = std::vector<std::string>{};
            }
            return emit("classify", "Ok", payload);
        }

        if (*search) {
            auto sols = search_solutions(se_p, Int(se_bound));
            if (!se_json) {
                for (auto& t : sols)
                    std::printf("%s^2 + %s^3 = %s^%ld  [%s]\n", t.a.get_str().c_str(),
                                t.b.get_str().c_str(), t.c.get_str().c_str(), t.p,
                                kind_str(t.kind).c_str());
                std::printf("%zu primitive solutions\n", sols.size());
                return 0;
            }
            json list = json::array();
            for (auto& t : sols) list.push_back(jsolution(t));
            return emit("search", "Ok",
                        json{{"bound", se_bound}, {"p", se_p}, {"solutions", list}});
        }

        if (*vknown) {
            auto reports = verify_known_solutions();
            bool all_ok = true;
            json list = json::array();
            for (auto& r : reports) {
                all_ok = all_ok && r.holds && r.primitive;
                list.push_back(json{{"a", r.id.a.get_str()},
                                    {"b", r.id.b.get_str()},
                                    {"base", r.id.base.get_str()},
                                    {"exp", r.id.exp},
                                    {"holds", r.holds},
                                    {"kind", kind_str(r.kind)},
                                    {"negated", r.id.negated},
                                    {"primitive", r.primitive}});
            }
            return emit("verify-known", all_ok ? "Ok" : "Violation",
                        json{{"count", reports.size()}, {"identities", list}});
        }

        if (*twistplan) {
            auto table = tw_derive ? derive_twist_table(tw_p) : twist_table(tw_p);
            json list = json::array();
            for (auto& e : table) list.push_back(jtwist_entry(e));
            return emit("twistplan", "Ok",
                        json{{"derived", tw_derive}, {"entries", list}, {"p", tw_p}});
        }

        if (*glgroup) {
            Embedding emb = gl_group == "h8" ? embed_h8(gl_p) : embed_dic12(gl_p);
            NormalizerData nd = normalizer_centralizer(emb.group);
            DetPattern dp = det_pattern(nd.normalizer, gl_p);
            json gens = json::array();
            for (auto& g : emb.gens)
                gens.push_back(std::vector<long>{g.a, g.b, g.c, g.d});
            return emit(
                "glgroup", "Ok",
                json{{"alpha", emb.alpha},
                     {"beta", emb.beta},
                     {"centralizerOrder", nd.centralizer.size()},
                     {"detPattern", dp == DetPattern::AllSquare      ? "AllSquare"
                                    : dp == DetPattern::IndexTwoSquare ? "IndexTwoSquare"
                                                                       : "Other"},
                     {"generators", gens},
                     {"group", gl_group},
                     {"normalizerOrder", nd.normalizer.size()},
                     {"order", emb.group.elems.size()},
                     {"p", gl_p},
                     {"quotientOrder", nd.normalizer.size() / nd.centralizer.size()}});
        }

        if (*tatemod) {
            TateModuleMap tm = tate_module_matrix(tm_p, tm_e1, tm_e2);
            SymplecticType st = symplectic_type_of_det(tm.matrix.det(), tm_p);
            SymplecticType ko = ko_criterion(tm_e1, tm_e2, tm_p);
            auto sstr = [](SymplecticType s) {
                return s == SymplecticType::Symplectic ? "Symplectic" : "AntiSymplectic";
            };
            return emit("tate-module", "Ok",
                        json{{"e1", tm_e1},
                             {"e2", tm_e2},
                             {"equivariant", tate_equivariance_check(tm_p, tm.n)},
                             {"m", tm.m},
                             {"matrix", std::vector<std::vector<long>>{{tm.n, 0}, {0, 1}}},
                             {"n", tm.n},
                             {"p", tm_p},
                             {"symplecticType", sstr(st)},
                             {"valuationCriterion", sstr(ko)}});
        }

        if (*x11_fj) {
            Rat x = rat_parse(fx), j = rat_parse(fj);
            const JMapData& D = x011_data();
            json payload{{"f", jrat(D.F(x, j))}, {"j", jrat(j)}, {"x", jrat(x)}};
            payload["y"] =
                D.b_poly(x) != 0 ? json(rat_str(x011_y_from_xj(x, j))) : json(nullptr);
            return emit("x011-fj", "Ok", payload);
        }

        if (*x11_log) {
            Rat t = rat_parse(lt);
            int prec = default_precision();
            Padic tau = Padic::from_rat(t, 2, prec);
            KernelPoint P = kernel_point_from_t(tau);
            Padic lam = elliptic_log_2adic(P);
            return emit("x011-log", "Ok",
                        json{{"filtration", rat_str(P.filtration())},
                             {"log", jpadic(lam)},
                             {"t", jrat(t)},
                             {"x", jpadic(P.x)},
                             {"y", jpadic(P.y)}});
        }

        if (*xns) {
            XnsSearchResult res = xns_twist_point_search(xs_d, xs_h);
            if (!xs_json) {
                if (res.infinity) std::printf("infinity\n");
                for (auto& x : res.xs) std::printf("x = %s\n", rat_str(x).c_str());
                return 0;
            }
            std::vector<std::string> xs_str;
            for (auto& x : res.xs) xs_str.push_back(rat_str(x));
            return emit("xns-search", "Ok",
                        json{{"d", xs_d},
                             {"height", xs_h},
                             {"infinity", res.infinity},
                             {"xs", xs_str}});
        }

        if (*lsolve) {
            PolyQ f = parse_poly(ls_poly);
            bool ok = local_solubility(f, ls_ell);
            std::vector<std::string> cs;
            for (auto& c : f.c) cs.push_back(rat_str(c));
            return emit("localsolve", "Ok",
                        json{{"ell", ls_ell}, {"poly", cs}, {"soluble", ok}});
        }

        if (*x13) {
            auto v = parse_rat_or_inf(x13_v);
            auto j = x013_jmap(v);
            return emit("x013-j", "Ok",
                        json{{"j", j ? json(rat_str(*j)) : json(nullptr)},
                             {"v", v ? json(rat_str(*v)) : json(nullptr)}});
        }

        if (*vpaper) {
            auto results = run_acceptance(vp_level == "fast");
            bool all_ok = true;
            json list = json::array();
            for (auto& r : results) {
                all_ok = all_ok && r.passed;
                json e{{"name", r.name}, {"number", r.number}, {"passed", r.passed}};
                if (!r.detail.empty()) e["detail"] = r.detail;
                list.push_back(e);
            }
            return emit("verify-paper", all_ok ? "Ok" : "Violation",
                        json{{"criteria", list}, {"level", vp_level}});
        }
    } catch (const std::exception& e) {
        json out{{"command", app.get_subcommands().front()->get_name()},
                 {"payload", json{{"error", e.what()}}},
                 {"status", "Error"}};
        std::cout << out.dump(2) << "\n";
        return 1;
    }
    return 2;
}
