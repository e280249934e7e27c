#pragma once

// The xrel command-line tool. Everything lives here so the tests can drive
// run() in-process; tools/xrel.cpp only forwards argv.

#include "xrel/analytic.hpp"
#include "xrel/config.hpp"
#include "xrel/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

namespace xrel {

namespace exit_code {
constexpr int ok = 0;
constexpr int verification_failed = 1;
constexpr int config_error = 2;
} // namespace exit_code

using json = nlohmann::json;

inline json point_json(const CurvePoint& P)
{
    if (P.is_infinity())
        return "inf";
    return json::array({P.x().str(), P.y().str()});
}

inline json family_json(const Family& f)
{
    json j;
    j["id"] = f.id;
    j["case"] = std::string(1, case_letter(f.desc));
    json params = json::object();
    std::array<int, 3> perm{0, 1, 2};
    if (const auto* a = std::get_if<CaseA>(&f.desc)) {
        perm = {a->free_slot, a->free_slot == 0 ? 1 : 0, a->free_slot == 2 ? 1 : 2};
        params["free_slot"] = a->free_slot + 1;
        j["verification"] = "structural";
    } else if (const auto* b = std::get_if<CaseB>(&f.desc)) {
        perm = b->slots;
        params["u"] = b->u.str();
        params["x_r"] = b->x_r.str();
        params["r"] = b->r ? point_json(*b->r) : json(nullptr);
        j["verification"] = "symbolic";
    } else if (const auto* c = std::get_if<CaseC>(&f.desc)) {
        params["u"] = c->u.str();
        params["v"] = c->v.str();
        j["verification"] = "symbolic";
    } else {
        const auto& d = std::get<CaseD>(f.desc);
        perm = d.slots;
        params["sign_p"] = d.sign_p;
        params["sign_t"] = d.sign_t;
        params["t"] = point_json(CurvePoint(d.a, QuadNum(0)));
        j["verification"] = "symbolic";
    }
    j["permutation"] = json::array({perm[0] + 1, perm[1] + 1, perm[2] + 1});
    j["parameters"] = params;
    j["verified"] = f.verified;
    return j;
}

inline json curve_json(const WeierstrassCurve& E)
{
    return json{{"A", E.A().str()}, {"B", E.B().str()}, {"C", E.C().str()}, {"field", E.field()}};
}

inline json coeffs_json(const RelationCoeffs& c)
{
    return json::array({c[0].str(), c[1].str(), c[2].str()});
}

inline json classify_json(const WeierstrassCurve& E, const RelationCoeffs& c, const CmMode& cm, const FamilyList& fl)
{
    json j;
    j["curve"] = curve_json(E);
    j["coeffs"] = coeffs_json(c);
    j["cm"] = cm.str();
    j["families"] = json::array();
    for (const auto& f : fl.families)
        j["families"].push_back(family_json(f));
    j["counts"] = {{"A", fl.count('A')}, {"B", fl.count('B')}, {"C", fl.count('C')},
                   {"D", fl.count('D')}, {"total", fl.size()}};
    return j;
}

inline json record_json(const SearchResult& r, const SolutionRecord& rec)
{
    json j;
    json els = json::array();
    for (std::size_t idx : rec.elements) {
        const GroupElement& e = r.elements[idx];
        els.push_back({{"coeffs", e.coeffs}, {"torsion", e.torsion_index}, {"point", point_json(e.point)}});
    }
    j["elements"] = els;
    j["classification"] = rec.trivial() ? "trivial" : "sporadic";
    j["family"] = rec.trivial() ? json(rec.family_id) : json(nullptr);
    return j;
}

inline json summary_json(const SearchSummary& s)
{
    return json{{"box", s.box},           {"elements", s.elements}, {"distinct_nonzero", s.distinct_nonzero},
                {"total", s.total},       {"trivial", s.trivial},   {"sporadic", s.sporadic},
                {"per_family", s.per_family}};
}

inline std::string summary_csv(const std::vector<SearchSummary>& rows)
{
    std::string out = "box,elements,distinct_nonzero,total,trivial,sporadic";
    std::vector<std::string> ids;
    if (!rows.empty())
        for (const auto& [id, n] : rows.front().per_family)
            ids.push_back(id);
    for (const auto& id : ids)
        out += "," + id;
    out += "\n";
    for (const auto& s : rows) {
        out += std::to_string(s.box) + "," + std::to_string(s.elements) + "," + std::to_string(s.distinct_nonzero) +
               "," + std::to_string(s.total) + "," + std::to_string(s.trivial) + "," + std::to_string(s.sporadic);
        for (const auto& id : ids)
            out += "," + std::to_string(s.per_family.at(id));
        out += "\n";
    }
    return out;
}

namespace cli_detail {

struct Overrides {
    std::string config_path, curve, coeffs, generators, torsion, cm;
    std::optional<long> field, box, threads, precision, samples, seed;
};

inline std::string bracket(const std::string& s)
{
    std::string t = config_detail::trim(s);
    return !t.empty() && t.front() == '[' ? t : "[" + t + "]";
}

inline JobConfig resolve(const Overrides& o)
{
    JobConfig cfg = o.config_path.empty() ? JobConfig{} : load_config(o.config_path);
    if (!o.curve.empty())
        set_config_value(cfg, "curve", bracket(o.curve));
    if (!o.coeffs.empty())
        set_config_value(cfg, "coeffs", bracket(o.coeffs));
    if (!o.generators.empty())
        set_config_value(cfg, "generators", o.generators);
    if (!o.torsion.empty())
        set_config_value(cfg, "torsion", o.torsion);
    if (!o.cm.empty())
        set_config_value(cfg, "cm", o.cm);
    auto num = [&](const char* key, const std::optional<long>& v) {
        if (v)
            set_config_value(cfg, key, std::to_string(*v));
    };
    num("field", o.field);
    num("box", o.box);
    num("threads", o.threads);
    num("precision", o.precision);
    num("samples", o.samples);
    num("seed", o.seed);
    return cfg;
}

inline void add_job_options(CLI::App* sub, Overrides& o)
{
    sub->add_option("--config", o.config_path, "Job config file (key = value lines)");
    sub->add_option("--curve", o.curve, "Curve coefficients A,B,C of y^2 = x^3 + Ax^2 + Bx + C");
    sub->add_option("--coeffs", o.coeffs, "Relation coefficients c1,c2,c3");
    sub->add_option("--field", o.field, "Working field Q(sqrt d); 0 infers it from the curve");
    sub->add_option("--cm", o.cm, "CM data: auto, none or d=<disc>");
    sub->add_option("--generators", o.generators, "Generators, e.g. [[0, 1/2]]");
    sub->add_option("--torsion", o.torsion, "Torsion points, e.g. [inf, [0, 0]]");
    sub->add_option("--box", o.box, "Coefficient box size N");
    sub->add_option("--threads", o.threads, "Worker threads for the search");
    sub->add_option("--precision", o.precision, "Bits used to embed exact numbers (53..64)");
    sub->add_option("--samples", o.samples, "Random samples for numeric checks");
    sub->add_option("--seed", o.seed, "Seed for numeric sampling");
}

inline RelationCoeffs require_coeffs(const Job& job)
{
    if (!job.coeffs)
        throw config_error("relation coefficients must be nonzero");
    return *job.coeffs;
}

class output_target {
public:
    output_target(const std::string& path, std::ostream& fallback) : out_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw config_error("cannot write '" + path + "'");
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

} // namespace cli_detail

/// Runs one command line (args[0] is the program name). Exit codes: 0 ok,
/// 1 verification failure, 2 configuration error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    using namespace cli_detail;
    CLI::App app("Elliptic curve families on c1 x1 + c2 x2 + c3 x3 = 0", "xrel");
    app.require_subcommand(1);
    Overrides o;
    std::string out_path, csv_path, z_text, lattice_b, lattice_c, u_text, slots_text = "1,2,3";
    bool stabilize = false;
    long max_order = 64;

    auto* classify_cmd = app.add_subcommand("classify", "List the curve families on the surface");
    add_job_options(classify_cmd, o);
    auto* search_cmd = app.add_subcommand("search", "Find solution triples in a box of the subgroup");
    add_job_options(search_cmd, o);
    search_cmd->add_option("--out", out_path, "Write JSON lines here instead of stdout");
    search_cmd->add_option("--csv", csv_path, "Also write the summary as CSV");
    search_cmd->add_flag("--stabilize", stabilize, "Repeat the search at box 2N and report both summaries");
    auto* verify_cmd = app.add_subcommand("verify", "Check every family symbolically and numerically");
    add_job_options(verify_cmd, o);
    auto* wp_cmd = app.add_subcommand("wp", "Evaluate p and p' on the curve's lattice");
    add_job_options(wp_cmd, o);
    wp_cmd->add_option("--z", z_text, "Argument as re,im")->required();
    wp_cmd->add_option("--b", lattice_b, "Use y^2 = 4x^3 + bx + c instead of the curve (needs --c)");
    wp_cmd->add_option("--c", lattice_c, "See --b");
    auto* show_cmd = app.add_subcommand("show-config", "Print the resolved config in canonical form");
    add_job_options(show_cmd, o);
    auto* oracle_cmd = app.add_subcommand("oracle", "Independent brute-force checks");
    oracle_cmd->require_subcommand(1);
    auto* lemma2_cmd = oracle_cmd->add_subcommand("lemma2", "Scan finite abelian groups for two-coset coverings");
    lemma2_cmd->add_option("--max-order", max_order, "Largest group order (<= 256)");
    auto* caseb_cmd = oracle_cmd->add_subcommand("caseb-constant", "Solve for the constant slot of (P, [u]P, R)");
    add_job_options(caseb_cmd, o);
    caseb_cmd->add_option("--u", u_text, "Unit u")->required();
    caseb_cmd->add_option("--slots", slots_text, "1-based slots of P, [u]P and R");

    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::config_error;
    }

    try {
        if (*lemma2_cmd) {
            Lemma2Report rep = lemma2_scan(static_cast<int>(max_order));
            json j{{"max_order", rep.max_order},       {"groups", rep.groups},
                   {"subgroup_pairs", rep.subgroup_pairs}, {"coverings", rep.coverings},
                   {"counterexamples", rep.counterexamples}};
            j["failures"] = json::array();
            for (const auto& f : rep.failures)
                j["failures"].push_back({{"group", f.group}, {"b", f.b}, {"index", f.index}});
            out << j.dump(2) << "\n";
            return rep.counterexamples == 0 ? exit_code::ok : exit_code::verification_failed;
        }

        JobConfig cfg = resolve(o);
        if (*show_cmd) {
            out << emit_config(cfg);
            return exit_code::ok;
        }
        Job job = build_job(cfg);
        const WeierstrassCurve& E = job.curve;

        if (*classify_cmd) {
            RelationCoeffs c = require_coeffs(job);
            FamilyList fl = classify(E, c, job.cm);
            out << classify_json(E, c, job.cm, fl).dump(2) << "\n";
            return exit_code::ok;
        }

        if (*search_cmd) {
            RelationCoeffs c = require_coeffs(job);
            SearchOptions opts;
            opts.threads = cfg.threads;
            opts.cm = job.cm;
            SearchResult r;
            try {
                r = find_solutions(E, c, job.subgroup, cfg.box, opts);
            } catch (const search_invariant_violation& e) {
                err << "error: " << e.what() << "\n";
                return exit_code::verification_failed;
            } catch (const std::invalid_argument& e) {
                throw config_error(e.what());
            }
            output_target target(out_path, out);
            for (const auto& rec : r.solutions)
                target.stream() << record_json(r, rec).dump() << "\n";
            json tail{{"summary", summary_json(r.summary)}};
            std::vector<SearchSummary> rows{r.summary};
            if (stabilize) {
                SearchResult r2;
                try {
                    r2 = find_solutions(E, c, job.subgroup, 2 * cfg.box, opts);
                } catch (const std::invalid_argument& e) {
                    throw config_error(std::string("stabilization run: ") + e.what());
                }
                tail["stabilization"] = summary_json(r2.summary);
                rows.push_back(r2.summary);
            }
            target.stream() << tail.dump() << "\n";
            if (!csv_path.empty()) {
                output_target csv(csv_path, out);
                csv.stream() << summary_csv(rows);
            }
            return exit_code::ok;
        }

        if (*verify_cmd) {
            RelationCoeffs c = require_coeffs(job);
            FamilyList fl = classify(E, c, job.cm);
            json j;
            j["curve"] = curve_json(E);
            j["coeffs"] = coeffs_json(c);
            j["families"] = json::array();
            bool all_ok = true;
            std::optional<LatticeData> L;
            for (const auto& f : fl.families) {
                json row{{"id", f.id}};
                bool symbolic = verify_family_symbolic(E, c, f.desc);
                row["symbolic"] = symbolic;
                if (std::holds_alternative<CaseA>(f.desc)) {
                    row["residual"] = 0.0;
                    row["numeric"] = true;
                } else {
                    if (!L)
                        L = periods(E, cfg.precision);
                    long double res =
                        residual_of(*L, identity_check_for(E, *L, c, f.desc), cfg.samples, cfg.seed);
                    row["residual"] = static_cast<double>(res);
                    row["numeric"] = res < 1e-8L;
                    all_ok = all_ok && res < 1e-8L;
                }
                all_ok = all_ok && symbolic;
                j["families"].push_back(row);
            }
            j["ok"] = all_ok;
            out << j.dump(2) << "\n";
            return all_ok ? exit_code::ok : exit_code::verification_failed;
        }

        if (*wp_cmd) {
            LatticeData L;
            if (!lattice_b.empty() || !lattice_c.empty()) {
                if (lattice_b.empty() || lattice_c.empty())
                    throw config_error("--b and --c must be given together");
                QuadNum b = QuadNum::parse(lattice_b), c = QuadNum::parse(lattice_c);
                L = periods_from_invariants(-embed_complex(b, cfg.precision), -embed_complex(c, cfg.precision),
                                            cfg.precision);
            } else {
                L = periods(E, cfg.precision);
            }
            cplx z = parse_complex(z_text);
            json j{{"omega1", complex_text(L.omega1)}, {"omega2", complex_text(L.omega2)},
                   {"g2", complex_text(L.g2)},         {"g3", complex_text(L.g3)},
                   {"z", complex_text(z)}};
            try {
                auto [p, dp] = wp(L, z);
                j["wp"] = complex_text(p);
                j["wp_prime"] = complex_text(dp);
                j["x"] = complex_text(p - L.shift);
            } catch (const pole_error& e) {
                j["pole"] = true;
                out << j.dump(2) << "\n";
                err << "error: " << e.what() << "\n";
                return exit_code::verification_failed;
            }
            out << j.dump(2) << "\n";
            return exit_code::ok;
        }

        if (*caseb_cmd) {
            RelationCoeffs c = require_coeffs(job);
            config_detail::Node slots_node = config_detail::parse_tree(bracket(slots_text));
            std::array<int, 3> slots{};
            if (!slots_node.list || slots_node.items.size() != 3)
                throw config_error("--slots needs three 1-based slot numbers");
            for (std::size_t i = 0; i < 3; ++i) {
                slots[i] = static_cast<int>(config_detail::parse_int("--slots", slots_node.items[i].atom, 1, 3)) - 1;
            }
            if (slots[0] == slots[1] || slots[0] == slots[2] || slots[1] == slots[2])
                throw config_error("--slots must be a permutation of 1,2,3");
            QuadNum u = QuadNum::parse(u_text);
            json j{{"u", u.str()}, {"slots", json::array({slots[0] + 1, slots[1] + 1, slots[2] + 1})}};
            try {
                QuadNum t = derive_caseB_constant(E, c, slots, u);
                j["t"] = t.str();
                j["verifies"] = verify_family_symbolic(E, c, CaseB{slots, u, t, std::nullopt});
                out << j.dump(2) << "\n";
                return j["verifies"].get<bool>() ? exit_code::ok : exit_code::verification_failed;
            } catch (const no_constant_solution& e) {
                j["t"] = nullptr;
                j["error"] = e.what();
            } catch (const unsupported_endomorphism& e) {
                j["t"] = nullptr;
                j["error"] = e.what();
            }
            out << j.dump(2) << "\n";
            return exit_code::verification_failed;
        }
    } catch (const config_error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    } catch (const parse_error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    } catch (const period_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::verification_failed;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    }
    return exit_code::ok;
}

inline int run(int argc, char** argv)
{
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

} // namespace xrel
