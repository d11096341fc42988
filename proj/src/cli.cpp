#include "jetcalc/cli.hpp"

#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "jetcalc/claims.hpp"
#include "jetcalc/invariance.hpp"
#include "jetcalc/map_file.hpp"
#include "jetcalc/oracle.hpp"
#include "jetcalc/parser.hpp"
#include "jetcalc/report.hpp"

namespace jetcalc::cli {
namespace {

using nlohmann::json;

RationalExpr sym(std::string_view n) { return RationalExpr::symbol(*lookup_symbol(n)); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ------------------------------------------------------------ verify-paper

void verify_paper(RunReport& report, std::ostream& /*out*/) {
    const auto vr = claims::verify_prolongation(report.seed);
    for (const auto& c : vr.checks) {
        std::string summary;
        if (!c.match)
            summary = std::to_string(c.difference_terms.size()) + " differing terms; oracle verdict " +
                      std::string(claims::to_string(c.verdict));
        report.add("coefficient a" + std::to_string(c.index), c.match, summary);
    }
    report.data["coefficients"] = vr.to_json();

    const bool ypp_ok = jets::third_order_prolongation().ypp == claims::claimed_second_derivative();
    report.add("second-derivative rule", ypp_ok);

    const auto ro = invariance::residue_obstruction();
    const auto cl = claims::claimed_residue_data();
    const bool omega_ok = ro.omega == cl.omega;
    const bool scaled_ok = ro.omega * jets::phi('x', 0, 1) == cl.omega;
    report.add("residue identity Omega = (B + 3X) det S", omega_ok,
               omega_ok ? "" : "derived Omega = " + ro.omega.to_string() + "; x_0_1 * Omega = (B + 3X) det S: " + yes_no(scaled_ok));
    const RationalExpr tied = substitute(ro.omega, Bindings{{coefficient("B"), -3 * sym("X")}});
    report.add("residue vanishes when B = -3X", tied.is_zero());

    const bool b_ok = ro.b1 == cl.b1 && ro.b2 == cl.b2;
    const bool swapped = ro.b1 == cl.b2 && ro.b2 == cl.b1;
    report.add("yt2^2 numerator coefficients B1~, B2~", b_ok,
               b_ok ? "" : swapped ? "published B1~ and B2~ are interchanged" : "published B1~, B2~ differ");

    const RationalExpr z = sym("z");
    const RationalExpr f_pub = (cl.b1 + cl.b2 * z) / (jets::phi('x', 1, 0) + jets::phi('x', 0, 1) * z);
    const RationalExpr omega_pub = residue_simple_pole(f_pub, variable("z"));

    const RationalExpr g = invariance::transform_equation(RationalExpr(), invariance::GeneralMap{});
    report.add("transform of y''' = 0", g == claims::claimed_y3zero_transform());

    report.data["residue"] = {{"b1", ro.b1.to_string()},
                              {"b2", ro.b2.to_string()},
                              {"omega", ro.omega.to_string()},
                              {"claimed_omega", cl.omega.to_string()},
                              {"x01_times_omega_matches_claim", scaled_ok},
                              {"claimed_b_swapped", swapped},
                              {"residue_of_claimed_f", omega_pub.to_string()}};
}

// ---------------------------------------------------------------- closure

void add_certificate(RunReport& report, const invariance::ClosureCertificate& cert, const std::string& prefix) {
    for (const auto& [name, ok] : cert.verified) report.add(prefix + name, ok);
}

void print_laws(std::ostream& out, const invariance::ClosureCertificate& cert) {
    out << "# " << cert.description << " (" << cert.provenance << ")\n";
    for (const auto& law : cert.laws) out << law.name << " = " << law.value.to_string() << '\n';
}

void closure(RunReport& report, int order, bool show, std::ostream& out) {
    json certs = json::array();
    if (order == 3) {
        try {
            auto cert = invariance::third_order_closure_check(true);
            add_certificate(report, cert, "tied B: ");
            certs.push_back(cert.to_json());
            if (show) print_laws(out, cert);
        } catch (const invariance::ClosureRefuted& e) {
            report.add("tied B: transformed member stays in the class", false, e.what(), e.result().to_json());
        }
        try {
            invariance::third_order_closure_check(false);
            report.add("free B: transformed member leaves the class", false, "it stayed in the class");
        } catch (const invariance::ClosureRefuted& e) {
            const auto& lambda = e.gauge_factor();
            const bool ok = lambda && !lambda->is_zero() && !lambda->depends_on(coefficient("B"));
            json details = e.result().to_json();
            if (lambda) details["gauge_factor"] = lambda->to_string();
            report.add("free B: obstruction residue is (B + 3X) det S times a B-free gauge factor", ok,
                       lambda ? "gauge factor " + lambda->to_string() : "no residue obstruction found", details);
        }
    } else {
        for (const auto& cert : invariance::second_order_closure_checks()) {
            add_certificate(report, cert, cert.description + ": ");
            certs.push_back(cert.to_json());
            if (show) print_laws(out, cert);
        }
    }
    report.data["certificates"] = certs;
}

// ------------------------------------------------------ transform / class

JetVars jets_of(const RationalExpr& e) {
    for (int k = 1; k <= 3; ++k)
        if (e.depends_on(jet(k, true))) return JetVars::target();
    return JetVars::source();
}

int check_class(RunReport& report, const RationalExpr& g, const std::string& kind, bool theorem1, bool show,
                std::ostream& out) {
    const JetVars jv = jets_of(g);
    if (kind == "third") {
        auto m = invariance::class_membership(g, jv, theorem1);
        report.add(theorem1 ? "membership in the B = -3X class" : "membership in the third-order class", m.in_class,
                   m.in_class ? "" : m.obstructions.empty() ? "" : m.obstructions.front(), m.to_json());
        report.data["membership"] = m.to_json();
        if (show) {
            out << (m.in_class ? "in-class" : "out-of-class") << '\n';
            if (m.coeffs)
                for (std::size_t i = 0; i < OdeClassCoeffs::kCount; ++i) {
                    auto idx = static_cast<OdeClassCoeffs::Index>(i);
                    out << OdeClassCoeffs::name(idx) << " = " << m.coeffs->effective(idx).to_string() << '\n';
                }
            for (const auto& o : m.obstructions) out << "obstruction: " << o << '\n';
        }
        return m.in_class ? kExitPass : kExitFail;
    }
    auto m = kind == "cubic" ? invariance::cubic_membership(g, jv) : invariance::point_expansion_membership(g, jv);
    json coeffs = json::object();
    for (std::size_t i = 0; i < m.coeffs.size(); ++i) coeffs[m.names[i]] = m.coeffs[i].to_string();
    json details{{"in_class", m.in_class}, {"obstructions", m.obstructions}, {"coefficients", coeffs}};
    report.add("membership in the " + kind + " class", m.in_class, m.in_class ? "" : m.obstructions.front(), details);
    report.data["membership"] = details;
    if (show) {
        out << (m.in_class ? "in-class" : "out-of-class") << '\n';
        for (std::size_t i = 0; i < m.coeffs.size(); ++i) out << m.names[i] << " = " << m.coeffs[i].to_string() << '\n';
        for (const auto& o : m.obstructions) out << "obstruction: " << o << '\n';
    }
    return m.in_class ? kExitPass : kExitFail;
}

// ----------------------------------------------------------------- oracle

void oracle_run(RunReport& report, int cases, int y3_cases, int corrupt_index) {
    auto batch_json = [](const oracle::BatchResult& b) {
        return json{{"cases", b.cases}, {"passed", b.passed}, {"resamples", b.resamples}, {"failures", b.failures}};
    };
    auto pb = oracle::run_prolongation_batch(report.seed, cases);
    report.add("prolongation oracle", pb.all_passed(),
               std::to_string(pb.passed) + "/" + std::to_string(pb.cases) + " cases agree", batch_json(pb));
    const RationalExpr rhs = invariance::transform_equation(RationalExpr(), invariance::GeneralMap{});
    auto yb = oracle::run_y3zero_batch(report.seed, y3_cases, rhs);
    report.add("y''' = 0 mapping oracle", yb.all_passed(),
               std::to_string(yb.passed) + "/" + std::to_string(yb.cases) + " cases agree", batch_json(yb));
    if (corrupt_index > 0) {
        auto bad = oracle::corrupt(jets::derived_coefficients(), corrupt_index);
        auto cb = oracle::run_prolongation_batch(report.seed, cases, bad);
        report.add("corrupted a" + std::to_string(corrupt_index) + " is detected", !cb.all_passed(),
                   std::to_string(cb.cases - cb.passed) + " detecting cases", batch_json(cb));
    }
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"Exact jet calculus for third-order ODEs under point transformations", "jetcalc"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    bool as_json = false, quiet = false;
    std::uint64_t seed = 1;
    app.add_flag("--json", as_json, "Emit the run report as JSON");
    app.add_flag("--quiet", quiet, "Suppress output; only the exit code reports the outcome");
    app.add_option("--seed", seed, "Seed for oracle sampling");

    auto* verify = app.add_subcommand("verify-paper", "Compare the derived rules with the published closed forms");

    int order = 3;
    auto* closure_cmd = app.add_subcommand("closure", "Certify that a class is closed under point transformations");
    closure_cmd->add_option("--order", order, "3: third-order class; 2: second-order classes")->check(CLI::IsMember({2, 3}));

    std::string map_spec = "general", rhs_text;
    bool forward = false;
    int t_order = 3;
    auto* transform = app.add_subcommand("transform", "Transform y''' = f (or y'' = f) under a map");
    transform->add_option("--map", map_spec, "Map file, or one of: general, identity, swap");
    transform->add_option("--rhs", rhs_text, "Right-hand side in x, y, y1, y2 and class coefficients")->required();
    transform->add_flag("--forward", forward, "Map file gives xt, yt in terms of x, y");
    transform->add_option("--order", t_order, "Equation order")->check(CLI::IsMember({2, 3}));

    std::string class_rhs_text, class_kind = "third";
    bool theorem1 = false;
    auto* check = app.add_subcommand("check-class", "Decide class membership of a right-hand side");
    check->add_option("--rhs", class_rhs_text, "Right-hand side")->required();
    check->add_flag("--theorem1", theorem1, "Also require B = -3X");
    check->add_option("--class", class_kind, "third, cubic or point-expansion")
        ->check(CLI::IsMember({"third", "cubic", "point-expansion"}));

    int cases = 100, y3_cases = 25, corrupt_index = 0;
    auto* oracle_cmd = app.add_subcommand("oracle", "Run seeded exact oracle batches");
    oracle_cmd->add_option("--cases", cases, "Prolongation cases")->check(CLI::Range(1, 100000));
    oracle_cmd->add_option("--y3zero-cases", y3_cases, "y''' = 0 mapping cases")->check(CLI::Range(1, 100000));
    oracle_cmd->add_option("--corrupt", corrupt_index, "Also check that corrupting a_i is detected")
        ->check(CLI::Range(1, 11));

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    RunReport report;
    report.command.assign(args.begin() + (args.empty() ? 0 : 1), args.end());
    report.seed = seed;
    const bool show = !quiet && !as_json;
    int code = kExitPass;
    std::string text_result;
    try {
        if (*verify) {
            verify_paper(report, out);
        } else if (*closure_cmd) {
            closure(report, order, show, out);
        } else if (*transform) {
            RationalExpr f = parse_expression(rhs_text);
            auto map = resolve_map(map_spec, forward);
            RationalExpr g = t_order == 3 ? invariance::transform_equation(f, map)
                                          : invariance::transform_second_order(f, map);
            report.add("transform", true);
            report.data["map"] = map_spec;
            report.data["result"] = g.to_string();
            text_result = g.to_string();
        } else if (*check) {
            RationalExpr g = parse_expression(class_rhs_text);
            code = check_class(report, g, class_kind, theorem1, show, out);
        } else if (*oracle_cmd) {
            oracle_run(report, cases, y3_cases, corrupt_index);
        }
    } catch (const Error& e) {
        if (!quiet) err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (code == kExitPass && !report.passed()) code = kExitFail;

    if (quiet) return code;
    if (as_json) {
        out << report.to_json().dump(2) << '\n';
    } else if (*transform) {
        out << text_result << '\n';
    } else if (!*check) {
        out << report.to_text();
    }
    return code;
}

} // namespace jetcalc::cli
