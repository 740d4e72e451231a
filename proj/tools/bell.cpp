#include <CLI11.hpp>

#include "bell/cglmp.hpp"
#include "bell/families.hpp"
#include "bell/mermin.hpp"
#include "bell/report.hpp"
#include "bell/seesaw.hpp"
#include "bell/table_io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace bell;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerdict = 2;

std::string read_text(const std::string& path)
{
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

BellExpression load_table(const std::string& path, const std::string& scenario_spec)
{
    BellExpression expr = parse_table(read_text(path));
    if (!scenario_spec.empty()) {
        int ma, mb, na, nb;
        char c1, c2, c3;
        std::istringstream ss(scenario_spec);
        if (!(ss >> ma >> c1 >> mb >> c2 >> na >> c3 >> nb))
            throw std::runtime_error("bad --scenario spec, expected mA,mB,nA,nB");
        if (expr.scenario() != bipartite_scenario(ma, mb, na, nb))
            throw std::runtime_error("table does not match --scenario " + scenario_spec);
    }
    return expr;
}

struct FamilyCase {
    BellExpression expr;
    Realization realization;
    Steering direction = Steering::kAliceToBob;
    std::vector<std::string> param_names;
    std::vector<double> params;
};

FamilyCase make_family(const std::string& name, double gamma, double theta, int d,
                       std::uint64_t seed, int restarts)
{
    auto recovered = [&](Counterexample which) {
        SeesawOptions opt;
        opt.restarts = restarts;
        opt.seed = seed;
        return seesaw_maximize(counterexample_game(which, 0.0), 2, 2, opt).realization;
    };
    if (name == "chsh" || name == "chsh-xor")
        return {chsh_xor(), canonical_chsh_realization(), Steering::kAliceToBob, {}, {}};
    if (name == "cglmp2")
        return {cglmp2_zg(), canonical_chsh_realization(), Steering::kAliceToBob, {}, {}};
    if (name == "c1")
        return {counterexample_game(Counterexample::kC1, gamma),
                recovered(Counterexample::kC1),
                Steering::kAliceToBob,
                {"gamma"},
                {gamma}};
    if (name == "c2")
        return {counterexample_game(Counterexample::kC2, gamma),
                recovered(Counterexample::kC2),
                Steering::kAliceToBob,
                {"gamma"},
                {gamma}};
    if (name == "three-param") {
        std::mt19937_64 rng(seed);
        const BoundaryPoint3Param p = boundary_sample(rng);
        return {weighted_xor_game(p),
                p.realization(),
                Steering::kAliceToBob,
                {"alpha00", "alpha01", "alpha10", "alpha11"},
                {p.a00, p.a01, p.a10, p.a11}};
    }
    if (name == "tilted") {
        const TiltedPoint tp(theta);
        return {tilted_chsh(tp, gamma),
                tp.realization(),
                Steering::kAliceToBob,
                {"theta", "gamma"},
                {theta, gamma}};
    }
    if (name == "tilted-prime") {
        const TiltedPoint tp(theta);
        return {tilted_chsh_prime(tp, gamma),
                tp.realization(),
                Steering::kBobToAlice,
                {"theta", "gamma"},
                {theta, gamma}};
    }
    if (name == "tilted-prime-balanced") {
        const TiltedPoint tp(theta);
        return {tilted_chsh_prime_balanced(tp, gamma),
                tp.realization(),
                Steering::kBobToAlice,
                {"theta", "gamma"},
                {theta, gamma}};
    }
    if (name == "gd")
        return {gd_game(d), cglmp_optimal_realization(d), Steering::kAliceToBob,
                {"d"},   {static_cast<double>(d)}};
    if (name == "zg")
        return {zohren_gill(d), cglmp_optimal_realization(d), Steering::kAliceToBob,
                {"d"},        {static_cast<double>(d)}};
    throw std::runtime_error("unknown family '" + name + "'");
}

int emit_ow_report(const OwReport& rep, const RunConfig& cfg, bool expect_ow)
{
    emit(report_json(rep, cfg.seed).dump(2), cfg);
    if (expect_ow && !rep.verdict) return kExitVerdict;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bell expression tables, no-signaling rewritings, and steering saturation checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("BELL_TOL")) cfg.ow_tol = std::atof(env);
    std::string format = "json";
    app.add_option("--tol", cfg.ow_tol, "saturation tolerance on gaps");
    app.add_option("--behavior-tol", cfg.behavior_tol, "behavior validation tolerance");
    app.add_option("--seed", cfg.seed, "seed for all randomness");
    app.add_option("--format", format, "output format: json|text|csv")
        ->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--out", cfg.out_path, "output file (default stdout)");

    // eval
    auto* c_eval = app.add_subcommand("eval", "evaluate a table on a behavior");
    std::string eval_table, eval_realization, eval_scenario;
    bool eval_uniform = false;
    c_eval->add_option("table", eval_table, "table file or -")->required();
    c_eval->add_flag("--uniform", eval_uniform, "use the uniform behavior");
    c_eval->add_option("--realization", eval_realization, "realization json file");
    c_eval->add_option("--scenario", eval_scenario, "expected scenario mA,mB,nA,nB");

    // local-bound
    auto* c_lb = app.add_subcommand("local-bound", "enumerate the deterministic maximum");
    std::string lb_table, lb_scenario;
    c_lb->add_option("table", lb_table)->required();
    c_lb->add_option("--scenario", lb_scenario);

    // show
    auto* c_show = app.add_subcommand("show", "pretty-print a table");
    std::string show_table, show_scenario;
    c_show->add_option("table", show_table)->required();
    c_show->add_option("--scenario", show_scenario);

    // ns-const
    auto* c_nsc = app.add_subcommand("ns-const", "certify a no-signaling constant");
    std::string nsc_table;
    c_nsc->add_option("table", nsc_table)->required();

    // ns-equiv
    auto* c_nse = app.add_subcommand("ns-equiv", "certify equivalence up to an NS constant");
    std::string nse_a, nse_b;
    c_nse->add_option("tableA", nse_a)->required();
    c_nse->add_option("tableB", nse_b)->required();

    // shared family options
    std::string family;
    double gamma = 0.0, theta = std::numbers::pi / 8;
    int dcount = 3, restarts = 50;
    bool expect_ow = false;

    auto add_family_opts = [&](CLI::App* cmd, bool with_expect) {
        cmd->add_option("--family", family,
                        "chsh-xor|cglmp2|c1|c2|three-param|tilted|tilted-prime|"
                        "tilted-prime-balanced|gd|zg");
        cmd->add_option("--gamma", gamma, "family parameter");
        cmd->add_option("--theta", theta, "tilt angle");
        cmd->add_option("--d", dcount, "outcome count");
        cmd->add_option("--restarts", restarts, "seesaw restarts");
        if (with_expect)
            cmd->add_flag("--expect-ow", expect_ow,
                          "exit 2 when the verdict is not saturation");
    };

    // ow-check
    auto* c_owc = app.add_subcommand("ow-check", "saturation report for a game");
    std::string owc_table, owc_realization, owc_direction = "a2b";
    c_owc->add_option("table", owc_table, "table file (alternative to --family)");
    c_owc->add_option("--realization", owc_realization, "realization json file");
    c_owc->add_option("--direction", owc_direction, "a2b|b2a")
        ->check(CLI::IsMember({"a2b", "b2a"}));
    add_family_opts(c_owc, true);

    // ow-search
    auto* c_ows = app.add_subcommand("ow-search", "search for a saturating rewriting");
    std::string ows_table, ows_realization;
    c_ows->add_option("table", ows_table);
    c_ows->add_option("--realization", ows_realization);
    add_family_opts(c_ows, false);

    // gamma-solve
    auto* c_gs = app.add_subcommand("gamma-solve", "pin the family parameter");
    add_family_opts(c_gs, false);

    // seesaw
    auto* c_ss = app.add_subcommand("seesaw", "alternating maximization of a table");
    std::string ss_table, ss_dims = "2,2", ss_emit;
    c_ss->add_option("table", ss_table)->required();
    c_ss->add_option("--dims", ss_dims, "local dimensions dA,dB");
    c_ss->add_option("--restarts", restarts);
    c_ss->add_option("--emit-realization", ss_emit, "write the recovered realization");

    // family
    auto* c_fam = app.add_subcommand("family", "print a family table");
    std::string fam_name;
    c_fam->add_option("name", fam_name, "family name")->required();
    c_fam->add_option("--gamma", gamma);
    c_fam->add_option("--theta", theta);
    c_fam->add_option("--d", dcount);

    // scan
    auto* c_scan = app.add_subcommand("scan", "stream saturation records over samples");
    std::string scan_name;
    int samples = 100;
    c_scan->add_option("name", scan_name, "three-param")->required();
    c_scan->add_option("--samples", samples);

    // cglmp
    auto* c_cg = app.add_subcommand("cglmp", "d-outcome game reports");
    std::string cg_game = "gd", cg_report;
    c_cg->add_option("--d", dcount);
    c_cg->add_option("--game", cg_game)->check(CLI::IsMember({"zg", "gd"}));
    c_cg->add_option("--report", cg_report, "table1: the d=3 profile");
    c_cg->add_flag("--expect-ow", expect_ow);

    // mermin
    auto* c_mm = app.add_subcommand("mermin", "tripartite parity-game reports");
    std::string mm_type = "i";
    c_mm->add_option("--type", mm_type, "steering type i|ii")
        ->check(CLI::IsMember({"i", "ii"}));
    c_mm->add_flag("--expect-ow", expect_ow);

    // fixture
    auto* c_fx = app.add_subcommand("fixture", "emit a realization json fixture");
    std::string fx_family;
    c_fx->add_option("--family", fx_family, "chsh|tilted|cglmp|ghz")->required();
    c_fx->add_option("--theta", theta);
    c_fx->add_option("--d", dcount);

    // global options are accepted after the subcommand as well
    for (CLI::App* sub : {c_eval, c_lb, c_show, c_nsc, c_nse, c_owc, c_ows, c_gs,
                          c_ss, c_fam, c_scan, c_cg, c_mm, c_fx})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        cfg.validate();
        cfg.samples = samples;
        if (format == "text") cfg.format = RunConfig::Format::kText;
        else if (format == "csv") cfg.format = RunConfig::Format::kCsv;

        if (app.got_subcommand(c_eval)) {
            const BellExpression expr = load_table(eval_table, eval_scenario);
            Behavior p = eval_uniform
                             ? Behavior::uniform(expr.scenario())
                             : behavior_of(load_realization(eval_realization),
                                           cfg.behavior_tol);
            OrderedJson j;
            j["label"] = expr.label();
            j["value"] = evaluate(expr, p);
            emit(j.dump(2), cfg);
            return kExitOk;
        }

        if (app.got_subcommand(c_lb)) {
            const BellExpression expr = load_table(lb_table, lb_scenario);
            const LocalBound lb = local_bound(expr);
            OrderedJson j;
            j["value"] = lb.value;
            j["exact"] = lb.exact;
            j["maximizer_count"] = lb.maximizers.size();
            auto arr = OrderedJson::array();
            for (const auto& f : lb.maximizers) arr.push_back(f.outputs);
            j["maximizers"] = std::move(arr);
            emit(j.dump(2), cfg);
            return kExitOk;
        }

        if (app.got_subcommand(c_show)) {
            emit(render_table(load_table(show_table, show_scenario)), cfg);
            return kExitOk;
        }

        if (app.got_subcommand(c_nsc)) {
            const BellExpression expr = load_table(nsc_table, "");
            emit(certificate_json(ns_constant_certificate(expr)).dump(2), cfg);
            return kExitOk;
        }

        if (app.got_subcommand(c_nse)) {
            const BellExpression a = load_table(nse_a, "");
            const BellExpression b = load_table(nse_b, "");
            emit(certificate_json(ns_equivalent(a, b)).dump(2), cfg);
            return kExitOk;
        }

        if (app.got_subcommand(c_owc)) {
            if (!family.empty()) {
                const FamilyCase fc =
                    make_family(family, gamma, theta, dcount, cfg.seed, restarts);
                return emit_ow_report(ow_report(fc.expr, fc.realization, fc.direction,
                                                cfg.ow_tol),
                                      cfg, expect_ow);
            }
            if (owc_table.empty() || owc_realization.empty())
                throw std::runtime_error("ow-check needs --family or table + --realization");
            const BellExpression expr = load_table(owc_table, "");
            const Realization r = load_realization(owc_realization);
            const Steering dir = owc_direction == "a2b" ? Steering::kAliceToBob
                                                        : Steering::kBobToAlice;
            return emit_ow_report(ow_report(expr, r, dir, cfg.ow_tol), cfg, expect_ow);
        }

        if (app.got_subcommand(c_ows)) {
            BellExpression expr = chsh_xor();
            Realization r = canonical_chsh_realization();
            if (!family.empty()) {
                FamilyCase fc = make_family(family, gamma, theta, dcount, cfg.seed, restarts);
                expr = std::move(fc.expr);
                r = std::move(fc.realization);
            } else if (!ows_table.empty() && !ows_realization.empty()) {
                expr = load_table(ows_table, "");
                r = load_realization(ows_realization);
            } else {
                throw std::runtime_error("ow-search needs --family or table + --realization");
            }
            const OwSearchResult res = ow_game_search(expr, r, cfg.ow_tol);
            OrderedJson j;
            j["found"] = res.game.has_value();
            j["rank"] = res.rank;
            j["residual"] = res.residual;
            if (res.game) j["game"] = format_table(*res.game);
            if (res.report) j["report"] = report_json(*res.report, cfg.seed);
            if (!res.note.empty()) j["note"] = res.note;
            emit(j.dump(2), cfg);
            return res.game ? kExitOk : kExitVerdict;
        }

        if (app.got_subcommand(c_gs)) {
            GammaFamily fam{chsh_xor(), chsh_xor(), 0, 1};
            Realization r = canonical_chsh_realization();
            bool swapped = false;
            if (family == "c1" || family == "c2") {
                const auto which =
                    family == "c1" ? Counterexample::kC1 : Counterexample::kC2;
                fam = counterexample_family(which);
                SeesawOptions opt;
                opt.restarts = restarts;
                opt.seed = cfg.seed;
                r = seesaw_maximize(fam.base, 2, 2, opt).realization;
            } else if (family == "tilted") {
                const TiltedPoint tp(theta);
                fam = tilted_family(tp);
                r = tp.realization();
            } else if (family == "tilted-prime" || family == "tilted-prime-balanced") {
                const TiltedPoint tp(theta);
                const GammaFamily direct = family == "tilted-prime"
                                               ? tilted_prime_family(tp)
                                               : tilted_prime_balanced_family(tp);
                fam = {swap_parties(direct.base), swap_parties(direct.direction),
                       direct.gamma_min, direct.gamma_max};
                r = swap_parties(tp.realization());
                swapped = true;
            } else {
                throw std::runtime_error(
                    "gamma-solve supports c1|c2|tilted|tilted-prime|tilted-prime-balanced");
            }
            const GammaSolution sol = solve_gamma(fam, r, 1e-6, cfg.ow_tol);
            OrderedJson j = gamma_json(sol, cfg.seed);
            if (swapped) j["note_direction"] = "solved on the swapped-party picture";
            emit(j.dump(2), cfg);
            return sol.gamma ? kExitOk : kExitVerdict;
        }

        if (app.got_subcommand(c_ss)) {
            const BellExpression expr = load_table(ss_table, "");
            int da, db;
            char comma;
            std::istringstream ds(ss_dims);
            if (!(ds >> da >> comma >> db))
                throw std::runtime_error("bad --dims, expected dA,dB");
            SeesawOptions opt;
            opt.restarts = restarts;
            opt.seed = cfg.seed;
            const SeesawResult res = seesaw_maximize(expr, da, db, opt);
            if (!ss_emit.empty()) save_realization(res.realization, ss_emit);
            OrderedJson j;
            j["value"] = res.value;
            j["best_restart"] = res.best_restart;
            j["restarts"] = restarts;
            j["seed"] = cfg.seed;
            emit(j.dump(2), cfg);
            return kExitOk;
        }

        if (app.got_subcommand(c_fam)) {
            const FamilyCase fc =
                make_family(fam_name, gamma, theta, dcount, cfg.seed, restarts);
            if (cfg.format == RunConfig::Format::kJson) {
                OrderedJson j;
                j["label"] = fc.expr.label();
                for (std::size_t i = 0; i < fc.param_names.size(); ++i)
                    j[fc.param_names[i]] = fc.params[i];
                j["table"] = format_table(fc.expr);
                j["local_bound"] = local_bound(fc.expr).value;
                emit(j.dump(2), cfg);
            } else {
                emit(render_table(fc.expr), cfg);
            }
            return kExitOk;
        }

        if (app.got_subcommand(c_scan)) {
            if (scan_name != "three-param")
                throw std::runtime_error("scan supports: three-param");
            std::ostringstream os;
            os << scan_csv_header({"alpha00", "alpha01", "alpha10", "alpha11"}) << '\n';
            bool all_ok = true;
            for (int i = 0; i < cfg.samples; ++i) {
                const std::uint64_t s = cfg.seed + static_cast<std::uint64_t>(i);
                std::mt19937_64 rng(s);
                const BoundaryPoint3Param p = boundary_sample(rng);
                const BellExpression game = weighted_xor_game(p);
                const Realization r = p.realization();
                const OwReport rep = ow_report(game, r, Steering::kAliceToBob, cfg.ow_tol);
                const double value = evaluate(game, behavior_of(r));
                all_ok = all_ok && rep.verdict;
                os << scan_csv_row(s, {p.a00, p.a01, p.a10, p.a11}, value, rep.max_gap,
                                   rep.verdict)
                   << '\n';
            }
            emit(os.str(), cfg);
            return all_ok ? kExitOk : kExitVerdict;
        }

        if (app.got_subcommand(c_cg)) {
            if (cg_report == "table1") {
                const OwReport rep = cglmp3_report(cfg.ow_tol);
                if (cfg.format == RunConfig::Format::kText) {
                    std::ostringstream os;
                    os << "(x,a)  lambda      expectation  gap\n";
                    for (const OwContext& c : rep.contexts) {
                        char line[96];
                        std::snprintf(line, sizeof line, "(%d,%d)  %-10.5f  %-11.5f  %.3e\n",
                                      c.context[0], c.context[1], c.lambda_max,
                                      c.expectation, c.gap);
                        os << line;
                    }
                    emit(os.str(), cfg);
                } else {
                    emit(report_json(rep, cfg.seed).dump(2), cfg);
                }
                return kExitOk;
            }
            const std::string which = cg_game == "zg" ? "zg" : "gd";
            const FamilyCase fc = make_family(which, 0, 0, dcount, cfg.seed, restarts);
            return emit_ow_report(ow_report(fc.expr, fc.realization, fc.direction,
                                            cfg.ow_tol),
                                  cfg, expect_ow);
        }

        if (app.got_subcommand(c_mm)) {
            const Steering type =
                mm_type == "i" ? Steering::kOneToTwo : Steering::kTwoToOne;
            const OwReport rep = tripartite_ow_report(mermin_expression(),
                                                      ghz_realization(), type, cfg.ow_tol);
            return emit_ow_report(rep, cfg, expect_ow);
        }

        if (app.got_subcommand(c_fx)) {
            Realization r = canonical_chsh_realization();
            if (fx_family == "chsh") r = canonical_chsh_realization();
            else if (fx_family == "tilted") r = TiltedPoint(theta).realization();
            else if (fx_family == "cglmp") r = cglmp_optimal_realization(dcount);
            else if (fx_family == "ghz") r = ghz_realization();
            else throw std::runtime_error("fixture families: chsh|tilted|cglmp|ghz");
            emit(realization_to_json(r), cfg);
            return kExitOk;
        }

        throw std::runtime_error("no subcommand handled");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
