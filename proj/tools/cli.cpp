#include "cli.hpp"

#include "qfl/classical.hpp"
#include "qfl/counterexample.hpp"
#include "qfl/errors.hpp"
#include "qfl/io.hpp"
#include "qfl/monad.hpp"
#include "qfl/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace qfl::cli {

namespace {

using io::Json;

struct Options {
    std::string quantale;
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::optional<std::size_t> truncation;
    std::optional<std::string> variant;
    std::optional<std::string> t, s, epsilon;
    std::vector<std::string> checks;
    std::string out;
    std::string format = "text";
};

struct Outcome {
    Json report;
    int code = ok;
};

std::size_t workers_from_env() {
    const char* raw = std::getenv("QFL_WORKERS");
    if (raw == nullptr || *raw == '\0') return std::max(1u, std::thread::hardware_concurrency());
    char* end = nullptr;
    const unsigned long n = std::strtoul(raw, &end, 10);
    if (*end != '\0' || n == 0 || n > 256) throw UsageError("QFL_WORKERS must be an integer in 1..256");
    return n;
}

Json show_rational(const Rational& r) { return io::to_json(r); }

// ---------------------------------------------------------------------------
// quantale

const std::vector<std::string> tnorm_checks{"axioms", "s", "idempotents", "continuity", "residuum-zero"};
const std::vector<std::string> finite_checks{"axioms"};

std::vector<std::string> resolve_checks(std::vector<std::string> requested, bool finite) {
    const std::vector<std::string>& known = finite ? finite_checks : tnorm_checks;
    if (requested.empty()) return finite ? finite_checks : std::vector<std::string>{"axioms", "s"};
    std::vector<std::string> out;
    for (std::string c : requested) {
        std::transform(c.begin(), c.end(), c.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (c == "all") return known;
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw UsageError("check \"" + c + "\" is not available for " +
                             (finite ? "finite quantales" : "t-norms"));
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
}

constexpr unsigned grid_exponent = 6;

Json idempotent_check(const TNorm& t, bool& passed) {
    std::vector<Rational> idempotents;
    for (const Block& b : t.blocks()) {
        for (const Rational& e : {b.lo, b.hi})
            if (e > Rational(0) && e < Rational(1) &&
                std::find(idempotents.begin(), idempotents.end(), e) == idempotents.end())
                idempotents.push_back(e);
    }
    const std::vector<Rational> grid = dyadic_grid(grid_exponent);
    std::size_t pairs = 0;
    Json violations = Json::array();
    for (const Rational& p : idempotents) {
        for (const Rational& x : grid) {
            if (x > p) break;
            for (const Rational& y : grid) {
                if (y < p) continue;
                ++pairs;
                if (t.tensor(x, y) != x && violations.size() < 16)
                    violations.push_back(Json::array({show_rational(x), show_rational(y)}));
            }
        }
    }
    passed = violations.empty();
    Json j;
    j["idempotents"] = Json::array();
    for (const Rational& p : idempotents) j["idempotents"].push_back(show_rational(p));
    j["pairs_checked"] = pairs;
    j["violations"] = violations;
    j["result"] = passed ? "pass" : "fail";
    return j;
}

Outcome cmd_quantale(const Options& opt) {
    if (opt.quantale.empty()) throw UsageError("quantale needs --quantale PATH");
    const io::QuantaleDef def = io::load_quantale(opt.quantale);
    const bool finite = std::holds_alternative<FiniteQuantale>(def);
    const std::vector<std::string> checks = resolve_checks(opt.checks, finite);

    Outcome o;
    Json& r = o.report;
    r["command"] = "quantale";
    r["quantale"] = io::quantale_name(def);
    r["definition"] = finite ? io::to_json(std::get<FiniteQuantale>(def))
                             : io::to_json(std::get<TNorm>(def), io::quantale_name(def));
    r["checks"] = checks;
    bool all_passed = true;
    auto record = [&](bool passed) { all_passed = all_passed && passed; };

    if (finite) {
        const FiniteQuantale& q = std::get<FiniteQuantale>(def);
        const std::vector<Elem> all = q.elements();
        const auto violations =
            check_laws(q, std::span<const Elem>(all), quantale_laws | Law::Adjunction, static_cast<std::size_t>(-1));
        const auto show = [&](Elem a) { return show_rational(q.label(a)); };
        r["axioms"] = {{"elements", all.size()},
                       {"violations", report::to_json(violations, show)},
                       {"result", violations.empty() ? "pass" : "fail"}};
        record(violations.empty());
    } else {
        const TNorm& t = std::get<TNorm>(def);
        for (const std::string& c : checks) {
            if (c == "axioms") {
                const auto violations = check_tnorm_on_grid(t, grid_exponent, quantale_laws | Law::Adjunction);
                r["axioms"] = {{"grid", "1/" + std::to_string(1u << grid_exponent)},
                               {"violations", report::to_json(violations, show_rational)},
                               {"result", violations.empty() ? "pass" : "fail"}};
                record(violations.empty());
            } else if (c == "s") {
                const ConditionS cs = check_condition_s(t);
                r["condition (S)"] = cs.satisfied ? "satisfied" : "violated";
                r["condition (S) witness"] = cs.witness ? Json(describe(*cs.witness)) : Json(nullptr);
                record(cs.satisfied);
            } else if (c == "idempotents") {
                bool passed = true;
                r["idempotents"] = idempotent_check(t, passed);
                record(passed);
            } else if (c == "continuity") {
                const ContinuityProbe p = probe_residuum_continuity(t, grid_exponent);
                Json j = report::to_json(p);
                j["result"] = p.jump_found ? "fail" : "pass";
                r["continuity"] = j;
                record(!p.jump_found);
            } else if (c == "residuum-zero") {
                const Rational exact = sup_residuum_to_zero(t);
                const Rational grid = grid_sup_residuum_to_zero(t, grid_exponent);
                const bool passed = grid <= exact && exact <= grid + Rational(1, 1 << grid_exponent);
                r["residuum-zero"] = {{"sup", show_rational(exact)},
                                      {"grid_max", show_rational(grid)},
                                      {"result", passed ? "pass" : "fail"}};
                record(passed);
            }
        }
    }
    r["result"] = all_passed ? "pass" : "fail";
    o.code = all_passed ? ok : math_failure;
    return o;
}

// ---------------------------------------------------------------------------
// laws

struct MapCheck {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

Json map_checks(const FiniteQuantale& q, const io::Scenario& sc, Variant v, std::uint64_t seed, bool& passed) {
    std::vector<KleisliMap> maps;
    std::vector<MapCheck> results;
    for (const io::ExplicitMap& m : sc.maps) {
        const SpacePtr codomain = FunctionSpace::make(q, m.codomain);
        KleisliMap k{codomain, {}};
        for (std::size_t x = 0; x < m.values.size(); ++x) {
            SemifilterTable t = io::semifilter_from_json(m.values[x], codomain);
            if (!admissible(t, v))
                throw UsageError("map \"" + m.name + "\" value at " + std::to_string(x) + " is not an admissible " +
                                 std::string(to_string(v)) + " table: " + compact(t));
            k.values.push_back(std::move(t));
        }
        maps.push_back(std::move(k));
        results.push_back({m.name, 0, 0, {}});
    }
    auto fail = [](MapCheck& c, std::string what) {
        if (c.failures++ == 0) c.first_failure = std::move(what);
    };
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const KleisliMap& f = maps[i];
        MapCheck& c = results[i];
        const SpacePtr X = FunctionSpace::make(q, f.domain_size());
        const KleisliMap d = unit_map(X, v);
        for (std::size_t x = 0; x < f.domain_size(); ++x) {
            ++c.checks;
            const SemifilterTable lhs = kleisli_extend(f, d.values[x], v);
            if (!(lhs == f.values[x])) fail(c, "f#(d(" + std::to_string(x) + ")) = " + compact(lhs));
            ++c.checks;
            const SemifilterTable id = kleisli_extend(unit_map(f.codomain, v), f.values[x], v);
            if (!(id == f.values[x])) fail(c, "d#(f(" + std::to_string(x) + ")) = " + compact(id));
        }
        if (i + 1 < maps.size() && maps[i + 1].domain_size() == f.codomain->domain_size()) {
            const KleisliMap& g = maps[i + 1];
            const KleisliMap gf = kleisli_compose(g, f, v);
            std::vector<SemifilterTable> samples = d.values;
            for (int k = 0; k < 8 && (v != Variant::Filter || X->domain_size() > 0); ++k)
                samples.push_back(random_admissible(X, v, rng, 2));
            for (const SemifilterTable& F : samples) {
                ++c.checks;
                const SemifilterTable lhs = kleisli_extend(g, kleisli_extend(f, F, v), v);
                const SemifilterTable rhs = kleisli_extend(gf, F, v);
                if (!(lhs == rhs)) fail(c, "associativity at F=" + compact(F));
            }
        }
    }
    Json out = Json::array();
    passed = true;
    for (const MapCheck& c : results) {
        Json e{{"map", c.name}, {"checks", c.checks}, {"failures", c.failures},
               {"result", c.failures == 0 ? "pass" : "fail"}};
        if (c.failures) e["first_failure"] = c.first_failure;
        out.push_back(e);
        passed = passed && c.failures == 0;
    }
    return out;
}

Outcome cmd_laws(const Options& opt) {
    if (opt.scenario.empty()) throw UsageError("laws needs --scenario PATH");
    io::Scenario sc = io::load_scenario(opt.scenario);
    if (!std::holds_alternative<FiniteQuantale>(sc.quantale))
        throw UsageError("law suites run on finite quantales; " + io::quantale_name(sc.quantale) + " is a t-norm");
    const FiniteQuantale& q = std::get<FiniteQuantale>(sc.quantale);
    if (opt.variant) sc.laws.variant = sc.variant = parse_variant(*opt.variant);
    if (opt.seed) sc.laws.seed = sc.naturality.seed = *opt.seed;
    if (opt.budget) {
        if (*opt.budget == 0) throw UsageError("--budget must be positive");
        sc.laws.work_budget = *opt.budget;
    }
    sc.laws.workers = workers_from_env();

    Outcome o;
    Json& r = o.report;
    r["command"] = "laws";
    r["scenario"] = opt.scenario;
    r["quantale"] = q.name();
    r["variant"] = to_string(sc.variant);
    r["seed"] = sc.laws.seed;
    r["naturality_seed"] = sc.naturality.seed;

    bool passed = true;
    bool budget_ok = true;
    if (!sc.maps.empty()) {
        bool maps_passed = true;
        r["maps"] = map_checks(q, sc, sc.variant, sc.laws.seed, maps_passed);
        passed = passed && maps_passed;
    }
    const LawReport laws = check_monad_laws(q, sc.laws);
    r["laws"] = report::to_json(laws);
    passed = passed && laws.failures.empty();
    budget_ok = laws.complete;
    if (sc.run_naturality) {
        const NaturalityReport nat = check_naturality(q, sc.naturality);
        r["naturality"] = report::to_json(nat);
        passed = passed && nat.passed();
    }
    if (sc.oracle) {
        const ClassicalComparison cc = compare_with_classical(sc.oracle_max_size, sc.laws.scenarios, sc.laws.seed);
        r["classical_oracle"] = report::to_json(cc);
        r["oracle_match"] = cc.passed();
        passed = passed && cc.passed();
    }
    r["result"] = !passed ? "fail" : (budget_ok ? "pass" : "budget exhausted");
    o.code = !passed ? math_failure : (budget_ok ? ok : budget_exhausted);
    return o;
}

// ---------------------------------------------------------------------------
// counterexample

Outcome cmd_counterexample(const Options& opt) {
    if (opt.quantale.empty() == opt.scenario.empty())
        throw UsageError("counterexample needs exactly one of --quantale PATH or --scenario PATH");
    CounterexampleParams p;
    io::QuantaleDef def;
    std::string source;
    if (!opt.scenario.empty()) {
        const io::Scenario sc = io::load_scenario(opt.scenario);
        def = sc.quantale;
        p.variant = sc.variant;
        if (sc.witness_catalog) p.catalog = *sc.witness_catalog;
        source = opt.scenario;
    } else {
        def = io::load_quantale(opt.quantale);
        source = opt.quantale;
    }
    if (!std::holds_alternative<TNorm>(def))
        throw UsageError("counterexample needs a continuous t-norm; " + io::quantale_name(def) + " is finite");
    p.tnorm = std::get<TNorm>(def);
    if (opt.variant) p.variant = parse_variant(*opt.variant);
    if (opt.t) p.t = parse_rational(*opt.t);
    if (opt.s) p.s = parse_rational(*opt.s);
    if (opt.epsilon) p.epsilon = parse_rational(*opt.epsilon);
    if (opt.truncation) {
        if (*opt.truncation == 0) throw UsageError("--truncation must be positive");
        p.truncation = *opt.truncation;
    }
    if (opt.budget) {
        if (*opt.budget == 0) throw UsageError("--budget must be positive");
        p.catalog.max_size = *opt.budget;
    }

    const CounterexampleResult res = run_counterexample(p);
    Outcome o;
    Json& r = o.report;
    r["command"] = "counterexample";
    r["source"] = source;
    r["quantale"] = io::quantale_name(def);
    const Json body = report::to_json(res);
    for (const auto& [k, v] : body.items()) r[k] = v;
    r["result"] = res.consistent ? "pass" : "fail";
    o.code = res.consistent ? ok : math_failure;
    return o;
}

void emit(const Outcome& o, const Options& opt, std::ostream& out) {
    const std::string body = opt.format == "structured" ? o.report.dump(2) + "\n" : report::render_text(o.report);
    if (opt.out.empty()) {
        out << body;
        return;
    }
    std::ofstream file(opt.out);
    if (!file) throw UsageError("cannot write report to " + opt.out);
    file << body;
    if (!file) throw UsageError("cannot write report to " + opt.out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantale-valued filter verification lab", "qfl"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out, "Write the report to PATH instead of stdout");
        sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    };
    CLI::App* quantale = app.add_subcommand("quantale", "Check a quantale definition");
    quantale->add_option("--quantale", opt.quantale, "Quantale definition file")->required();
    quantale->add_option("--check", opt.checks,
                         "Checks: axioms, s, idempotents, continuity, residuum-zero, all")
        ->delimiter(',');
    common(quantale);

    CLI::App* laws = app.add_subcommand("laws", "Run monad-law and naturality suites from a scenario");
    laws->add_option("--scenario", opt.scenario, "Scenario file")->required();
    laws->add_option("--seed", opt.seed, "Override the scenario seeds");
    laws->add_option("--budget", opt.budget, "Kleisli-extension work budget");
    laws->add_option("--variant", opt.variant, "plain, filter or bounded");
    common(laws);

    CLI::App* cex = app.add_subcommand("counterexample", "Run the multiplication-associativity counterexample");
    cex->add_option("--quantale", opt.quantale, "T-norm definition file");
    cex->add_option("--scenario", opt.scenario, "Scenario file with a t-norm and witness catalog");
    cex->add_option("--t", opt.t, "Rational t");
    cex->add_option("--s", opt.s, "Rational s");
    cex->add_option("--epsilon", opt.epsilon, "Bounded-variant epsilon");
    cex->add_option("--truncation", opt.truncation, "Number of sample points 1/m");
    cex->add_option("--budget", opt.budget, "Witness catalog cap");
    cex->add_option("--variant", opt.variant, "plain, filter or bounded");
    common(cex);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return ok;
        }
        err << "error: " << e.what() << "\n";
        return input_error;
    }

    try {
        Outcome o;
        if (quantale->parsed()) o = cmd_quantale(opt);
        if (laws->parsed()) o = cmd_laws(opt);
        if (cex->parsed()) o = cmd_counterexample(opt);
        emit(o, opt, out);
        return o.code;
    } catch (const ResourceError& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return budget_exhausted;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
}

}  // namespace qfl::cli
