#include "qfl/report.hpp"

#include <sstream>

namespace qfl::report {

namespace {

std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

bool flat(const Json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const Json& x : v)
        if (x.is_array() || x.is_object()) return false;
    return true;
}

void render(std::ostringstream& out, const Json& j, std::size_t indent);

void render_value(std::ostringstream& out, const std::string& key, const Json& v, std::size_t indent) {
    const std::string pad(indent, ' ');
    if (v.is_array() && flat(v)) {
        out << pad << key << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
        out << "]\n";
    } else if (v.is_array()) {
        out << pad << key << ":\n";
        for (const Json& item : v) {
            if (item.is_object()) {
                out << pad << "  -\n";
                render(out, item, indent + 4);
            } else {
                render_value(out, "-", item, indent + 2);
            }
        }
    } else if (v.is_object()) {
        out << pad << key << ":\n";
        render(out, v, indent + 2);
    } else {
        out << pad << key << ": " << scalar(v) << "\n";
    }
}

void render(std::ostringstream& out, const Json& j, std::size_t indent) {
    for (const auto& [k, v] : j.items()) render_value(out, k, v, indent);
}

Json rat(const Rational& r) { return qfl::to_string(r); }

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream out;
    if (report.is_object()) {
        render(out, report, 0);
    } else {
        render_value(out, "report", report, 0);
    }
    return out.str();
}

Json to_json(const ConditionS& cs) {
    Json j;
    j["satisfied"] = cs.satisfied;
    j["witness"] = cs.witness ? Json(describe(*cs.witness)) : Json(nullptr);
    return j;
}

Json to_json(const ContinuityProbe& p) {
    Json j;
    j["pairs_checked"] = p.pairs_checked;
    j["jump_found"] = p.jump_found;
    if (p.jump_found) {
        j["at"] = Json::array({rat(p.x), rat(p.y)});
        j["next"] = Json::array({rat(p.x2), rat(p.y2)});
        j["jump"] = rat(p.jump);
        j["allowed"] = rat(p.allowed);
    }
    return j;
}

Json to_json(const LawReport& r) {
    Json j;
    j["quantale"] = r.quantale;
    j["variant"] = qfl::to_string(r.variant);
    j["seed"] = r.seed;
    j["scenarios_requested"] = r.requested;
    j["scenarios_completed"] = r.completed;
    j["kleisli_extensions"] = r.extensions;
    j["complete"] = r.complete;
    Json laws = Json::array();
    for (std::size_t k = 0; k < law_names.size(); ++k) {
        std::size_t failures = 0;
        for (const LawFailure& f : r.failures) failures += f.law == law_names[k];
        laws.push_back({{"law", law_names[k]},
                        {"checks", r.checks[k]},
                        {"failures", failures},
                        {"result", failures == 0 && r.checks[k] > 0 ? "pass" : (failures ? "fail" : "unchecked")}});
    }
    j["laws"] = laws;
    Json failures = Json::array();
    for (const LawFailure& f : r.failures)
        failures.push_back({{"scenario", f.scenario}, {"seed", f.seed}, {"law", f.law}, {"witness", f.detail}});
    j["failures"] = failures;
    j["passed"] = r.passed();
    return j;
}

Json to_json(const NaturalityReport& r) {
    Json j;
    j["quantale"] = r.quantale;
    Json checks = Json::array();
    for (const NaturalityCheck& c : r.checks) {
        Json e{{"check", c.name}, {"instances", c.instances}, {"failures", c.failures},
               {"result", c.failures == 0 ? "pass" : "fail"}};
        if (c.failures) e["first_failure"] = c.first_failure;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["passed"] = r.passed();
    return j;
}

Json to_json(const ClassicalComparison& c) {
    Json j;
    j["max_size"] = c.max_size;
    j["filters_compared"] = c.filters_compared;
    j["enumeration_match"] = c.enumeration_match;
    j["scenarios"] = c.scenarios;
    j["extensions_compared"] = c.extensions_compared;
    j["mismatches"] = c.mismatches;
    if (!c.first_mismatch.empty()) j["first_mismatch"] = c.first_mismatch;
    j["oracle_match"] = c.passed();
    return j;
}

Json to_json(const CounterexampleResult& r) {
    Json j;
    j["tnorm"] = describe(r.tnorm);
    j["condition_s"] = r.condition_s;
    j["s_witness"] = r.s_witness ? Json(describe(*r.s_witness)) : Json(nullptr);
    j["variant_requested"] = qfl::to_string(r.requested_variant);
    j["variant"] = qfl::to_string(r.variant);
    j["p"] = rat(r.p);
    j["q"] = rat(r.q);
    j["t"] = rat(r.t);
    j["s"] = rat(r.s);
    if (r.variant == Variant::Bounded) j["epsilon"] = rat(r.epsilon);
    j["truncation"] = r.truncation;
    j["catalog_size"] = r.catalog_size;
    j["f_sharp_identity"] = {{"checks", r.identity_checks},
                             {"failures", r.identity_failures},
                             {"first_failure", r.identity_first_failure.empty() ? Json(nullptr)
                                                                                : Json(r.identity_first_failure)}};
    j["step1_value"] = rat(r.step1.value);
    j["step1_exact"] = r.step1.exact;
    j["step2_catalog_value"] = rat(r.step2_catalog.value);
    j["step2_catalog_exact"] = r.step2_catalog.exact;
    j["step2_bound"] = rat(r.step2_bound);
    j["certified"] = r.certified;
    j["certificate"] = r.certificate;
    j["certificate_failure"] = r.certificate_failure.empty() ? Json(nullptr) : Json(r.certificate_failure);
    j["collapse_checks"] = r.collapse_checks;
    j["collapse_failures"] = r.collapse_failures;
    j["sound"] = r.sound;
    j["raw_verdict"] = qfl::to_string(r.raw);
    j["verdict"] = qfl::to_string(r.verdict);
    j["consistent"] = r.consistent;
    j["may_underapproximate"] = r.may_underapproximate;
    j["notes"] = r.notes;
    return j;
}

}  // namespace qfl::report
