#pragma once

#include "qfl/classical.hpp"
#include "qfl/counterexample.hpp"
#include "qfl/io.hpp"
#include "qfl/monad.hpp"
#include "qfl/quantale.hpp"

#include <string>

namespace qfl::report {

using io::Json;

// Structured reports are ordered JSON objects; the text form is rendered
// from the same object, so both carry exactly the same information.
std::string render_text(const Json& report);

Json to_json(const ConditionS& cs);
Json to_json(const ContinuityProbe& probe);
Json to_json(const LawReport& r);
Json to_json(const NaturalityReport& r);
Json to_json(const ClassicalComparison& c);
Json to_json(const CounterexampleResult& r);

template <class V>
Json to_json(const std::vector<LawViolation<V>>& violations, auto&& show) {
    Json out = Json::array();
    for (const auto& v : violations) {
        Json w = Json::array();
        for (const V& x : v.witness) w.push_back(show(x));
        out.push_back({{"law", v.law}, {"witness", w}});
    }
    return out;
}

}  // namespace qfl::report
