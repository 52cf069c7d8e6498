#include "qfl/io.hpp"

#include <doctest.h>

#include <filesystem>

using namespace qfl;
using io::Json;

namespace {

const std::filesystem::path data_dir = QFL_DATA_DIR;

}  // namespace

TEST_CASE("rationals") {
    CHECK(parse_rational("3/8") == rat(3, 8));
    CHECK(parse_rational("-2/4") == rat(-1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(to_string(rat(6, 8)) == "3/4");
    CHECK(to_string(Rational(1)) == "1/1");
    CHECK(pretty(Rational(1)) == "1");
    CHECK(io::rational_from_json(Json(2), "x") == Rational(2));
    CHECK(io::rational_from_json(Json("5/16"), "x") == rat(5, 16));
    CHECK_THROWS_AS(io::rational_from_json(Json(0.5), "x"), ParseError);
    for (const Rational& r : {rat(0), rat(1, 3), rat(-7, 9), rat(1, 1 << 30)})
        CHECK(io::rational_from_json(io::to_json(r), "x") == r);
}

TEST_CASE("rational arithmetic overflow is detected") {
    Rational big = rat(1, 1LL << 62);
    CHECK_THROWS(big = big * big * big);
}

TEST_CASE("quantale files") {
    CHECK(std::get<TNorm>(io::load_quantale(data_dir / "quantales/godel.json")) == TNorm::godel());
    CHECK(std::get<TNorm>(io::load_quantale(data_dir / "quantales/lukasiewicz.json")) == TNorm::lukasiewicz());
    const TNorm b = std::get<TNorm>(io::load_quantale(data_dir / "quantales/block14.json"));
    CHECK(b == TNorm::build({{rat(1, 4), rat(1, 2), BlockKind::Lukasiewicz}}));
    CHECK(std::get<FiniteQuantale>(io::load_quantale(data_dir / "quantales/mv3.json")) == FiniteQuantale::mv3());
    const auto c5 = std::get<FiniteQuantale>(io::load_quantale(data_dir / "quantales/chain5-explicit.json"));
    CHECK(c5.size() == 5);
    CHECK(check_quantale_axioms(c5).empty());
    for (Elem a : c5.elements())
        for (Elem x : c5.elements()) CHECK(c5.tensor(a, x) == FiniteQuantale::chain5().tensor(a, x));
    const auto d = std::get<FiniteQuantale>(io::load_quantale(data_dir / "quantales/diamond.json"));
    CHECK_FALSE(d.is_chain());
    CHECK(check_quantale_axioms(d).empty());
    CHECK_THROWS_AS(io::load_quantale(data_dir / "quantales/bad-zero-denominator.json"), ParseError);
    CHECK_THROWS_AS(io::load_quantale(data_dir / "quantales/missing.json"), ParseError);
}

TEST_CASE("quantale definition errors") {
    CHECK_THROWS_AS(io::quantale_from_json(Json::parse(R"({"kind": "tnorm", "preset": "hamacher"})")), ParseError);
    CHECK_THROWS_AS(io::quantale_from_json(Json::parse(R"({"kind": "semiring"})")), ParseError);
    CHECK_THROWS_AS(io::quantale_from_json(Json::parse(
                        R"({"kind": "tnorm", "blocks": [{"lo": "1/4", "hi": "1/2", "kind": "HAMACHER"}]})")),
                    ParseError);
    CHECK_THROWS_AS(io::quantale_from_json(Json::parse(
                        R"({"kind": "tnorm", "blocks": [{"lo": "1/2", "hi": "1/4", "kind": "PRODUCT"}]})")),
                    ConstructionError);
    CHECK_THROWS_AS(io::quantale_from_json(Json::parse(
                        R"({"kind": "tnorm", "blocks": [{"lo": "0", "hi": "1", "kind": "PRODUCT", "x": 1}]})")),
                    ParseError);
    CHECK_THROWS_AS(io::quantale_from_json(Json::parse(
                        R"({"kind": "chain", "name": "c", "elements": ["0", "1"], "unit": "1", "tensor": [["0"]]})")),
                    ParseError);
}

TEST_CASE("quantale round trip") {
    const TNorm two = TNorm::build({{rat(1, 4), rat(1, 2), BlockKind::Lukasiewicz}, {rat(1, 2), rat(1), BlockKind::Product}});
    const Json j = io::to_json(two, "two");
    CHECK(std::get<TNorm>(io::quantale_from_json(j)) == two);
    for (const FiniteQuantale& q : FiniteQuantale::shipped_chains())
        CHECK(std::get<FiniteQuantale>(io::quantale_from_json(io::to_json(q))) == q);
    CHECK(io::quantale_name(io::QuantaleDef{two}) == describe(two));
}

TEST_CASE("semifilter serialization") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    const auto s = FunctionSpace::make(q, 2);
    for (const SemifilterTable& t : enumerate_semifilters(s, Requirement::Conical)) {
        const Json j = io::to_json(t);
        CHECK(j.at("entries").size() == 9);
        CHECK(io::semifilter_from_json(j, s) == t);
    }
    const Json basis = Json::parse(R"({"domain": 2, "basis": [["1/2", "0"]]})");
    const SemifilterTable th = theta(io::semifilter_from_json(basis, s));
    CHECK(th == io::semifilter_from_json(Json::parse(R"({"domain": 2, "basis": [["1/2", "1/2"]]})"), s));
    CHECK_THROWS_AS(io::semifilter_from_json(Json::parse(R"({"domain": 1, "basis": []})"), s), ParseError);
    CHECK_THROWS_AS(io::semifilter_from_json(Json::parse(R"({"domain": 2, "basis": [["1/3", "0"]]})"), s),
                    ParseError);
    CHECK_THROWS_AS(io::semifilter_from_json(Json::parse(R"({"domain": 2, "entries": [[["0", "0"], "0"]]})"), s),
                    ParseError);
    CHECK(io::qfunction_from_json(q, Json::parse(R"(["1/2", 1])"), 2) == QFunction<Elem>{elem(1), elem(2)});
}

TEST_CASE("scenario files") {
    const io::Scenario g = io::load_scenario(data_dir / "scenarios/godel3-laws.json");
    CHECK(std::get<FiniteQuantale>(g.quantale) == FiniteQuantale::godel3());
    CHECK(g.laws.seed == 20240611);
    CHECK(g.naturality.seed == 7);
    CHECK(g.laws.scenarios == 200);
    CHECK(g.maps.size() == 2);
    const io::Scenario b = io::load_scenario(data_dir / "scenarios/boolean-classical.json");
    CHECK(b.variant == Variant::Filter);
    REQUIRE(b.oracle.has_value());
    CHECK(*b.oracle == "classical");
    CHECK(b.oracle_max_size == 3);
    const io::Scenario t = io::load_scenario(data_dir / "scenarios/tight-budget.json");
    CHECK(t.laws.work_budget == 50);
    CHECK_FALSE(t.run_naturality);
    const io::Scenario c = io::load_scenario(data_dir / "scenarios/counterexample-block14.json");
    CHECK(c.witness_catalog.has_value());
    CHECK_THROWS_AS(io::scenario_from_json(Json::parse(R"({"quantale": {"kind": "finite", "preset": "mv3"},
                                                           "oracle": "ultrafilter"})"),
                                           data_dir),
                    ParseError);
    CHECK_THROWS_AS(io::scenario_from_json(Json::parse(R"({"quantale": {"kind": "finite", "preset": "mv3"},
                                                           "colour": 1})"),
                                           data_dir),
                    ParseError);
}
