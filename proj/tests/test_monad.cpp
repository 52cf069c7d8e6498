#include "qfl/monad.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qfl;

namespace {

QFunction<Elem> fn(const FiniteQuantale& q, std::initializer_list<Rational> values) {
    QFunction<Elem> out;
    for (const Rational& v : values) out.push_back(q.at(v));
    return out;
}

SemifilterTable lambda_at(const SpacePtr& s, const QFunction<Elem>& f) {
    return lambda_of(s, std::vector<Code>{s->code(f)});
}

constexpr Variant variants[] = {Variant::Plain, Variant::Filter, Variant::Bounded};

}  // namespace

TEST_CASE("variants") {
    CHECK(parse_variant("BOUNDED") == Variant::Bounded);
    CHECK(parse_variant("filter") == Variant::Filter);
    CHECK_THROWS_AS(parse_variant("tilde"), ParseError);
    CHECK(to_string(Variant::Plain) == "plain");
}

TEST_CASE("build_d") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    const auto s1 = FunctionSpace::make(q, 1);
    const auto s2 = FunctionSpace::make(q, 2);
    const auto plain = build_d(s2, Variant::Plain);
    REQUIRE(plain.size() == 2);
    CHECK(plain[0] == unit_e(s2, 0));
    CHECK(plain[1] == unit_e(s2, 1));
    CHECK(build_d(s2, Variant::Filter) == plain);
    CHECK(build_d(s1, Variant::Bounded).front() == unit_e(s1, 0));
    CHECK(build_d(s2, Variant::Bounded)[0] == lambda_at(s2, fn(q, {Rational(1), rat(1, 2)})));
    for (Variant v : variants)
        for (const SemifilterTable& d : build_d(s2, v)) CHECK(admissible(d, v));
}

TEST_CASE("build_n") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    const auto s2 = FunctionSpace::make(q, 2);
    const SemifilterTable g = lambda_at(s2, fn(q, {rat(1, 2), Rational(1)}));
    const SubUniverse one(s2, {g});
    CHECK(build_n(one, unit_e(FunctionSpace::make(q, 1), 0), Variant::Plain) == g);

    const SemifilterTable h = unit_e(s2, 1);
    const SubUniverse two(s2, {g, h});
    const auto outer = FunctionSpace::make(q, 2);
    const std::vector<SemifilterTable> both{g, h};
    CHECK(build_n(two, lambda_of(outer, std::vector<Code>{outer->constant(q.top())}), Variant::Plain) == meet(both));

    const auto all = enumerate_semifilters(s2, Requirement::All);
    const SemifilterTable bad = *std::find_if(all.begin(), all.end(), [](const auto& t) { return !is_conical(t); });
    CHECK_THROWS_AS(build_n(SubUniverse(s2, {bad}), unit_e(FunctionSpace::make(q, 1), 0), Variant::Plain), UsageError);
    CHECK_THROWS_AS(build_n(SubUniverse(s2, {unit_e(s2, 0)}), unit_e(FunctionSpace::make(q, 1), 0), Variant::Bounded),
                    UsageError);
}

TEST_CASE("Kleisli extension of lifted maps is the image") {
    for (const FiniteQuantale& q : {FiniteQuantale::godel3(), FiniteQuantale::mv3()}) {
        const auto s2 = FunctionSpace::make(q, 2);
        for (Variant v : variants) {
            for (const SemifilterTable& t : enumerate_semifilters(s2, Requirement::Conical)) {
                if (!admissible(t, v)) continue;
                for (const FiniteMap& f : FiniteMap::all(2, 2)) {
                    const KleisliMap h = lift_map(f, s2, v);
                    const SemifilterTable ext = kleisli_extend(h, t, v);
                    REQUIRE(ext == image_semifilter(f, t, s2, v == Variant::Bounded));
                    REQUIRE(ext == kleisli_extend_direct(h, t, v));
                }
            }
        }
    }
}

TEST_CASE("unit laws on all admissible tables") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    const auto s2 = FunctionSpace::make(q, 2);
    for (Variant v : variants) {
        const KleisliMap d = unit_map(s2, v);
        std::vector<SemifilterTable> adm;
        for (const SemifilterTable& t : enumerate_semifilters(s2, Requirement::Conical))
            if (admissible(t, v)) adm.push_back(t);
        for (const SemifilterTable& t : adm) REQUIRE(kleisli_extend(d, t, v) == t);
        for (const SemifilterTable& a : adm)
            for (const SemifilterTable& b : adm) {
                const KleisliMap h{s2, {a, b}};
                for (std::size_t x = 0; x < 2; ++x) REQUIRE(kleisli_extend(h, d.values[x], v) == h.values[x]);
            }
    }
}

TEST_CASE("Kleisli errors") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    const auto s1 = FunctionSpace::make(q, 1);
    const auto s2 = FunctionSpace::make(q, 2);
    const KleisliMap h = unit_map(s2, Variant::Plain);
    CHECK_THROWS_AS(kleisli_extend(h, unit_e(s1, 0), Variant::Plain), UsageError);
    CHECK_THROWS_AS(kleisli_compose(h, unit_map(s1, Variant::Plain), Variant::Plain), UsageError);
    CHECK_THROWS_AS(lift_map(FiniteMap::identity(1), s2, Variant::Plain), UsageError);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(random_admissible(FunctionSpace::make(q, 0), Variant::Filter, rng, 2), UsageError);
}

TEST_CASE("random admissible tables") {
    for (const FiniteQuantale& q : FiniteQuantale::shipped_chains()) {
        std::mt19937_64 rng(42);
        for (std::size_t n = 0; n <= 2; ++n) {
            const auto s = FunctionSpace::make(q, n);
            for (Variant v : variants) {
                if (v == Variant::Filter && n == 0) continue;
                for (int i = 0; i < 20; ++i) REQUIRE(admissible(random_admissible(s, v, rng, 3), v));
            }
        }
    }
}

TEST_CASE("law suite") {
    LawConfig config;
    config.scenarios = 40;
    for (Variant v : variants) {
        config.variant = v;
        const LawReport r = check_monad_laws(FiniteQuantale::godel3(), config);
        CHECK(r.passed());
        CHECK(r.completed == 40);
        CHECK(r.checks[0] > 0);
        CHECK(r.checks[1] > 0);
        CHECK(r.checks[2] > 0);
    }
    config.variant = Variant::Plain;
    config.workers = 3;
    const LawReport parallel = check_monad_laws(FiniteQuantale::mv3(), config);
    config.workers = 1;
    const LawReport serial = check_monad_laws(FiniteQuantale::mv3(), config);
    CHECK(parallel.extensions == serial.extensions);
    CHECK(parallel.checks == serial.checks);
    CHECK(parallel.passed());
}

TEST_CASE("law suite budget") {
    LawConfig config;
    config.scenarios = 50;
    config.work_budget = 20;
    const LawReport r = check_monad_laws(FiniteQuantale::godel3(), config);
    CHECK_FALSE(r.complete);
    CHECK_FALSE(r.passed());
    CHECK(r.completed < 50);
}

TEST_CASE("naturality") {
    NaturalityConfig config;
    config.samples = 10;
    for (const FiniteQuantale& q : {FiniteQuantale::godel3(), FiniteQuantale::mv3()}) {
        const NaturalityReport r = check_naturality(q, config);
        CHECK(r.passed());
        REQUIRE(r.checks.size() >= 6);
        for (const NaturalityCheck& c : r.checks) {
            CAPTURE(c.name);
            CHECK(c.instances > 0);
            CHECK(c.failures == 0);
        }
    }
}

TEST_CASE("compact rendering") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    CHECK(compact(q, fn(q, {rat(1, 2), Rational(1)})) == "(1/2,1)");
    CHECK(compact(unit_e(FunctionSpace::make(q, 1), 0)) == "[0,1/2,1]");
}
