#include "qfl/counterexample.hpp"

#include <doctest.h>

using namespace qfl;

namespace {

TNorm block14() { return TNorm::build({{rat(1, 4), rat(1, 2), BlockKind::Lukasiewicz}}); }

CounterexampleParams params(const TNorm& t, Variant v = Variant::Plain) {
    CounterexampleParams p;
    p.tnorm = t;
    p.variant = v;
    p.truncation = 1000;
    return p;
}

}  // namespace

TEST_CASE("descriptor ranges") {
    const Rational slope = rat(1, 4);
    const FunctionDescriptor c = FunctionDescriptor::constant(rat(1, 3), 10, slope);
    CHECK(c.global_inf() == rat(1, 3));
    CHECK(c.tail_liminf() == rat(1, 3));
    CHECK(c.is_bounded());
    const FunctionDescriptor two = FunctionDescriptor::two_valued(Rational(0), Rational(1), 10, slope);
    CHECK(two.at_one() == Rational(1));
    CHECK(two.global_inf() == Rational(0));
    CHECK(two.inf_off_one() == Rational(0));
    CHECK_FALSE(two.is_bounded());

    // gamma(x) = (1/4)(1 - x) on the samples 1/m, m <= 10, and beyond.
    std::vector<Rational> samples;
    for (long long m = 1; m <= 10; ++m) samples.push_back(slope * (Rational(1) - rat(1, m)));
    const FunctionDescriptor gamma("gamma", slope, samples, slope, Piece::ramp(Rational(0), slope),
                                   Piece::ramp(Rational(0), slope));
    CHECK(gamma.sample(2) == rat(1, 8));
    CHECK(gamma.tail_liminf() == slope);
    CHECK(gamma.global_inf() == Rational(0));
    const ValueRange tr = gamma.tail_range();
    CHECK(tr.vmin == slope * rat(10, 11));
    CHECK(tr.vmax == slope);
    CHECK_FALSE(tr.max_attained);
    CHECK_THROWS_AS(FunctionDescriptor("bad", slope, {rat(3, 2)}, Rational(0), Piece::constant(Rational(0)),
                                       Piece::constant(Rational(0))),
                    UsageError);
}

TEST_CASE("combine and sub") {
    const TNorm t = block14();
    const Rational slope = rat(1, 4);
    const auto a = FunctionDescriptor::constant(rat(3, 8), 5, slope);
    const auto b = FunctionDescriptor::constant(rat(5, 16), 5, slope);
    const auto r = combine(t, PointwiseOp::Residuum, a, b);
    REQUIRE(r.has_value());
    CHECK(r->global_inf() == rat(7, 16));
    const auto j = combine(t, PointwiseOp::Join, a, b);
    REQUIRE(j.has_value());
    CHECK(j->global_inf() == rat(3, 8));
    const Bound s = sub(t, a, b);
    CHECK(s.exact);
    CHECK(s.value == rat(7, 16));
    CHECK(sub(t, b, a).value == Rational(1));
    const auto other = FunctionDescriptor::constant(rat(3, 8), 6, slope);
    CHECK_THROWS_AS(sub(t, a, other), UsageError);
    CHECK(to_string(PointwiseOp::Meet) == "&");
}

TEST_CASE("violation for the interior Lukasiewicz block") {
    for (Variant v : {Variant::Plain, Variant::Filter, Variant::Bounded}) {
        CAPTURE(to_string(v));
        CounterexampleParams p = params(block14(), v);
        p.t = rat(3, 8);
        p.s = rat(3, 8);
        const CounterexampleResult r = run_counterexample(p);
        CHECK(r.p == rat(1, 4));
        CHECK(r.q == rat(1, 2));
        CHECK(r.step1.value == Rational(1));
        CHECK(r.step1.exact);
        CHECK(r.step2_bound <= rat(1, 4));
        CHECK(r.certified);
        CHECK(r.sound);
        CHECK(r.identity_failures == 0);
        CHECK(r.identity_checks == r.catalog_size);
        CHECK(r.verdict == Verdict::Violation);
        CHECK(r.consistent);
        CHECK(r.variant == v);
    }
}

TEST_CASE("truncation never weakens the verdict") {
    for (std::size_t n : {10, 100, 1000}) {
        CounterexampleParams p = params(block14());
        p.truncation = n;
        const CounterexampleResult r = run_counterexample(p);
        CHECK(r.verdict == Verdict::Violation);
        CHECK(r.step2_bound == rat(1, 4));
    }
}

TEST_CASE("two-block t-norm") {
    const TNorm t = TNorm::build({{rat(0), rat(1, 3), BlockKind::Product}, {rat(1, 2), rat(3, 4), BlockKind::Lukasiewicz}});
    const CounterexampleResult r = run_counterexample(params(t));
    CHECK(r.p == rat(1, 2));
    CHECK(r.t == rat(5, 8));
    CHECK(r.verdict == Verdict::Violation);
}

TEST_CASE("t-norms with condition (S) are expected to show no violation") {
    for (const TNorm& t : {TNorm::godel(), TNorm::product(), TNorm::lukasiewicz()}) {
        for (Variant v : {Variant::Plain, Variant::Filter, Variant::Bounded}) {
            const CounterexampleResult r = run_counterexample(params(t, v));
            CHECK(r.condition_s);
            CHECK(r.verdict == Verdict::NoViolationExpected);
            CHECK(r.raw != Verdict::Violation);
            CHECK(r.consistent);
        }
    }
    const CounterexampleResult g = run_counterexample(params(TNorm::godel()));
    CHECK(g.step1.value == g.step2_catalog.value);
    const CounterexampleResult l = run_counterexample(params(TNorm::lukasiewicz(), Variant::Bounded));
    CHECK(l.variant == Variant::Plain);
    CHECK_FALSE(l.notes.empty());
}

TEST_CASE("precondition errors") {
    CounterexampleParams p = params(block14());
    p.t = rat(3, 8);
    p.s = rat(1, 4);
    CHECK_THROWS_AS(run_counterexample(p), PreconditionError);
    p.s = rat(7, 16);
    CHECK_THROWS_AS(run_counterexample(p), PreconditionError);
    p.t = rat(3, 4);
    p.s.reset();
    CHECK_THROWS_AS(run_counterexample(p), PreconditionError);
    CounterexampleParams b = params(block14(), Variant::Bounded);
    b.epsilon = rat(1, 2);
    CHECK_THROWS_AS(run_counterexample(b), PreconditionError);
    CounterexampleParams n = params(block14());
    n.truncation = 1;
    CHECK_THROWS_AS(run_counterexample(n), UsageError);
    CounterexampleParams c = params(block14());
    c.catalog.max_size = 5;
    CHECK_THROWS_AS(run_counterexample(c), ResourceError);
}

TEST_CASE("verdict names") {
    CHECK(to_string(Verdict::Violation) == "VIOLATION");
    CHECK(to_string(Verdict::NoViolationFound) == "NO_VIOLATION_FOUND");
    CHECK(to_string(Verdict::NoViolationExpected) == "NO_VIOLATION_EXPECTED");
}
