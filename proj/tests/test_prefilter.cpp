#include "qfl/function_space.hpp"
#include "qfl/prefilter.hpp"

#include <doctest.h>

using namespace qfl;

namespace {

using Basis = PrefilterBasis<FiniteQuantale>;

QFunction<Elem> fn(const FiniteQuantale& q, std::initializer_list<Rational> values) {
    QFunction<Elem> out;
    for (const Rational& v : values) out.push_back(q.at(v));
    return out;
}

// Every basis of at most two functions on the space, as a prefilter.
std::vector<Basis> small_prefilters(const FiniteQuantale& q, const FunctionSpace& s) {
    std::vector<Basis> out{Basis::normalize(q, s.domain_size(), {})};
    for (Code a = 0; a < s.size(); ++a) {
        out.push_back(Basis::normalize(q, s.domain_size(), {s.function(a)}));
        for (Code b = a + 1; b < s.size(); ++b)
            out.push_back(Basis::normalize(q, s.domain_size(), {s.function(a), s.function(b)}));
    }
    return out;
}

}  // namespace

TEST_CASE("normalize") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    CHECK(Basis::normalize(q, 2, {}).basis() == std::vector<QFunction<Elem>>{fn(q, {Rational(1), Rational(1)})});
    const Basis b = Basis::normalize(q, 2, {fn(q, {Rational(1), rat(1, 2)}), fn(q, {rat(1, 2), Rational(1)})});
    CHECK(b.basis() == std::vector<QFunction<Elem>>{fn(q, {rat(1, 2), rat(1, 2)})});
    CHECK(Basis::normalize(q, 2, {fn(q, {rat(1, 2), rat(1, 2)}), fn(q, {Rational(1), Rational(1)})}).basis() ==
          std::vector<QFunction<Elem>>{fn(q, {rat(1, 2), rat(1, 2)})});
    const Basis two = Basis::normalize(q, 2, {fn(q, {Rational(1), rat(1, 2)})});
    CHECK(two.basis() == std::vector<QFunction<Elem>>{fn(q, {Rational(1), rat(1, 2)})});
    CHECK_THROWS_AS(Basis::normalize(q, 2, {fn(q, {Rational(1)})}), UsageError);
    const auto s = FunctionSpace::make(q, 2);
    std::vector<QFunction<Elem>> all;
    for (Code c = 0; c < s->size(); ++c) all.push_back(s->function(c));
    CHECK_THROWS_AS(Basis::normalize(q, 2, all, 3), ResourceError);
}

TEST_CASE("member") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    const Basis f = Basis::normalize(q, 2, {fn(q, {rat(1, 2), rat(1, 2)})});
    CHECK(member(q, f, unit_function(q, 2)));
    CHECK(member(q, f, fn(q, {Rational(1), rat(1, 2)})));
    CHECK_FALSE(member(q, f, fn(q, {rat(1, 2), Rational(0)})));
}

TEST_CASE("lambda_eval and saturation") {
    const FiniteQuantale g3 = FiniteQuantale::godel3();
    const FiniteQuantale mv3 = FiniteQuantale::mv3();
    const Basis fg = Basis::normalize(g3, 1, {fn(g3, {rat(1, 2)})});
    const Basis fm = Basis::normalize(mv3, 1, {fn(mv3, {rat(1, 2)})});
    CHECK(lambda_eval(g3, fg, fn(g3, {rat(1, 2)})) == g3.top());
    CHECK(g3.label(lambda_eval(g3, fg, fn(g3, {Rational(0)}))) == Rational(0));
    CHECK(mv3.label(lambda_eval(mv3, fm, fn(mv3, {Rational(0)}))) == rat(1, 2));
    CHECK(saturation_member(mv3, fm, fn(mv3, {rat(1, 2)})));
    CHECK_FALSE(saturation_member(g3, fg, fn(g3, {Rational(0)})));
}

TEST_CASE("top filters") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    CHECK(is_top_filter(q, Basis::normalize(q, 2, {})));
    CHECK(is_top_filter(q, Basis::normalize(q, 2, {fn(q, {Rational(1), Rational(0)})})));
    CHECK_FALSE(is_top_filter(q, Basis::normalize(q, 2, {fn(q, {rat(1, 2), Rational(0)})})));
    const FiniteQuantale nonintegral = FiniteQuantale::chain("half-unit", {rat(0), rat(1, 2), rat(1)},
                                                             {{0, 0, 0}, {0, 1, 2}, {0, 2, 2}}, 1);
    CHECK_THROWS_AS(is_top_filter(nonintegral, PrefilterBasis<FiniteQuantale>::normalize(nonintegral, 1, {})),
                    PreconditionError);
}

TEST_CASE("bounded coreflection on a finite chain") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    const Basis f = Basis::normalize(q, 2, {fn(q, {Rational(1), Rational(0)})});
    CHECK(bounded_coreflection(q, f).basis() == std::vector<QFunction<Elem>>{fn(q, {Rational(1), rat(1, 2)})});
    const Basis top = Basis::normalize(q, 2, {});
    CHECK(bounded_coreflection(q, top) == top);
    const Basis already = Basis::normalize(q, 2, {fn(q, {rat(1, 2), Rational(1)})});
    CHECK(bounded_coreflection(q, already) == already);
}

TEST_CASE("bounded coreflection is the set of bounded members") {
    for (const FiniteQuantale& q : {FiniteQuantale::godel3(), FiniteQuantale::mv3(), FiniteQuantale::chain5()}) {
        const auto s = FunctionSpace::make(q, 2);
        for (const Basis& f : small_prefilters(q, *s)) {
            const Basis r = bounded_coreflection(q, f);
            for (const auto& b : r.basis()) REQUIRE(is_bounded(q, b));
            for (Code c = 0; c < s->size(); ++c) {
                const auto& lam = s->function(c);
                REQUIRE(member(q, r, lam) == (member(q, f, lam) && is_bounded(q, lam)));
            }
        }
    }
}

TEST_CASE("bounded coreflection over [0,1]") {
    const TNorm t = TNorm::godel();
    const auto f = PrefilterBasis<TNorm>::normalize(t, 2, std::vector<QFunction<Rational>>{{Rational(1), Rational(0)}});
    const auto family = bounded_coreflection(t, f, {rat(1, 2), rat(1, 4)});
    REQUIRE(family.size() == 2);
    CHECK(family[0].epsilon == rat(1, 2));
    CHECK(family[0].basis.basis() == std::vector<QFunction<Rational>>{{Rational(1), rat(1, 2)}});
    CHECK(family[1].basis.basis() == std::vector<QFunction<Rational>>{{Rational(1), rat(1, 4)}});
    CHECK(default_epsilon_schedule().size() == 20);
    CHECK(default_epsilon_schedule().back() == rat(1, 1 << 20));
}

TEST_CASE("image prefilter") {
    const FiniteQuantale q = FiniteQuantale::godel3();
    const Basis f = Basis::normalize(q, 2, {fn(q, {rat(1, 2), rat(1, 2)})});
    const ImagePrefilter<FiniteQuantale> img(q, FiniteMap::constant(2, 1, 0), f);
    CHECK(img.member(fn(q, {rat(1, 2)})));
    CHECK_FALSE(img.member(fn(q, {Rational(0)})));
    const ImagePrefilter<FiniteQuantale> id(q, FiniteMap::identity(2), f);
    CHECK(id.basis() == f);
    const Basis everything = Basis::normalize(q, 2, {fn(q, {Rational(0), Rational(0)})});
    const ImagePrefilter<FiniteQuantale> all(q, FiniteMap::constant(2, 2, 1), everything);
    const auto s = FunctionSpace::make(q, 2);
    for (Code c = 0; c < s->size(); ++c) CHECK(all.member(s->function(c)));
}

TEST_CASE("image commutes with Lambda and preserves top filters") {
    for (const FiniteQuantale& q : {FiniteQuantale::godel3(), FiniteQuantale::mv3()}) {
        const auto sx = FunctionSpace::make(q, 2);
        const auto sy = FunctionSpace::make(q, 2);
        for (const Basis& f : small_prefilters(q, *sx))
            for (const FiniteMap& m : FiniteMap::all(2, 2)) {
                const ImagePrefilter<FiniteQuantale> img(q, m, f);
                for (Code c = 0; c < sy->size(); ++c) {
                    const auto& mu = sy->function(c);
                    REQUIRE(img.lambda_eval(mu) == lambda_eval(q, f, precompose(m, mu)));
                    REQUIRE(img.member(mu) == member(q, img.basis(), mu));
                }
                if (is_top_filter(q, f)) REQUIRE(is_top_filter(q, img.basis()));
            }
    }
}

TEST_CASE("saturation is a closure operator") {
    const FiniteQuantale q = FiniteQuantale::mv3();
    const auto s = FunctionSpace::make(q, 2);
    for (const Basis& f : small_prefilters(q, *s)) {
        std::vector<QFunction<Elem>> saturated;
        for (Code c = 0; c < s->size(); ++c) {
            const auto& lam = s->function(c);
            if (member(q, f, lam)) REQUIRE(saturation_member(q, f, lam));
            if (saturation_member(q, f, lam)) saturated.push_back(lam);
        }
        std::vector<QFunction<Elem>> raw = f.basis();
        raw.insert(raw.end(), saturated.begin(), saturated.end());
        const Basis bigger = Basis::normalize(q, 2, raw);
        for (Code c = 0; c < s->size(); ++c)
            REQUIRE(saturation_member(q, bigger, s->function(c)) == saturation_member(q, f, s->function(c)));
    }
}
