#include "oracles/tnorm_oracle.hpp"
#include "qfl/monad.hpp"

#include <doctest.h>

#include <random>

using namespace qfl;

namespace {

// Ordinal sums with up to three blocks on dyadic endpoints k/16.
TNorm random_tnorm(std::mt19937_64& rng) {
    std::vector<long long> cuts;
    for (long long k = 0; k <= 16; ++k)
        if (rng() % 3 == 0) cuts.push_back(k);
    std::vector<Block> blocks;
    for (std::size_t i = 0; i + 1 < cuts.size() && blocks.size() < 3; i += 2) {
        const BlockKind kind = rng() % 2 ? BlockKind::Lukasiewicz : BlockKind::Product;
        blocks.push_back({rat(cuts[i], 16), rat(cuts[i + 1], 16), kind});
    }
    return TNorm::build(blocks);
}

Rational random_point(std::mt19937_64& rng) {
    const long long den = 1 + static_cast<long long>(rng() % 40);
    return rat(static_cast<long long>(rng() % (den + 1)), den);
}

std::vector<SemifilterTable> conical_tables(const FiniteQuantale& q, std::size_t n) {
    return enumerate_semifilters(FunctionSpace::make(q, n), Requirement::Conical);
}

const std::vector<FiniteQuantale>& chains() {
    static const std::vector<FiniteQuantale> all = FiniteQuantale::shipped_chains();
    return all;
}

}  // namespace

TEST_CASE("random ordinal sums: adjunction, monotonicity, residuum oracle") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 40; ++trial) {
        const TNorm t = random_tnorm(rng);
        CAPTURE(describe(t));
        std::vector<oracle::OBlock> ob;
        for (const Block& b : t.blocks()) ob.push_back({b.lo, b.hi, b.kind == BlockKind::Lukasiewicz});
        for (int i = 0; i < 200; ++i) {
            const Rational x = random_point(rng), y = random_point(rng), z = random_point(rng);
            REQUIRE(t.tensor(x, y) == oracle::tensor(ob, x, y));
            REQUIRE(t.tensor(x, y) == t.tensor(y, x));
            REQUIRE(t.tensor(t.tensor(x, y), z) == t.tensor(x, t.tensor(y, z)));
            REQUIRE((t.tensor(x, z) <= y) == (z <= t.residuum(x, y)));
            if (x <= y) {
                REQUIRE(t.tensor(x, z) <= t.tensor(y, z));
                REQUIRE(t.residuum(y, z) <= t.residuum(x, z));
                REQUIRE(t.residuum(z, x) <= t.residuum(z, y));
            }
        }
        for (const Rational& p : oracle::grid(16)) {
            if (!t.is_idempotent(p)) continue;
            for (int i = 0; i < 20; ++i) {
                const Rational x = p * random_point(rng);
                const Rational y = p + (Rational(1) - p) * random_point(rng);
                REQUIRE(t.tensor(x, y) == std::min(x, y));
            }
        }
        REQUIRE(check_condition_s(t).satisfied == !probe_residuum_continuity(t, 6).jump_found);
    }
}

TEST_CASE("F3 forces equality in F2 and F4") {
    for (const FiniteQuantale& q : chains()) {
        const auto s = FunctionSpace::make(q, q.size() > 3 ? 1 : 2);
        for (const SemifilterTable& t : enumerate_semifilters(s, Requirement::All)) {
            for (Code a = 0; a < s->size(); ++a)
                for (Code b = 0; b < s->size(); ++b) REQUIRE(q.meet(t(a), t(b)) == t(s->meet(a, b)));
            if (satisfies_f4(t))
                for (Elem p : q.elements()) REQUIRE(t(s->constant(p)) == p);
        }
    }
}

TEST_CASE("Lambda and Gamma form a Galois connection") {
    for (const FiniteQuantale& q : {FiniteQuantale::godel3(), FiniteQuantale::mv3()}) {
        const auto s = FunctionSpace::make(q, 2);
        const auto all = enumerate_semifilters(s, Requirement::All);
        std::mt19937_64 rng(11);
        for (int i = 0; i < 60; ++i) {
            std::vector<Code> family;
            for (int k = 0, m = static_cast<int>(rng() % 3); k < m; ++k) family.push_back(static_cast<Code>(rng() % s->size()));
            family.push_back(s->unit_function());
            std::vector<QFunction<Elem>> raw;
            for (Code c : family) raw.push_back(s->function(c));
            const auto basis = PrefilterBasis<FiniteQuantale>::normalize(q, 2, raw);
            const SemifilterTable lam = lambda_of(s, basis);
            REQUIRE(is_semifilter(lam));
            std::vector<Code> codes;
            for (const auto& b : basis.basis()) codes.push_back(s->code(b));
            REQUIRE(lam == lambda_of(s, codes));
            REQUIRE(lambda_of(s, family).leq(lam));
            for (const SemifilterTable& t : all) {
                const auto g = gamma(t);
                bool contained = true;
                for (Code c = 0; c < s->size(); ++c)
                    if (member(q, basis, s->function(c)) && !std::binary_search(g.begin(), g.end(), c)) contained = false;
                REQUIRE(contained == lam.leq(t));
            }
        }
    }
}

TEST_CASE("conical coreflection is a coreflection") {
    for (const FiniteQuantale& q : chains()) {
        const auto s = FunctionSpace::make(q, q.size() > 3 ? 1 : 2);
        const auto all = enumerate_semifilters(s, Requirement::All);
        for (const SemifilterTable& t : all) {
            const SemifilterTable c = conical_coreflection(t);
            REQUIRE(c.leq(t));
            REQUIRE(conical_coreflection(c) == c);
            REQUIRE(is_conical(t) == (c == t));
            REQUIRE(gamma(c) == gamma(t));
            if (satisfies_f4(t)) REQUIRE(satisfies_f4(c));
        }
        for (const SemifilterTable& a : all)
            for (const SemifilterTable& b : all)
                if (a.leq(b)) REQUIRE(conical_coreflection(a).leq(conical_coreflection(b)));
    }
}

TEST_CASE("conical tables: three tests agree, joins of chains, meets and residuations") {
    for (const FiniteQuantale& q : chains()) {
        for (std::size_t n = 0; n <= 2; ++n) {
            if (q.size() > 3 && n == 2) continue;
            const auto s = FunctionSpace::make(q, n);
            const auto all = enumerate_semifilters(s, Requirement::All);
            for (const SemifilterTable& t : all) {
                const bool d = is_conical(t, ConicalMode::Definition);
                REQUIRE(is_conical(t, ConicalMode::LemmaSup) == d);
                REQUIRE(is_conical(t, ConicalMode::LemmaResiduum) == d);
            }
            const auto con = conical_tables(q, n);
            for (const SemifilterTable& a : con) {
                for (Elem p : q.elements()) REQUIRE(is_conical(residuate(p, a)));
                for (const SemifilterTable& b : con) {
                    REQUIRE(is_conical(meet(std::vector{a, b})));
                    if (a.leq(b)) {
                        const SemifilterTable j = SemifilterTable::tabulate(
                            s, [&](Code c) { return q.join(a(c), b(c)); });
                        REQUIRE(is_conical(j));
                    }
                }
            }
        }
    }
}

TEST_CASE("Kowalsky sums of conical data") {
    std::mt19937_64 rng(5);
    for (const FiniteQuantale& q : chains()) {
        const auto inner = FunctionSpace::make(q, q.size() > 3 ? 1 : 2);
        const auto con = conical_tables(q, inner->domain_size());
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t k = 1 + rng() % 2;
            std::vector<SemifilterTable> members;
            for (std::size_t i = 0; i < k; ++i) members.push_back(con[rng() % con.size()]);
            const SubUniverse u(inner, members);
            const auto outer_space = FunctionSpace::make(q, k);
            const SemifilterTable outer = random_admissible(outer_space, Variant::Plain, rng, 2);
            const SemifilterTable sum = kowalsky_sum(u, outer);
            REQUIRE(is_semifilter(sum));
            REQUIRE(is_conical(sum));
            REQUIRE(build_n(u, outer, Variant::Plain) == sum);
        }
    }
}

TEST_CASE("boundedness transfer and the top-filter bridge") {
    for (const FiniteQuantale& q : chains()) {
        const auto s = FunctionSpace::make(q, q.size() > 3 ? 1 : 2);
        for (const SemifilterTable& t : enumerate_semifilters(s, Requirement::All)) {
            bool positive = true;
            for (Code c : gamma(t)) positive = positive && s->is_bounded(c);
            if (is_bounded(t)) REQUIRE(positive);
            if (is_conical(t)) REQUIRE(positive == is_bounded(t));
            const SemifilterTable th = theta(t);
            REQUIRE(th.leq(t));
            REQUIRE(is_bounded(th));
            REQUIRE(is_conical(th));
            if (is_conical(t) && is_bounded(t)) REQUIRE(th == t);
        }
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            std::vector<QFunction<Elem>> raw;
            for (int k = 0, m = 1 + static_cast<int>(rng() % 2); k < m; ++k) raw.push_back(s->function(static_cast<Code>(rng() % s->size())));
            const auto basis = PrefilterBasis<FiniteQuantale>::normalize(q, s->domain_size(), raw);
            REQUIRE(satisfies_f4(lambda_of(s, basis)) == is_top_filter(q, basis));
        }
    }
}

TEST_CASE("seeded law suites") {
    for (std::uint64_t seed : {1ULL, 99ULL, 123456789ULL}) {
        for (const FiniteQuantale& q : chains()) {
            for (Variant v : {Variant::Plain, Variant::Filter, Variant::Bounded}) {
                LawConfig config;
                config.variant = v;
                config.seed = seed;
                config.scenarios = 15;
                const LawReport r = check_monad_laws(q, config);
                CAPTURE(q.name());
                CAPTURE(to_string(v));
                REQUIRE(r.failures.empty());
                REQUIRE(r.passed());
            }
        }
    }
}
