#include "qfl/monad.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>

namespace qfl {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::Plain: return "plain";
        case Variant::Filter: return "filter";
        case Variant::Bounded: return "bounded";
    }
    return "?";
}

Variant parse_variant(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "plain") return Variant::Plain;
    if (lower == "filter") return Variant::Filter;
    if (lower == "bounded") return Variant::Bounded;
    throw ParseError("unknown variant \"" + std::string(text) + "\" (expected plain, filter or bounded)");
}

bool admissible(const SemifilterTable& t, Variant v) {
    if (!is_conical(t)) return false;
    if (v == Variant::Filter && !satisfies_f4(t)) return false;
    if (v == Variant::Bounded && !is_bounded(t)) return false;
    return true;
}

SemifilterTable coreflect(const SemifilterTable& t, Variant v) {
    return v == Variant::Bounded ? theta(t) : conical_coreflection(t);
}

std::vector<SemifilterTable> build_d(const SpacePtr& space, Variant v) {
    std::vector<SemifilterTable> out;
    for (std::size_t x = 0; x < space->domain_size(); ++x) {
        SemifilterTable e = unit_e(space, x);
        out.push_back(v == Variant::Bounded ? theta(e) : std::move(e));
    }
    return out;
}

SemifilterTable build_n(const SubUniverse& u, const SemifilterTable& outer, Variant v) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!admissible(u[i], v))
            throw UsageError("sub-universe member " + std::to_string(i) + " is not an admissible " +
                             std::string(to_string(v)) + " table: " + compact(u[i]));
    }
    return conical_coreflection(kowalsky_sum(u, outer));
}

KleisliMap unit_map(const SpacePtr& space, Variant v) { return {space, build_d(space, v)}; }

KleisliMap lift_map(const FiniteMap& f, const SpacePtr& codomain, Variant v) {
    if (f.codomain_size() != codomain->domain_size()) throw UsageError("map codomain does not match the space");
    const std::vector<SemifilterTable> d = build_d(codomain, v);
    KleisliMap out{codomain, {}};
    for (std::size_t x = 0; x < f.domain_size(); ++x) out.values.push_back(d[f(x)]);
    return out;
}

namespace {

void check_kleisli(const KleisliMap& h, const SemifilterTable& F) {
    if (F.domain_size() != h.domain_size())
        throw UsageError("Kleisli map is defined on " + std::to_string(h.domain_size()) +
                         " points but the semifilter lives on " + std::to_string(F.domain_size()));
    for (const SemifilterTable& t : h.values) require_same_space(*h.codomain, t.space());
}

}  // namespace

SemifilterTable kleisli_extend(const KleisliMap& h, const SemifilterTable& F, Variant v) {
    check_kleisli(h, F);
    SubUniverse u(h.codomain);
    std::vector<std::size_t> images;
    for (const SemifilterTable& t : h.values) images.push_back(u.add_unique(t));
    for (const SemifilterTable& d : build_d(h.codomain, v)) u.add_unique(d);
    const SpacePtr outer_space = FunctionSpace::make(F.quantale(), u.size());
    const FiniteMap index(h.domain_size(), u.size(), std::move(images));
    const SemifilterTable outer = image_semifilter(index, F, outer_space, v == Variant::Bounded);
    return build_n(u, outer, v);
}

SemifilterTable kleisli_extend_direct(const KleisliMap& h, const SemifilterTable& F, Variant v) {
    check_kleisli(h, F);
    QFunction<Elem> phi(h.domain_size());
    const SemifilterTable diagonal = SemifilterTable::tabulate(h.codomain, [&](Code lambda) {
        for (std::size_t x = 0; x < phi.size(); ++x) phi[x] = h.values[x](lambda);
        return F.at(phi);
    });
    return coreflect(diagonal, v);
}

KleisliMap kleisli_compose(const KleisliMap& g, const KleisliMap& f, Variant v) {
    if (g.domain_size() != f.codomain->domain_size()) throw UsageError("Kleisli maps are not composable");
    KleisliMap out{g.codomain, {}};
    for (const SemifilterTable& t : f.values) out.values.push_back(kleisli_extend(g, t, v));
    return out;
}

SemifilterTable random_admissible(const SpacePtr& space, Variant v, std::mt19937_64& rng, std::size_t max_basis) {
    const FiniteQuantale& q = space->quantale();
    const std::size_t n = space->domain_size();
    if (v == Variant::Filter && n == 0) throw UsageError("there are no Q-filters on the empty set");
    if (n > 0 && rng() % 4 == 0) return build_d(space, v)[rng() % n];
    const std::size_t k = rng() % (max_basis + 1);
    // Meets of the basis must stay proper, so filter bases share a top point.
    const std::size_t core = n > 0 ? rng() % n : 0;
    std::vector<QFunction<Elem>> raw;
    for (std::size_t i = 0; i < k; ++i) {
        QFunction<Elem> f(n);
        for (std::size_t x = 0; x < n; ++x) {
            f[x] = v == Variant::Bounded ? elem(1 + rng() % (q.size() - 1)) : elem(rng() % q.size());
        }
        if (v == Variant::Filter) f[core] = q.top();
        raw.push_back(std::move(f));
    }
    return lambda_of(space, PrefilterBasis<FiniteQuantale>::normalize(q, n, raw));
}

std::uint64_t scenario_seed(std::uint64_t base, std::size_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string compact(const FiniteQuantale& q, const QFunction<Elem>& f) {
    std::string out = "(";
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (x) out += ",";
        out += pretty(q.label(f[x]));
    }
    return out + ")";
}

std::string compact(const SemifilterTable& t) {
    std::string out = "[";
    for (std::size_t c = 0; c < t.values().size(); ++c) {
        if (c) out += ",";
        out += pretty(t.quantale().label(t.values()[c]));
    }
    return out + "]";
}

// ---------------------------------------------------------------------------

namespace {

struct Sizes {
    std::size_t x, y, z;
};

Sizes draw_sizes(std::mt19937_64& rng, const LawConfig& config) {
    const std::size_t lo = config.variant == Variant::Filter ? 1 : 0;
    const std::size_t span = config.max_set_size - lo + 1;
    Sizes s{};
    s.x = lo + rng() % span;
    s.y = lo + rng() % span;
    s.z = lo + rng() % span;
    return s;
}

struct ScenarioOutcome {
    std::array<std::size_t, 3> checks{};
    std::vector<LawFailure> failures;
};

std::string describe_map(const KleisliMap& h) {
    std::string out = "{";
    for (std::size_t x = 0; x < h.values.size(); ++x) {
        if (x) out += "; ";
        out += std::to_string(x) + " -> " + compact(h.values[x]);
    }
    return out + "}";
}

ScenarioOutcome run_scenario(const std::vector<SpacePtr>& spaces, const LawConfig& config, std::size_t index,
                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Sizes s = draw_sizes(rng, config);
    const Variant v = config.variant;
    const SpacePtr& X = spaces[s.x];
    const SpacePtr& Y = spaces[s.y];
    const SpacePtr& Z = spaces[s.z];

    const SemifilterTable F = random_admissible(X, v, rng, config.max_basis);
    KleisliMap f{Y, {}};
    for (std::size_t x = 0; x < s.x; ++x) f.values.push_back(random_admissible(Y, v, rng, config.max_basis));
    KleisliMap g{Z, {}};
    for (std::size_t y = 0; y < s.y; ++y) g.values.push_back(random_admissible(Z, v, rng, config.max_basis));

    ScenarioOutcome out;
    const std::string context = "|X|=" + std::to_string(s.x) + " |Y|=" + std::to_string(s.y) +
                                " |Z|=" + std::to_string(s.z) + " F=" + compact(F);
    auto fail = [&](std::size_t law, std::string detail) {
        out.failures.push_back({index, seed, law_names[law], context + " " + detail});
    };

    const KleisliMap d = unit_map(X, v);
    ++out.checks[0];
    const SemifilterTable id = kleisli_extend(d, F, v);
    if (!(id == F)) fail(0, "d#(F)=" + compact(id));

    for (std::size_t x = 0; x < s.x; ++x) {
        ++out.checks[1];
        const SemifilterTable lhs = kleisli_extend(f, d.values[x], v);
        if (!(lhs == f.values[x]))
            fail(1, "x=" + std::to_string(x) + " f=" + describe_map(f) + " f#(d(x))=" + compact(lhs));
    }

    ++out.checks[2];
    const SemifilterTable lhs = kleisli_extend(g, kleisli_extend(f, F, v), v);
    const SemifilterTable rhs = kleisli_extend(kleisli_compose(g, f, v), F, v);
    if (!(lhs == rhs))
        fail(2, "f=" + describe_map(f) + " g=" + describe_map(g) + " lhs=" + compact(lhs) + " rhs=" + compact(rhs));
    return out;
}

}  // namespace

LawReport check_monad_laws(const FiniteQuantale& q, const LawConfig& config) {
    if (config.max_set_size > 3) throw UsageError("law suite supports sets of at most 3 elements");
    if (config.variant == Variant::Filter && config.max_set_size == 0)
        throw UsageError("the filter variant needs nonempty sets");
    if (config.variant == Variant::Bounded && !q.is_integral())
        throw PreconditionError("the bounded variant needs an integral quantale");

    std::vector<SpacePtr> spaces;
    for (std::size_t n = 0; n <= config.max_set_size; ++n) spaces.push_back(FunctionSpace::make(q, n));

    LawReport report;
    report.quantale = q.name();
    report.variant = config.variant;
    report.seed = config.seed;
    report.requested = config.scenarios;

    // Scenario costs are fixed by their seeds, so the budget cut is deterministic.
    std::vector<std::uint64_t> seeds;
    std::size_t spent = 0;
    for (std::size_t i = 0; i < config.scenarios; ++i) {
        const std::uint64_t seed = scenario_seed(config.seed, i);
        std::mt19937_64 rng(seed);
        const Sizes s = draw_sizes(rng, config);
        const std::size_t cost = 2 * s.x + 4;
        if (config.work_budget != 0 && spent + cost > config.work_budget) {
            report.complete = false;
            break;
        }
        spent += cost;
        seeds.push_back(seed);
    }
    report.extensions = spent;

    std::vector<ScenarioOutcome> outcomes(seeds.size());
    std::vector<std::exception_ptr> errors(std::max<std::size_t>(1, config.workers));
    auto work = [&](std::size_t worker, std::size_t stride) {
        try {
            for (std::size_t i = worker; i < seeds.size(); i += stride)
                outcomes[i] = run_scenario(spaces, config, i, seeds[i]);
        } catch (...) {
            errors[worker] = std::current_exception();
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, config.workers);
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    for (ScenarioOutcome& o : outcomes) {
        for (std::size_t k = 0; k < 3; ++k) report.checks[k] += o.checks[k];
        for (LawFailure& f : o.failures) report.failures.push_back(std::move(f));
    }
    report.completed = outcomes.size();
    return report;
}

// ---------------------------------------------------------------------------

bool NaturalityReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const NaturalityCheck& c) { return c.failures == 0; });
}

namespace {

class SpaceCache {
public:
    explicit SpaceCache(const FiniteQuantale& q) : q_(q) {}
    const SpacePtr& operator()(std::size_t n) {
        auto it = cache_.find(n);
        if (it == cache_.end()) it = cache_.emplace(n, FunctionSpace::make(q_, n)).first;
        return it->second;
    }

private:
    const FiniteQuantale& q_;
    std::map<std::size_t, SpacePtr> cache_;
};

void record(NaturalityCheck& check, bool ok, const std::string& witness) {
    ++check.instances;
    if (!ok) {
        if (check.failures == 0) check.first_failure = witness;
        ++check.failures;
    }
}

std::string show_codes(const FunctionSpace& s, const std::vector<Code>& codes) {
    std::string out = "{";
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) out += " ";
        out += compact(s.quantale(), s.function(codes[i]));
    }
    return out + "}";
}

FiniteMap random_map(std::mt19937_64& rng, std::size_t from, std::size_t to) {
    std::vector<std::size_t> images(from);
    for (std::size_t& y : images) y = rng() % to;
    return FiniteMap(from, to, std::move(images));
}

}  // namespace

NaturalityReport check_naturality(const FiniteQuantale& q, const NaturalityConfig& config) {
    if (config.max_set_size > 3) throw UsageError("naturality checks support sets of at most 3 elements");
    SpaceCache space(q);
    NaturalityReport report;
    report.quantale = q.name();
    std::mt19937_64 rng(config.seed);

    NaturalityCheck d_formula{"Gamma o d = {lambda : lambda(x) >= k}", 0, 0, {}};
    NaturalityCheck d_bounded{"Gamma o d~ = {lambda bounded : lambda(x) >= k}", 0, 0, {}};
    for (std::size_t n = 0; n <= config.max_set_size; ++n) {
        const SpacePtr& s = space(n);
        const std::vector<SemifilterTable> d = build_d(s, Variant::Plain);
        const std::vector<SemifilterTable> dt = build_d(s, Variant::Bounded);
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<Code> expected, expected_bounded;
            for (Code c = 0; c < s->size(); ++c) {
                if (q.leq(q.unit(), s->value(c, x))) {
                    expected.push_back(c);
                    if (s->is_bounded(c)) expected_bounded.push_back(c);
                }
            }
            record(d_formula, gamma(d[x]) == expected, "x=" + std::to_string(x) + " on |X|=" + std::to_string(n));
            record(d_bounded, gamma(dt[x]) == expected_bounded,
                   "x=" + std::to_string(x) + " on |X|=" + std::to_string(n));
        }
    }
    report.checks.push_back(d_formula);
    if (q.is_integral()) report.checks.push_back(d_bounded);

    NaturalityCheck n_formula{"Gamma o n o (Lambda*Lambda) = lambda-tilde membership", 0, 0, {}};
    for (std::size_t i = 0; i < config.samples; ++i) {
        const std::size_t nx = rng() % (config.max_set_size + 1);
        const std::size_t m = 1 + rng() % 3;
        const SpacePtr& X = space(nx);
        const SpacePtr& M = space(m);
        std::vector<std::vector<Code>> prefilters;
        std::vector<SemifilterTable> members;
        for (std::size_t j = 0; j < m; ++j) {
            prefilters.push_back(gamma(random_admissible(X, Variant::Plain, rng, config.max_basis)));
            members.push_back(lambda_of(X, prefilters.back()));
        }
        const SubUniverse u(X, std::move(members));
        const std::vector<Code> outer_filter = gamma(random_admissible(M, Variant::Plain, rng, config.max_basis));
        const std::vector<Code> lhs = gamma(build_n(u, lambda_of(M, outer_filter), Variant::Plain));
        std::vector<Code> rhs;
        for (Code lambda = 0; lambda < X->size(); ++lambda) {
            QFunction<Elem> tilde(m, q.bottom());
            for (std::size_t j = 0; j < m; ++j)
                for (Code mu : prefilters[j]) tilde[j] = q.join(tilde[j], X->sub(mu, lambda));
            if (std::binary_search(outer_filter.begin(), outer_filter.end(), M->code(tilde))) rhs.push_back(lambda);
        }
        record(n_formula, lhs == rhs,
               "|X|=" + std::to_string(nx) + " lhs=" + show_codes(*X, lhs) + " rhs=" + show_codes(*X, rhs));
    }
    report.checks.push_back(n_formula);

    if (q.is_integral()) {
        NaturalityCheck square{"tilde-n square f_B o n~_X = n~_Y o (f_B)_B", 0, 0, {}};
        for (std::size_t i = 0; i < config.samples; ++i) {
            const std::size_t nx = rng() % (config.max_set_size + 1);
            const std::size_t ny = (nx > 0 ? 1 : 0) + rng() % (config.max_set_size + (nx > 0 ? 0 : 1));
            const SpacePtr& X = space(nx);
            const SpacePtr& Y = space(ny);
            const FiniteMap f = random_map(rng, nx, ny);

            SubUniverse ux(X);
            for (const SemifilterTable& d : build_d(X, Variant::Bounded)) ux.add_unique(d);
            const std::size_t extra = 1 + rng() % 2;
            for (std::size_t j = 0; j < extra; ++j)
                ux.add_unique(random_admissible(X, Variant::Bounded, rng, config.max_basis));
            const SemifilterTable outer = random_admissible(space(ux.size()), Variant::Bounded, rng, config.max_basis);

            const SemifilterTable lhs = image_semifilter(f, build_n(ux, outer, Variant::Bounded), Y, true);

            SubUniverse uy(Y);
            for (const SemifilterTable& d : build_d(Y, Variant::Bounded)) uy.add_unique(d);
            std::vector<std::size_t> images;
            for (const SemifilterTable& t : ux.members()) images.push_back(uy.add_unique(image_semifilter(f, t, Y, true)));
            const FiniteMap lifted(ux.size(), uy.size(), std::move(images));
            const SemifilterTable outer_y = image_semifilter(lifted, outer, space(uy.size()), true);
            const SemifilterTable rhs = build_n(uy, outer_y, Variant::Bounded);
            record(square, lhs == rhs, "|X|=" + std::to_string(nx) + " |Y|=" + std::to_string(ny) +
                                           " lhs=" + compact(lhs) + " rhs=" + compact(rhs));
        }
        report.checks.push_back(square);
    }

    NaturalityCheck ci{"c o i = id on conical tables", 0, 0, {}};
    NaturalityCheck theta_nat{"theta natural: f_B o theta_X = theta_Y o f", 0, 0, {}};
    NaturalityCheck rho_nat{"rho natural: BSF(f) o rho_X = rho_Y o SPF(f)", 0, 0, {}};
    for (std::size_t nx = 0; nx <= config.max_set_size; ++nx) {
        const SpacePtr& X = space(nx);
        const std::vector<SemifilterTable> conical = enumerate_semifilters(X, Requirement::Conical);
        for (const SemifilterTable& t : conical) record(ci, conical_coreflection(t) == t, compact(t));
        if (!q.is_integral()) continue;
        const std::vector<SemifilterTable> all = enumerate_semifilters(X, Requirement::All);
        for (std::size_t ny = 0; ny <= config.max_set_size; ++ny) {
            const SpacePtr& Y = space(ny);
            for (const FiniteMap& f : FiniteMap::all(nx, ny)) {
                const std::vector<Code> pre = precompose_codes(*X, f, *Y);
                for (const SemifilterTable& t : all) {
                    const SemifilterTable lhs = image_semifilter(f, theta(t), Y, true);
                    const SemifilterTable rhs = theta(image_semifilter(f, t, Y));
                    record(theta_nat, lhs == rhs, "T=" + compact(t) + " f=" + std::to_string(nx) + "->" +
                                                      std::to_string(ny));
                }
                for (const SemifilterTable& t : conical) {
                    const std::vector<Code> F = gamma(t);
                    std::vector<Code> bounded_part;
                    for (Code c : F)
                        if (X->is_bounded(c)) bounded_part.push_back(c);
                    const std::vector<Code> lhs =
                        gamma(image_semifilter(f, lambda_of(X, bounded_part), Y, true));
                    std::vector<Code> rhs;
                    for (Code lambda = 0; lambda < Y->size(); ++lambda)
                        if (Y->is_bounded(lambda) && std::binary_search(F.begin(), F.end(), pre[lambda]))
                            rhs.push_back(lambda);
                    record(rho_nat, lhs == rhs, "F=" + show_codes(*X, F));
                }
            }
        }
    }
    report.checks.push_back(ci);
    if (q.is_integral()) {
        report.checks.push_back(theta_nat);
        report.checks.push_back(rho_nat);
    }
    return report;
}

}  // namespace qfl
