#include "qfl/classical.hpp"

#include <algorithm>
#include <random>

namespace qfl {

namespace {

void require_size(std::size_t n) {
    if (n > classical_max_size)
        throw UsageError("classical filters are supported on at most " + std::to_string(classical_max_size) +
                         " points");
}

Subset full(std::size_t n) { return static_cast<Subset>((1u << n) - 1); }

std::string show(const ClassicalFilter& F) {
    std::string out = "{";
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(F[i]);
    }
    return out + "}";
}

}  // namespace

ClassicalFilter principal_filter(std::size_t n, Subset a) {
    require_size(n);
    if (a == 0 || (a & ~full(n)) != 0) throw UsageError("principal filter needs a nonempty subset of X");
    ClassicalFilter out;
    for (Subset b = 0; b <= full(n); ++b)
        if ((a & b) == a) out.push_back(b);
    return out;
}

std::vector<ClassicalFilter> proper_filters(std::size_t n) {
    require_size(n);
    std::vector<ClassicalFilter> out;
    for (Subset a = 1; a <= full(n) && n > 0; ++a) out.push_back(principal_filter(n, a));
    std::sort(out.begin(), out.end());
    return out;
}

ClassicalFilter classical_unit(std::size_t n, std::size_t x) {
    if (x >= n) throw UsageError("unit requested at a point outside X");
    return principal_filter(n, static_cast<Subset>(1u << x));
}

ClassicalFilter classical_extend(const std::vector<ClassicalFilter>& h, std::size_t codomain_size,
                                 const ClassicalFilter& F) {
    require_size(codomain_size);
    require_size(h.size());
    ClassicalFilter out;
    for (Subset b = 0; b <= full(codomain_size); ++b) {
        Subset pre = 0;
        for (std::size_t x = 0; x < h.size(); ++x)
            if (std::binary_search(h[x].begin(), h[x].end(), b)) pre |= static_cast<Subset>(1u << x);
        if (std::binary_search(F.begin(), F.end(), pre)) out.push_back(b);
    }
    return out;
}

namespace {

void require_boolean(const FiniteQuantale& q) {
    if (q.size() != 2 || !q.is_integral()) throw PreconditionError("classical filters need the two-element chain");
}

Subset subset_of(const FunctionSpace& s, Code c) {
    Subset out = 0;
    for (std::size_t x = 0; x < s.domain_size(); ++x)
        if (s.value(c, x) == s.quantale().top()) out |= static_cast<Subset>(1u << x);
    return out;
}

}  // namespace

ClassicalFilter to_classical(const SemifilterTable& t) {
    require_boolean(t.quantale());
    require_size(t.domain_size());
    ClassicalFilter out;
    for (Code c : gamma(t)) out.push_back(subset_of(t.space(), c));
    std::sort(out.begin(), out.end());
    return out;
}

SemifilterTable from_classical(const SpacePtr& space, const ClassicalFilter& F) {
    require_boolean(space->quantale());
    require_size(space->domain_size());
    std::vector<Code> codes;
    for (Code c = 0; c < space->size(); ++c)
        if (std::binary_search(F.begin(), F.end(), subset_of(*space, c))) codes.push_back(c);
    return lambda_of(space, codes);
}

ClassicalComparison compare_with_classical(std::size_t max_size, std::size_t scenarios, std::uint64_t seed) {
    require_size(max_size);
    const FiniteQuantale q = FiniteQuantale::boolean();
    ClassicalComparison out;
    out.max_size = max_size;
    auto mismatch = [&](std::string what) {
        if (out.mismatches == 0) out.first_mismatch = std::move(what);
        ++out.mismatches;
    };

    std::vector<SpacePtr> spaces;
    for (std::size_t n = 0; n <= max_size; ++n) spaces.push_back(FunctionSpace::make(q, n));
    for (std::size_t n = 1; n <= max_size; ++n) {
        std::vector<ClassicalFilter> ours;
        for (const SemifilterTable& t : enumerate_semifilters(spaces[n], Requirement::Filter)) {
            if (!is_conical(t)) {
                out.enumeration_match = false;
                out.first_mismatch = "non-conical Q-filter " + compact(t);
            }
            ours.push_back(to_classical(t));
        }
        std::sort(ours.begin(), ours.end());
        out.filters_compared += ours.size();
        if (ours != proper_filters(n)) {
            out.enumeration_match = false;
            if (out.first_mismatch.empty()) out.first_mismatch = "filter count differs on |X|=" + std::to_string(n);
        }
    }

    for (std::size_t i = 0; i < scenarios; ++i) {
        std::mt19937_64 rng(scenario_seed(seed, i));
        const std::size_t nx = 1 + rng() % max_size;
        const std::size_t ny = 1 + rng() % max_size;
        const SemifilterTable F = random_admissible(spaces[nx], Variant::Filter, rng, 2);
        KleisliMap f{spaces[ny], {}};
        std::vector<ClassicalFilter> fc;
        for (std::size_t x = 0; x < nx; ++x) {
            f.values.push_back(random_admissible(spaces[ny], Variant::Filter, rng, 2));
            fc.push_back(to_classical(f.values.back()));
        }
        ++out.scenarios;
        const ClassicalFilter Fc = to_classical(F);
        ++out.extensions_compared;
        const ClassicalFilter ours = to_classical(kleisli_extend(f, F, Variant::Filter));
        const ClassicalFilter theirs = classical_extend(fc, ny, Fc);
        if (ours != theirs) mismatch("scenario " + std::to_string(i) + ": " + show(ours) + " vs " + show(theirs));
        for (std::size_t x = 0; x < nx; ++x) {
            ++out.extensions_compared;
            if (to_classical(unit_e(spaces[nx], x)) != classical_unit(nx, x))
                mismatch("unit at " + std::to_string(x) + " on |X|=" + std::to_string(nx));
        }
    }
    return out;
}

}  // namespace qfl
