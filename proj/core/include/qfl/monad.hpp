#pragma once

#include "qfl/semifilter.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qfl {

enum class Variant { Plain, Filter, Bounded };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

// Conical, plus F4 for FILTER and boundedness for BOUNDED.
bool admissible(const SemifilterTable& t, Variant v);
// The variant's coreflection: c for PLAIN/FILTER, theta for BOUNDED.
SemifilterTable coreflect(const SemifilterTable& t, Variant v);

std::vector<SemifilterTable> build_d(const SpacePtr& space, Variant v);

// Conical coreflection of the Kowalsky sum; every member of the
// sub-universe must be admissible for the variant.
SemifilterTable build_n(const SubUniverse& u, const SemifilterTable& outer, Variant v);

// A map X -> admissible semifilters on Y.
struct KleisliMap {
    SpacePtr codomain;
    std::vector<SemifilterTable> values;

    std::size_t domain_size() const noexcept { return values.size(); }
};

KleisliMap unit_map(const SpacePtr& space, Variant v);
// d_Y o f
KleisliMap lift_map(const FiniteMap& f, const SpacePtr& codomain, Variant v);

// n_Y applied to the image of F along h, over the sub-universe of h's
// values and the units of Y.
SemifilterTable kleisli_extend(const KleisliMap& h, const SemifilterTable& F, Variant v);
// Coreflection of lambda -> F(x -> h(x)(lambda)), without a sub-universe.
SemifilterTable kleisli_extend_direct(const KleisliMap& h, const SemifilterTable& F, Variant v);
// x -> g#(f(x))
KleisliMap kleisli_compose(const KleisliMap& g, const KleisliMap& f, Variant v);

// Admissible table obtained as Lambda of a random basis of at most
// max_basis functions (plus k_X).
SemifilterTable random_admissible(const SpacePtr& space, Variant v, std::mt19937_64& rng, std::size_t max_basis);

std::uint64_t scenario_seed(std::uint64_t base, std::size_t index);

struct LawConfig {
    Variant variant = Variant::Plain;
    std::size_t scenarios = 200;
    std::uint64_t seed = 20240611;
    std::size_t max_set_size = 2;
    std::size_t max_basis = 2;
    // Upper bound on Kleisli extensions; 0 means unlimited.
    std::size_t work_budget = 0;
    std::size_t workers = 1;
};

struct LawFailure {
    std::size_t scenario = 0;
    std::uint64_t seed = 0;
    std::string law;
    std::string detail;
};

struct LawReport {
    std::string quantale;
    Variant variant = Variant::Plain;
    std::uint64_t seed = 0;
    std::size_t requested = 0;
    std::size_t completed = 0;
    std::size_t extensions = 0;
    // unit-right (d# = id), unit-left (f# o d = f), associativity
    std::array<std::size_t, 3> checks{};
    bool complete = true;
    std::vector<LawFailure> failures;

    bool passed() const { return complete && failures.empty(); }
};

inline constexpr std::array<const char*, 3> law_names{"d# = id", "f# o d = f", "g# o f# = (g# o f)#"};

LawReport check_monad_laws(const FiniteQuantale& q, const LawConfig& config);

struct NaturalityConfig {
    std::size_t samples = 40;
    std::uint64_t seed = 20240611;
    std::size_t max_set_size = 2;
    std::size_t max_basis = 2;
};

struct NaturalityCheck {
    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

struct NaturalityReport {
    std::string quantale;
    std::vector<NaturalityCheck> checks;

    bool passed() const;
};

NaturalityReport check_naturality(const FiniteQuantale& q, const NaturalityConfig& config);

std::string compact(const SemifilterTable& t);
std::string compact(const FiniteQuantale& q, const QFunction<Elem>& f);

}  // namespace qfl
