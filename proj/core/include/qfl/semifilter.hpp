#pragma once

#include "qfl/function_space.hpp"
#include "qfl/prefilter.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qfl {

// A total map Q^X -> Q, indexed by function codes.
class SemifilterTable {
public:
    SemifilterTable(SpacePtr space, std::vector<Elem> values);

    template <class Fn>
    static SemifilterTable tabulate(SpacePtr space, Fn&& fn) {
        std::vector<Elem> values(space->size());
        for (std::size_t c = 0; c < values.size(); ++c) values[c] = fn(static_cast<Code>(c));
        return SemifilterTable(std::move(space), std::move(values));
    }

    const FunctionSpace& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    const FiniteQuantale& quantale() const noexcept { return space_->quantale(); }
    std::size_t domain_size() const noexcept { return space_->domain_size(); }

    Elem operator()(Code c) const;
    Elem at(const QFunction<Elem>& f) const { return (*this)(space_->code(f)); }
    const std::vector<Elem>& values() const noexcept { return values_; }

    bool operator==(const SemifilterTable& other) const;
    bool leq(const SemifilterTable& other) const;
    bool operator<(const SemifilterTable& other) const { return values_ < other.values_; }

private:
    SpacePtr space_;
    std::vector<Elem> values_;
};

void require_same_space(const FunctionSpace& a, const FunctionSpace& b);

enum class Axiom { F1, F2, F3, F4 };
std::string_view to_string(Axiom a);

struct SemifilterViolation {
    Axiom axiom;
    Code lambda = 0;
    Code mu = 0;
    Elem p{};
};

std::vector<SemifilterViolation> check_axioms(const SemifilterTable& t, bool require_filter,
                                              std::size_t max_reports = 16);
bool is_semifilter(const SemifilterTable& t);
bool satisfies_f4(const SemifilterTable& t);

SemifilterTable unit_e(const SpacePtr& space, std::size_t x);

// Gamma: the functions with value >= k, in code order.
std::vector<Code> gamma(const SemifilterTable& t);

// Minimal elements (pointwise order) of a family given by a membership mask.
std::vector<Code> minimal_elements(const FunctionSpace& space, const std::vector<char>& member);

// Lambda(S)(lambda) = join over mu in S of sub(mu, lambda).
SemifilterTable lambda_of(const SpacePtr& space, std::span<const Code> family);
SemifilterTable lambda_of(const SpacePtr& space, const PrefilterBasis<FiniteQuantale>& basis);

SemifilterTable conical_coreflection(const SemifilterTable& t);

enum class ConicalMode { Definition, LemmaSup, LemmaResiduum };
std::string_view to_string(ConicalMode m);
bool is_conical(const SemifilterTable& t, ConicalMode mode = ConicalMode::Definition);

SemifilterTable meet(std::span<const SemifilterTable> tables);
SemifilterTable residuate(Elem p, const SemifilterTable& t);

// T(mu) < 1 for every mu whose minimum is the bottom.
bool is_bounded(const SemifilterTable& t);
// Lambda o rho o Gamma.
SemifilterTable theta(const SemifilterTable& t);

// mu -> T(mu o f); bounded mode applies theta afterwards.
SemifilterTable image_semifilter(const FiniteMap& f, const SemifilterTable& t, const SpacePtr& target,
                                 bool bounded = false);

enum class Requirement { All, Filter, Conical };
std::string_view to_string(Requirement r);

inline constexpr std::size_t default_enumeration_budget = 2'000'000;

// All tables on the space satisfying F1-F3 (plus F4 or conicality when
// requested), in canonical order. Chains are enumerated through their
// nested principal level sets; other lattices by brute force. The budget
// bounds the number of candidate tables examined.
std::vector<SemifilterTable> enumerate_semifilters(const SpacePtr& space, Requirement require,
                                                   std::size_t budget = default_enumeration_budget);

enum class Tri { Yes, No, Unknown };
std::string_view to_string(Tri t);

struct SemifilterKind {
    Tri is_filter = Tri::Unknown;
    Tri is_conical = Tri::Unknown;
    Tri is_bounded = Tri::Unknown;
};

SemifilterKind classify(const SemifilterTable& t);

// A declared finite family of semifilters on X, standing in for SFQ(X) at
// the second level.
class SubUniverse {
public:
    explicit SubUniverse(SpacePtr inner) : inner_(std::move(inner)) {}
    SubUniverse(SpacePtr inner, std::vector<SemifilterTable> members);

    const SpacePtr& inner_space() const noexcept { return inner_; }
    const std::vector<SemifilterTable>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    const SemifilterTable& operator[](std::size_t i) const { return members_.at(i); }

    std::optional<std::size_t> index_of(const SemifilterTable& t) const;
    std::size_t add_unique(const SemifilterTable& t);

    // The evaluation functional lambda-hat restricted to the members.
    QFunction<Elem> hat(Code lambda) const;

private:
    SpacePtr inner_;
    std::vector<SemifilterTable> members_;
};

// m(FF)(lambda) = FF(lambda-hat); the outer table lives on Q^U.
SemifilterTable kowalsky_sum(const SubUniverse& u, const SemifilterTable& outer);

}  // namespace qfl
