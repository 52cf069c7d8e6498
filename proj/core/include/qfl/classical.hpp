#pragma once

#include "qfl/monad.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qfl {

// Subsets of {0, ..., n-1} as bit masks, bit x for element x.
using Subset = std::uint32_t;
// A filter as the sorted list of its members.
using ClassicalFilter = std::vector<Subset>;

inline constexpr std::size_t classical_max_size = 4;

// Every proper filter on a finite set is principal: up(A) for nonempty A.
ClassicalFilter principal_filter(std::size_t n, Subset a);
std::vector<ClassicalFilter> proper_filters(std::size_t n);
ClassicalFilter classical_unit(std::size_t n, std::size_t x);
// h#(F) = {B : {x : B in h(x)} in F}
ClassicalFilter classical_extend(const std::vector<ClassicalFilter>& h, std::size_t codomain_size,
                                 const ClassicalFilter& F);

// Over the two-element chain: {lambda : T(lambda) = 1}, lambda read as a subset.
ClassicalFilter to_classical(const SemifilterTable& t);
SemifilterTable from_classical(const SpacePtr& space, const ClassicalFilter& F);

struct ClassicalComparison {
    std::size_t max_size = 0;
    std::size_t filters_compared = 0;
    bool enumeration_match = true;
    std::size_t scenarios = 0;
    std::size_t extensions_compared = 0;
    std::size_t mismatches = 0;
    std::string first_mismatch;

    bool passed() const { return enumeration_match && mismatches == 0; }
};

// Q-filters over the 2-chain against proper filters, and Kleisli extension
// against the classical filter monad, on sets of size 1..max_size.
ClassicalComparison compare_with_classical(std::size_t max_size, std::size_t scenarios, std::uint64_t seed);

}  // namespace qfl
