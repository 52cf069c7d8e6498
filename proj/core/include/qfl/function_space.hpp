#pragma once

#include "qfl/qfun.hpp"
#include "qfl/quantale.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace qfl {

// Index of a function in Q^X under the canonical lexicographic order
// (first domain element most significant, carrier index order).
using Code = std::uint32_t;

// Q^X for a finite quantale Q and |X| = n, with the operations used by the
// semifilter tables precomputed on codes.
class FunctionSpace {
public:
    static constexpr std::size_t default_budget = 19683;  // 3^9 functions
    static constexpr std::size_t sub_table_limit = 4096;

    static std::shared_ptr<const FunctionSpace> make(const FiniteQuantale& q, std::size_t n,
                                                     std::size_t budget = default_budget);

    const FiniteQuantale& quantale() const noexcept { return q_; }
    std::size_t domain_size() const noexcept { return n_; }
    std::size_t size() const noexcept { return count_; }

    const QFunction<Elem>& function(Code c) const { return functions_[check(c)]; }
    Elem value(Code c, std::size_t x) const { return functions_[check(c)][x]; }
    Code code(std::span<const Elem> f) const;

    Elem sub(Code a, Code b) const;
    bool leq(Code a, Code b) const;
    Code meet(Code a, Code b) const;
    Code join(Code a, Code b) const;
    Code residuate(Elem p, Code a) const { return residuate_[idx(p) * count_ + check(a)]; }
    Code constant(Elem p) const { return constants_[idx(p)]; }
    Code unit_function() const { return constant(q_.unit()); }
    Elem min_value(Code c) const { return min_[check(c)]; }
    Elem max_value(Code c) const { return max_[check(c)]; }
    bool is_bounded(Code c) const { return min_value(c) != q_.bottom(); }

    // Every function whose value at x is lowered (strictly) to some v.
    template <class Visit>
    void for_each_lower_neighbour(Code c, Visit&& visit) const {
        const QFunction<Elem>& f = function(c);
        for (std::size_t x = 0; x < n_; ++x) {
            const Elem here = f[x];
            for (Elem v : q_.elements()) {
                if (v != here && q_.leq(v, here))
                    visit(static_cast<Code>(c - (idx(here) - idx(v)) * weight_[x]));
            }
        }
    }

    bool same_as(const FunctionSpace& other) const { return n_ == other.n_ && q_ == other.q_; }

private:
    FunctionSpace(const FiniteQuantale& q, std::size_t n) : q_(q), n_(n) {}
    Code check(Code c) const {
        if (c >= count_) throw UsageError("function code out of range");
        return c;
    }

    FiniteQuantale q_;
    std::size_t n_;
    std::size_t count_ = 0;
    std::vector<std::size_t> weight_;
    std::vector<QFunction<Elem>> functions_;
    std::vector<Elem> sub_;
    std::vector<Code> residuate_;
    std::vector<Code> constants_;
    std::vector<Elem> min_, max_;
};

using SpacePtr = std::shared_ptr<const FunctionSpace>;

// Code of mu o f in the space of f's domain, for mu in the space of f's codomain.
std::vector<Code> precompose_codes(const FunctionSpace& domain, const FiniteMap& f, const FunctionSpace& codomain);

}  // namespace qfl
