#pragma once

#include "qfl/errors.hpp"
#include "qfl/qfun.hpp"
#include "qfl/quantale.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace qfl {

// A prefilter F on a finite set, represented by the minimal elements of a
// meet-closed generating family; F is the upper set of the basis.
template <Quantale Q>
class PrefilterBasis {
public:
    using value_type = typename Q::value_type;
    using Function = QFunction<value_type>;
    static constexpr std::size_t default_cap = 4096;

    // Meet-closure of raw together with k_X, reduced to its minimal elements.
    static PrefilterBasis normalize(const Q& q, std::size_t n, const std::vector<Function>& raw,
                                    std::size_t cap = default_cap) {
        std::set<Function> closure;
        std::vector<Function> work;
        auto add = [&](Function f) {
            if (closure.insert(f).second) {
                if (closure.size() > cap)
                    throw ResourceError("prefilter basis exceeds the cap of " + std::to_string(cap) + " elements");
                work.push_back(std::move(f));
            }
        };
        add(unit_function(q, n));
        for (const Function& f : raw) {
            detail::same_domain(n, f.size());
            add(f);
        }
        while (!work.empty()) {
            Function f = std::move(work.back());
            work.pop_back();
            const std::vector<Function> snapshot(closure.begin(), closure.end());
            for (const Function& g : snapshot) add(pointwise_meet(q, f, g));
        }
        PrefilterBasis out;
        out.n_ = n;
        for (const Function& f : closure) {
            const bool dominated = std::any_of(closure.begin(), closure.end(),
                                               [&](const Function& g) { return g != f && leq(q, g, f); });
            if (!dominated) out.basis_.push_back(f);
        }
        return out;
    }

    std::size_t domain_size() const noexcept { return n_; }
    const std::vector<Function>& basis() const noexcept { return basis_; }

    bool operator==(const PrefilterBasis&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Function> basis_;
};

template <Quantale Q>
bool member(const Q& q, const PrefilterBasis<Q>& F, const QFunction<typename Q::value_type>& lambda) {
    detail::same_domain(F.domain_size(), lambda.size());
    return std::any_of(F.basis().begin(), F.basis().end(), [&](const auto& b) { return leq(q, b, lambda); });
}

// Lambda(F)(lambda) = join over mu in F of sub(mu, lambda); attained on the basis.
template <Quantale Q>
typename Q::value_type lambda_eval(const Q& q, const PrefilterBasis<Q>& F,
                                   const QFunction<typename Q::value_type>& lambda) {
    detail::same_domain(F.domain_size(), lambda.size());
    auto out = q.bottom();
    for (const auto& b : F.basis()) out = q.join(out, sub(q, b, lambda));
    return out;
}

template <Quantale Q>
bool saturation_member(const Q& q, const PrefilterBasis<Q>& F, const QFunction<typename Q::value_type>& lambda) {
    return q.leq(q.unit(), lambda_eval(q, F, lambda));
}

template <Quantale Q>
bool is_top_filter(const Q& q, const PrefilterBasis<Q>& F) {
    if (!(q.unit() == q.top())) throw PreconditionError("top-filter test needs an integral quantale");
    return std::all_of(F.basis().begin(), F.basis().end(),
                       [&](const auto& b) { return q.leq(q.unit(), join_of(q, b)); });
}

// Largest bounded prefilter inside F, for a finite chain: every basis
// element joined with the least positive constant.
inline PrefilterBasis<FiniteQuantale> bounded_coreflection(const FiniteQuantale& q,
                                                           const PrefilterBasis<FiniteQuantale>& F) {
    const auto eps = constant(q, F.domain_size(), q.least_positive());
    std::vector<QFunction<Elem>> raw;
    for (const auto& b : F.basis()) raw.push_back(pointwise_join(q, b, eps));
    return PrefilterBasis<FiniteQuantale>::normalize(q, F.domain_size(), raw);
}

struct EpsilonBasis {
    Rational epsilon;
    PrefilterBasis<TNorm> basis;
};

std::vector<Rational> default_epsilon_schedule();

// The bounded coreflection over [0,1] is the union over eps > 0 of the
// prefilters generated by {b v eps_X}; this lists them along a schedule.
std::vector<EpsilonBasis> bounded_coreflection(const TNorm& t, const PrefilterBasis<TNorm>& F,
                                               const std::vector<Rational>& schedule = default_epsilon_schedule());

// f(F) = {lambda : lambda o f in F}, generated by the images of the basis.
template <Quantale Q>
class ImagePrefilter {
public:
    using Function = QFunction<typename Q::value_type>;

    ImagePrefilter(const Q& q, FiniteMap f, PrefilterBasis<Q> F) : q_(&q), f_(std::move(f)), F_(std::move(F)) {
        detail::same_domain(f_.domain_size(), F_.domain_size());
    }

    bool member(const Function& lambda) const { return qfl::member(*q_, F_, precompose(f_, lambda)); }
    bool saturation_member(const Function& lambda) const {
        return qfl::saturation_member(*q_, basis(), lambda);
    }
    typename Q::value_type lambda_eval(const Function& lambda) const { return qfl::lambda_eval(*q_, basis(), lambda); }

    PrefilterBasis<Q> basis() const {
        std::vector<Function> raw;
        for (const auto& b : F_.basis()) raw.push_back(image(*q_, f_, b));
        return PrefilterBasis<Q>::normalize(*q_, f_.codomain_size(), raw);
    }

private:
    const Q* q_;
    FiniteMap f_;
    PrefilterBasis<Q> F_;
};

}  // namespace qfl
