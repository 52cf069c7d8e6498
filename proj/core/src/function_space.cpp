#include "qfl/function_space.hpp"

namespace qfl {

std::shared_ptr<const FunctionSpace> FunctionSpace::make(const FiniteQuantale& q, std::size_t n, std::size_t budget) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        count *= q.size();
        if (count > budget)
            throw ResourceError("function space " + q.name() + "^" + std::to_string(n) + " exceeds the budget of " +
                                std::to_string(budget) + " functions");
    }
    auto space = std::shared_ptr<FunctionSpace>(new FunctionSpace(q, n));
    FunctionSpace& s = *space;
    const std::size_t base = q.size();
    s.count_ = count;
    s.weight_.assign(n, 1);
    for (std::size_t x = n; x-- > 1;) s.weight_[x - 1] = s.weight_[x] * base;

    s.functions_.resize(count);
    s.min_.resize(count);
    s.max_.resize(count);
    for (std::size_t c = 0; c < count; ++c) {
        QFunction<Elem> f(n);
        std::size_t rest = c;
        for (std::size_t x = n; x-- > 0;) {
            f[x] = elem(rest % base);
            rest /= base;
        }
        s.min_[c] = meet_of(q, f);
        s.max_[c] = join_of(q, f);
        s.functions_[c] = std::move(f);
    }

    s.constants_.resize(base);
    for (Elem p : q.elements()) s.constants_[idx(p)] = s.code(QFunction<Elem>(n, p));

    s.residuate_.resize(base * count);
    for (Elem p : q.elements())
        for (std::size_t c = 0; c < count; ++c)
            s.residuate_[idx(p) * count + c] = s.code(qfl::residuate(q, p, s.functions_[c]));

    if (count <= sub_table_limit) {
        s.sub_.resize(count * count);
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = 0; b < count; ++b) s.sub_[a * count + b] = qfl::sub(q, s.functions_[a], s.functions_[b]);
    }
    return space;
}

Code FunctionSpace::code(std::span<const Elem> f) const {
    if (f.size() != n_) throw UsageError("function has the wrong domain size for this space");
    std::size_t c = 0;
    for (std::size_t x = 0; x < n_; ++x) {
        if (idx(f[x]) >= q_.size()) throw UsageError("function value outside the carrier");
        c = c * q_.size() + idx(f[x]);
    }
    return static_cast<Code>(c);
}

Elem FunctionSpace::sub(Code a, Code b) const {
    if (!sub_.empty()) return sub_[check(a) * count_ + check(b)];
    return qfl::sub(q_, function(a), function(b));
}

bool FunctionSpace::leq(Code a, Code b) const { return qfl::leq(q_, function(a), function(b)); }

Code FunctionSpace::meet(Code a, Code b) const { return code(pointwise_meet(q_, function(a), function(b))); }

Code FunctionSpace::join(Code a, Code b) const { return code(pointwise_join(q_, function(a), function(b))); }

std::vector<Code> precompose_codes(const FunctionSpace& domain, const FiniteMap& f, const FunctionSpace& codomain) {
    if (!(domain.quantale() == codomain.quantale())) throw UsageError("spaces over different quantales");
    if (f.domain_size() != domain.domain_size() || f.codomain_size() != codomain.domain_size())
        throw UsageError("map does not match the function spaces");
    std::vector<Code> out(codomain.size());
    for (std::size_t c = 0; c < codomain.size(); ++c)
        out[c] = domain.code(precompose(f, codomain.function(static_cast<Code>(c))));
    return out;
}

}  // namespace qfl
