#include "qfl/semifilter.hpp"

#include <algorithm>

namespace qfl {

SemifilterTable::SemifilterTable(SpacePtr space, std::vector<Elem> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) throw UsageError("semifilter table without a function space");
    if (values_.size() != space_->size())
        throw StructuralError("semifilter table has " + std::to_string(values_.size()) + " entries, expected " +
                              std::to_string(space_->size()));
    for (Elem v : values_)
        if (idx(v) >= space_->quantale().size()) throw StructuralError("semifilter table value outside the carrier");
}

Elem SemifilterTable::operator()(Code c) const {
    if (c >= values_.size()) throw UsageError("function code out of range");
    return values_[c];
}

bool SemifilterTable::operator==(const SemifilterTable& other) const {
    return values_ == other.values_ && space_->same_as(*other.space_);
}

bool SemifilterTable::leq(const SemifilterTable& other) const {
    require_same_space(space(), other.space());
    const FiniteQuantale& q = quantale();
    for (std::size_t c = 0; c < values_.size(); ++c)
        if (!q.leq(values_[c], other.values_[c])) return false;
    return true;
}

void require_same_space(const FunctionSpace& a, const FunctionSpace& b) {
    if (!a.same_as(b)) throw UsageError("semifilter tables live on different function spaces");
}

std::string_view to_string(Axiom a) {
    switch (a) {
        case Axiom::F1: return "F1";
        case Axiom::F2: return "F2";
        case Axiom::F3: return "F3";
        case Axiom::F4: return "F4";
    }
    return "?";
}

std::string_view to_string(ConicalMode m) {
    switch (m) {
        case ConicalMode::Definition: return "DEFINITION";
        case ConicalMode::LemmaSup: return "LEMMA_SUP";
        case ConicalMode::LemmaResiduum: return "LEMMA_RESIDUUM";
    }
    return "?";
}

std::string_view to_string(Requirement r) {
    switch (r) {
        case Requirement::All: return "ALL";
        case Requirement::Filter: return "FILTER";
        case Requirement::Conical: return "CONICAL";
    }
    return "?";
}

std::string_view to_string(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        case Tri::Unknown: return "unknown";
    }
    return "?";
}

std::vector<SemifilterViolation> check_axioms(const SemifilterTable& t, bool require_filter, std::size_t max_reports) {
    const FunctionSpace& s = t.space();
    const FiniteQuantale& q = t.quantale();
    const auto n = static_cast<Code>(s.size());
    std::vector<SemifilterViolation> out;
    auto full = [&] { return out.size() >= max_reports; };

    if (!q.leq(q.unit(), t(s.unit_function()))) out.push_back({Axiom::F1, s.unit_function()});
    for (Code a = 0; a < n && !full(); ++a) {
        for (Code b = 0; b < n && !full(); ++b) {
            if (!q.leq(q.meet(t(a), t(b)), t(s.meet(a, b)))) out.push_back({Axiom::F2, a, b});
            if (!full() && !q.leq(s.sub(a, b), q.residuum(t(a), t(b)))) out.push_back({Axiom::F3, a, b});
        }
    }
    if (require_filter) {
        for (Elem p : q.elements()) {
            if (full()) break;
            if (!q.leq(t(s.constant(p)), p)) out.push_back({Axiom::F4, s.constant(p), 0, p});
        }
    }
    return out;
}

bool is_semifilter(const SemifilterTable& t) { return check_axioms(t, false, 1).empty(); }

bool satisfies_f4(const SemifilterTable& t) {
    const FiniteQuantale& q = t.quantale();
    for (Elem p : q.elements())
        if (!q.leq(t(t.space().constant(p)), p)) return false;
    return true;
}

SemifilterTable unit_e(const SpacePtr& space, std::size_t x) {
    if (x >= space->domain_size()) throw UsageError("unit requested at a point outside X");
    return SemifilterTable::tabulate(space, [&](Code c) { return space->value(c, x); });
}

std::vector<Code> gamma(const SemifilterTable& t) {
    std::vector<Code> out;
    const FiniteQuantale& q = t.quantale();
    for (Code c = 0; c < t.values().size(); ++c)
        if (q.leq(q.unit(), t(c))) out.push_back(c);
    return out;
}

std::vector<Code> minimal_elements(const FunctionSpace& space, const std::vector<char>& member) {
    if (member.size() != space.size()) throw UsageError("membership mask has the wrong size");
    std::vector<char> below(space.size(), 0);
    std::vector<Code> out;
    for (Code c = 0; c < space.size(); ++c) {
        space.for_each_lower_neighbour(c, [&](Code d) {
            if (member[d] || below[d]) below[c] = 1;
        });
        if (member[c] && !below[c]) out.push_back(c);
    }
    return out;
}

SemifilterTable lambda_of(const SpacePtr& space, std::span<const Code> family) {
    std::vector<char> mask(space->size(), 0);
    for (Code c : family) {
        if (c >= space->size()) throw UsageError("function code out of range");
        mask[c] = 1;
    }
    const std::vector<Code> basis = minimal_elements(*space, mask);
    const FiniteQuantale& q = space->quantale();
    return SemifilterTable::tabulate(space, [&](Code lambda) {
        Elem v = q.bottom();
        for (Code b : basis) v = q.join(v, space->sub(b, lambda));
        return v;
    });
}

SemifilterTable lambda_of(const SpacePtr& space, const PrefilterBasis<FiniteQuantale>& basis) {
    if (basis.domain_size() != space->domain_size()) throw UsageError("basis lives on a different domain");
    std::vector<Code> codes;
    for (const auto& b : basis.basis()) codes.push_back(space->code(b));
    return lambda_of(space, codes);
}

SemifilterTable conical_coreflection(const SemifilterTable& t) {
    const std::vector<Code> g = gamma(t);
    return lambda_of(t.space_ptr(), g);
}

bool is_conical(const SemifilterTable& t, ConicalMode mode) {
    const FunctionSpace& s = t.space();
    const FiniteQuantale& q = t.quantale();
    switch (mode) {
        case ConicalMode::Definition:
            return conical_coreflection(t) == t;
        case ConicalMode::LemmaSup:
            for (Code c = 0; c < s.size(); ++c) {
                Elem sup = q.bottom();
                for (Elem p : q.elements())
                    if (q.leq(q.unit(), t(s.residuate(p, c)))) sup = q.join(sup, p);
                if (sup != t(c)) return false;
            }
            return true;
        case ConicalMode::LemmaResiduum:
            if (!q.residuum_preserves_directed_joins())
                throw PreconditionError("residuum test needs p -> - to preserve directed joins on " + q.name());
            for (Code c = 0; c < s.size(); ++c)
                for (Elem p : q.elements())
                    if (t(s.residuate(p, c)) != q.residuum(p, t(c))) return false;
            return true;
    }
    return false;
}

SemifilterTable meet(std::span<const SemifilterTable> tables) {
    if (tables.empty()) throw UsageError("meet of an empty family of tables");
    const SemifilterTable& first = tables.front();
    for (const SemifilterTable& t : tables) require_same_space(first.space(), t.space());
    const FiniteQuantale& q = first.quantale();
    return SemifilterTable::tabulate(first.space_ptr(), [&](Code c) {
        Elem v = q.top();
        for (const SemifilterTable& t : tables) v = q.meet(v, t(c));
        return v;
    });
}

SemifilterTable residuate(Elem p, const SemifilterTable& t) {
    const FiniteQuantale& q = t.quantale();
    return SemifilterTable::tabulate(t.space_ptr(), [&](Code c) { return q.residuum(p, t(c)); });
}

bool is_bounded(const SemifilterTable& t) {
    const FiniteQuantale& q = t.quantale();
    if (!q.is_integral()) throw PreconditionError("boundedness needs an integral quantale");
    const FunctionSpace& s = t.space();
    for (Code c = 0; c < s.size(); ++c)
        if (!s.is_bounded(c) && t(c) == q.top()) return false;
    return true;
}

SemifilterTable theta(const SemifilterTable& t) {
    const FunctionSpace& s = t.space();
    const FiniteQuantale& q = t.quantale();
    std::vector<Code> family;
    for (Code c = 0; c < s.size(); ++c)
        if (s.is_bounded(c) && q.leq(q.unit(), t(c))) family.push_back(c);
    return lambda_of(t.space_ptr(), family);
}

SemifilterTable image_semifilter(const FiniteMap& f, const SemifilterTable& t, const SpacePtr& target, bool bounded) {
    const std::vector<Code> pre = precompose_codes(t.space(), f, *target);
    SemifilterTable out = SemifilterTable::tabulate(target, [&](Code c) { return t(pre[c]); });
    return bounded ? theta(out) : out;
}

namespace {

bool meets_requirement(const SemifilterTable& t, Requirement r) {
    switch (r) {
        case Requirement::All: return true;
        case Requirement::Filter: return satisfies_f4(t);
        case Requirement::Conical: return is_conical(t, ConicalMode::Definition);
    }
    return false;
}

class ChainEnumerator {
public:
    ChainEnumerator(SpacePtr space, Requirement require, std::size_t budget)
        : space_(std::move(space)), q_(space_->quantale()), require_(require), budget_(budget),
          levels_(q_.size() - 1), gens_(levels_ + 1) {}

    std::vector<SemifilterTable> run() {
        descend(1, std::nullopt);
        return std::move(out_);
    }

private:
    // Level sets {F >= c} of a semifilter on a chain are principal filters
    // up(a_c) or empty, nested as c grows; F2 then holds automatically.
    void descend(std::size_t level, std::optional<Code> lower) {
        if (level > levels_) {
            emit(levels_);
            return;
        }
        emit(level - 1);
        for (Code a = lower.value_or(0); a < space_->size(); ++a) {
            if (lower && !space_->leq(*lower, a)) continue;
            gens_[level] = a;
            descend(level + 1, a);
        }
    }

    void emit(std::size_t defined) {
        if (++candidates_ > budget_)
            throw ResourceError("semifilter enumeration on " + q_.name() + "^" +
                                std::to_string(space_->domain_size()) + " exceeds the budget of " +
                                std::to_string(budget_) + " candidates");
        std::vector<Elem> values(space_->size(), q_.bottom());
        for (Code c = 0; c < space_->size(); ++c) {
            for (std::size_t level = 1; level <= defined && space_->leq(gens_[level], c); ++level)
                values[c] = elem(level);
        }
        if (!q_.leq(q_.unit(), values[space_->unit_function()])) return;
        // F3 reduces to the generators: sub(a_c, mu) (x) c <= F(mu).
        for (std::size_t level = 1; level <= defined; ++level)
            for (Code mu = 0; mu < space_->size(); ++mu)
                if (!q_.leq(q_.tensor(space_->sub(gens_[level], mu), elem(level)), values[mu])) return;
        SemifilterTable t(space_, std::move(values));
        if (meets_requirement(t, require_)) out_.push_back(std::move(t));
    }

    SpacePtr space_;
    const FiniteQuantale& q_;
    Requirement require_;
    std::size_t budget_;
    std::size_t levels_;
    std::vector<Code> gens_;
    std::size_t candidates_ = 0;
    std::vector<SemifilterTable> out_;
};

std::vector<SemifilterTable> brute_force(const SpacePtr& space, Requirement require, std::size_t budget) {
    const FiniteQuantale& q = space->quantale();
    std::size_t total = 1;
    for (std::size_t i = 0; i < space->size(); ++i) {
        total *= q.size();
        if (total > budget)
            throw ResourceError("brute-force enumeration on " + q.name() + "^" + std::to_string(space->domain_size()) +
                                " exceeds the budget of " + std::to_string(budget) + " candidates");
    }
    std::vector<SemifilterTable> out;
    std::vector<Elem> values(space->size(), q.bottom());
    for (std::size_t k = 0; k < total; ++k) {
        SemifilterTable t(space, values);
        if (is_semifilter(t) && meets_requirement(t, require)) out.push_back(std::move(t));
        for (std::size_t i = values.size(); i-- > 0;) {
            if (idx(values[i]) + 1 < q.size()) {
                values[i] = elem(idx(values[i]) + 1);
                break;
            }
            values[i] = q.bottom();
        }
    }
    return out;
}

}  // namespace

std::vector<SemifilterTable> enumerate_semifilters(const SpacePtr& space, Requirement require, std::size_t budget) {
    std::vector<SemifilterTable> out = space->quantale().is_chain() ? ChainEnumerator(space, require, budget).run()
                                                                    : brute_force(space, require, budget);
    std::sort(out.begin(), out.end());
    return out;
}

SemifilterKind classify(const SemifilterTable& t) {
    SemifilterKind kind;
    kind.is_filter = satisfies_f4(t) ? Tri::Yes : Tri::No;
    kind.is_conical = is_conical(t) ? Tri::Yes : Tri::No;
    if (t.quantale().is_integral()) kind.is_bounded = is_bounded(t) ? Tri::Yes : Tri::No;
    return kind;
}

SubUniverse::SubUniverse(SpacePtr inner, std::vector<SemifilterTable> members) : inner_(std::move(inner)) {
    for (SemifilterTable& t : members) {
        require_same_space(*inner_, t.space());
        members_.push_back(std::move(t));
    }
}

std::optional<std::size_t> SubUniverse::index_of(const SemifilterTable& t) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i] == t) return i;
    return std::nullopt;
}

std::size_t SubUniverse::add_unique(const SemifilterTable& t) {
    require_same_space(*inner_, t.space());
    if (auto i = index_of(t)) return *i;
    members_.push_back(t);
    return members_.size() - 1;
}

QFunction<Elem> SubUniverse::hat(Code lambda) const {
    QFunction<Elem> out(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) out[i] = members_[i](lambda);
    return out;
}

SemifilterTable kowalsky_sum(const SubUniverse& u, const SemifilterTable& outer) {
    if (outer.domain_size() != u.size())
        throw UsageError("outer table is indexed by " + std::to_string(outer.domain_size()) +
                         " semifilters but the sub-universe has " + std::to_string(u.size()));
    if (!(outer.quantale() == u.inner_space()->quantale())) throw UsageError("outer and inner quantales differ");
    return SemifilterTable::tabulate(u.inner_space(), [&](Code lambda) {
        return outer(outer.space().code(u.hat(lambda)));
    });
}

}  // namespace qfl
