#include "qfl/counterexample.hpp"

#include "qfl/errors.hpp"

#include <algorithm>
#include <set>

namespace qfl {

namespace {

Rational clamp(const Rational& r, const Rational& lo, const Rational& hi) { return std::max(lo, std::min(r, hi)); }

ValueRange piece_range(const Piece& p, const Rational& rmin, bool rmin_attained, const Rational& rmax,
                       bool rmax_attained) {
    if (p.kind == PieceKind::Constant) return {p.value, true, p.value, true};
    ValueRange out;
    out.vmin = clamp(rmin, p.lo, p.hi);
    out.min_attained = rmin_attained || rmin < p.lo || rmin >= p.hi;
    out.vmax = clamp(rmax, p.lo, p.hi);
    out.max_attained = rmax_attained || rmax > p.hi || rmax <= p.lo;
    return out;
}

// Is there an idempotent e with lo < e <= hi (lo <= e when inclusive)?
bool idempotent_in(const TNorm& t, const Rational& lo, bool inclusive, const Rational& hi) {
    if (hi < lo) return false;
    Rational e = hi;
    if (const Block* b = t.block_of(hi)) e = b->lo;
    return inclusive ? e >= lo : e > lo;
}

void require_unit_interval(const Rational& x, const char* what) {
    if (x < Rational(0) || x > Rational(1)) throw UsageError(std::string(what) + " " + pretty(x) + " lies outside [0,1]");
}

}  // namespace

FunctionDescriptor::FunctionDescriptor(std::string name, Rational slope, std::vector<Rational> samples,
                                       Rational at_zero, Piece tail, Piece rest)
    : name_(std::move(name)), slope_(std::move(slope)), samples_(std::move(samples)), at_zero_(std::move(at_zero)) {
    if (samples_.empty()) throw UsageError("descriptor needs at least the sample at 1");
    require_unit_interval(slope_, "slope");
    for (const Rational& v : samples_) require_unit_interval(v, "sample");
    require_unit_interval(at_zero_, "value at 0");
    tail_ = normalize(std::move(tail));
    rest_ = normalize(std::move(rest));
}

Piece FunctionDescriptor::normalize(Piece p) const {
    if (p.kind == PieceKind::Constant) {
        require_unit_interval(p.value, "piece value");
        return Piece::constant(p.value);
    }
    require_unit_interval(p.lo, "ramp bound");
    require_unit_interval(p.hi, "ramp bound");
    if (p.hi < p.lo) throw UsageError("ramp with lo above hi");
    if (p.lo == p.hi || slope_ == Rational(0)) return Piece::constant(p.lo);
    // Above the slope the ramp never leaves lo.
    if (p.lo >= slope_) return Piece::constant(p.lo);
    return p;
}

FunctionDescriptor FunctionDescriptor::constant(const Rational& c, std::size_t n, const Rational& slope) {
    return FunctionDescriptor("const " + pretty(c), slope, std::vector<Rational>(n, c), c, Piece::constant(c),
                              Piece::constant(c));
}

FunctionDescriptor FunctionDescriptor::two_valued(const Rational& below_one, const Rational& at_one, std::size_t n,
                                                  const Rational& slope) {
    std::vector<Rational> samples(n, below_one);
    samples.front() = at_one;
    return FunctionDescriptor("two-valued", slope, std::move(samples), below_one, Piece::constant(below_one),
                              Piece::constant(below_one));
}

ValueRange FunctionDescriptor::tail_range() const {
    const Rational n(static_cast<long long>(samples_.size()));
    return piece_range(tail_, slope_ * n / (n + 1), true, slope_, false);
}

ValueRange FunctionDescriptor::rest_range() const { return piece_range(rest_, Rational(0), false, slope_, false); }

Rational FunctionDescriptor::tail_liminf() const {
    return tail_.kind == PieceKind::Constant ? tail_.value : clamp(slope_, tail_.lo, tail_.hi);
}

Rational FunctionDescriptor::inf_off_one() const {
    Rational out = std::min({at_zero_, tail_range().vmin, rest_range().vmin});
    for (std::size_t i = 1; i < samples_.size(); ++i) out = std::min(out, samples_[i]);
    return out;
}

Rational FunctionDescriptor::global_inf() const { return std::min(inf_off_one(), samples_.front()); }

bool FunctionDescriptor::same_function(const FunctionDescriptor& other) const {
    return slope_ == other.slope_ && at_zero_ == other.at_zero_ && tail_ == other.tail_ && rest_ == other.rest_ &&
           samples_ == other.samples_;
}

namespace {

int compare(const Piece& a, const Piece& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    for (auto [x, y] : {std::pair{&a.value, &b.value}, std::pair{&a.lo, &b.lo}, std::pair{&a.hi, &b.hi}}) {
        if (*x != *y) return *x < *y ? -1 : 1;
    }
    return 0;
}

}  // namespace

bool FunctionDescriptor::operator<(const FunctionDescriptor& other) const {
    if (slope_ != other.slope_) return slope_ < other.slope_;
    if (at_zero_ != other.at_zero_) return at_zero_ < other.at_zero_;
    if (int c = compare(tail_, other.tail_)) return c < 0;
    if (int c = compare(rest_, other.rest_)) return c < 0;
    return samples_ < other.samples_;
}

std::string_view to_string(PointwiseOp op) {
    switch (op) {
        case PointwiseOp::Join: return "v";
        case PointwiseOp::Meet: return "&";
        case PointwiseOp::Residuum: return "->";
    }
    return "?";
}

namespace {

Rational apply(const TNorm& t, PointwiseOp op, const Rational& a, const Rational& b) {
    switch (op) {
        case PointwiseOp::Join: return std::max(a, b);
        case PointwiseOp::Meet: return std::min(a, b);
        case PointwiseOp::Residuum: return t.residuum(a, b);
    }
    return a;
}

std::optional<Piece> combine_pieces(const TNorm& t, PointwiseOp op, const Piece& a, const ValueRange& ra,
                                    const Piece& b, const ValueRange& rb) {
    const bool ca = a.kind == PieceKind::Constant;
    const bool cb = b.kind == PieceKind::Constant;
    if (ca && cb) return Piece::constant(apply(t, op, a.value, b.value));
    if (op == PointwiseOp::Join || op == PointwiseOp::Meet) {
        auto pick = [op](const Rational& x, const Rational& y) {
            return op == PointwiseOp::Join ? std::max(x, y) : std::min(x, y);
        };
        const Rational alo = ca ? a.value : a.lo, ahi = ca ? a.value : a.hi;
        const Rational blo = cb ? b.value : b.lo, bhi = cb ? b.value : b.hi;
        return Piece::ramp(pick(alo, blo), pick(ahi, bhi));
    }
    if (ca) {
        if (a.value <= rb.vmin) return Piece::constant(Rational(1));
        // c -> v = v whenever v < e <= c for an idempotent e.
        if (idempotent_in(t, rb.vmax, !rb.max_attained, a.value)) return b;
        return std::nullopt;
    }
    if (cb) {
        if (ra.vmax <= b.value) return Piece::constant(Rational(1));
        // v -> d = d whenever d < e <= v for an idempotent e.
        if (idempotent_in(t, b.value, false, ra.vmin)) return Piece::constant(b.value);
        return std::nullopt;
    }
    if (a.lo <= b.lo && a.hi <= b.hi) return Piece::constant(Rational(1));
    return std::nullopt;
}

}  // namespace

std::optional<FunctionDescriptor> combine(const TNorm& t, PointwiseOp op, const FunctionDescriptor& a,
                                          const FunctionDescriptor& b) {
    if (a.slope() != b.slope() || a.truncation() != b.truncation())
        throw UsageError("descriptors with different slopes or truncations cannot be combined");
    auto tail = combine_pieces(t, op, a.tail(), a.tail_range(), b.tail(), b.tail_range());
    if (!tail) return std::nullopt;
    auto rest = combine_pieces(t, op, a.rest(), a.rest_range(), b.rest(), b.rest_range());
    if (!rest) return std::nullopt;
    std::vector<Rational> samples(a.truncation());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = apply(t, op, a.samples()[i], b.samples()[i]);
    return FunctionDescriptor("(" + a.name() + " " + std::string(to_string(op)) + " " + b.name() + ")", a.slope(),
                              std::move(samples), apply(t, op, a.at_zero(), b.at_zero()), *tail, *rest);
}

namespace {

Bound piece_sub(const TNorm& t, const Piece& a, const ValueRange& ra, const Piece& b, const ValueRange& rb) {
    const bool ca = a.kind == PieceKind::Constant;
    const bool cb = b.kind == PieceKind::Constant;
    // c -> inf = inf (c -> -) and (sup) -> d = inf (- -> d): both exact.
    if (ca && cb) return {t.residuum(a.value, b.value), true};
    if (ca) return {t.residuum(a.value, rb.vmin), true};
    if (cb) return {t.residuum(ra.vmax, b.value), true};
    if (a.lo <= b.lo && a.hi <= b.hi) return {Rational(1), true};
    return {t.residuum(ra.vmax, rb.vmin), false};
}

}  // namespace

Bound sub_above(const TNorm& t, const FunctionDescriptor& lambda, const FunctionDescriptor& mu,
                const Rational& floor) {
    if (lambda.slope() != mu.slope() || lambda.truncation() != mu.truncation())
        throw UsageError("descriptors with different slopes or truncations cannot be compared");
    Bound out{Rational(1), true};
    auto take = [&](const Bound& b) {
        if (b.value < out.value) out.value = b.value;
        out.exact = out.exact && b.exact;
        return out.value <= floor;
    };
    if (take(piece_sub(t, lambda.tail(), lambda.tail_range(), mu.tail(), mu.tail_range()))) return out;
    if (take(piece_sub(t, lambda.rest(), lambda.rest_range(), mu.rest(), mu.rest_range()))) return out;
    if (take({t.residuum(lambda.at_zero(), mu.at_zero()), true})) return out;
    const auto& a = lambda.samples();
    const auto& b = mu.samples();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] <= b[i]) continue;
        if (take({t.residuum(a[i], b[i]), true})) return out;
    }
    return out;
}

Bound sub(const TNorm& t, const FunctionDescriptor& lambda, const FunctionDescriptor& mu) {
    return sub_above(t, lambda, mu, Rational(-1));
}

// ---------------------------------------------------------------------------

namespace {

class Threshold final : public SymbolicSemifilter {
public:
    Threshold(Rational c, bool pinned) : c_(std::move(c)), pinned_(pinned) {}
    Bound evaluate(EvaluationContext& ctx, const FunctionDescriptor& mu, const Rational&) const override {
        if (pinned_) return {std::min(mu.at_one(), ctx.tnorm.residuum(c_, mu.inf_off_one())), true};
        return {ctx.tnorm.residuum(c_, mu.global_inf()), true};
    }
    std::string describe() const override {
        return pinned_ ? "mu(1) & (" + pretty(c_) + " -> inf_{x!=1} mu)" : pretty(c_) + " -> inf mu";
    }
    bool known_conical(bool bounded) const override { return !bounded || c_ > Rational(0); }
    Rational demand(const TNorm& t, const Rational& enough) const override { return t.tensor(c_, enough); }

private:
    Rational c_;
    bool pinned_;
};

class TailFilter final : public SymbolicSemifilter {
public:
    explicit TailFilter(bool bounded) : bounded_(bounded) {}
    Bound evaluate(EvaluationContext& ctx, const FunctionDescriptor& mu, const Rational&) const override {
        if (!bounded_) return {mu.tail_liminf(), true};
        // sup over n and delta > 0 of inf_{A_n} mu & inf_{x not in A_n} (delta -> mu(x)),
        // and sup_{delta > 0} (delta -> v) is 1 for v > 0, else sup_{p>0} p -> 0.
        auto phi = [&](const Rational& v) { return v > Rational(0) ? Rational(1) : ctx.residuum_to_zero; };
        const std::size_t n_max = mu.truncation();
        const ValueRange tail = mu.tail_range();
        std::vector<Rational> suffix(n_max + 1);
        suffix[n_max] = tail.vmin;
        for (std::size_t i = n_max; i-- > 0;) suffix[i] = std::min(suffix[i + 1], mu.samples()[i]);
        Rational outside = std::min(mu.at_zero(), mu.rest_range().vmin);
        Rational best(0);
        for (std::size_t n = 1; n <= n_max + 1; ++n) {
            if (n >= 2) outside = std::min(outside, mu.samples()[n - 2]);
            best = std::max(best, std::min(suffix[n - 1], phi(outside)));
        }
        best = std::max(best, std::min(mu.tail_liminf(), phi(std::min(outside, tail.vmin))));
        return {best, true};
    }
    std::string describe() const override { return bounded_ ? "bounded liminf filter" : "liminf mu(1/m)"; }
    bool known_conical(bool) const override { return true; }

private:
    bool bounded_;
};

class Point final : public SymbolicSemifilter {
public:
    explicit Point(std::size_t m) : m_(m) {}
    Bound evaluate(EvaluationContext&, const FunctionDescriptor& mu, const Rational&) const override {
        return {m_ == 0 ? mu.at_zero() : mu.sample(m_), true};
    }
    std::string describe() const override { return m_ == 0 ? "mu(0)" : "mu(1/" + std::to_string(m_) + ")"; }
    bool known_conical(bool) const override { return true; }

private:
    std::size_t m_;
};

class Residuated final : public SymbolicSemifilter {
public:
    Residuated(Rational p, SymbolicPtr inner) : p_(std::move(p)), inner_(std::move(inner)) {}
    Bound evaluate(EvaluationContext& ctx, const FunctionDescriptor& mu, const Rational& enough) const override {
        const Bound b = inner_->evaluate(ctx, mu, ctx.tnorm.tensor(p_, enough));
        return {ctx.tnorm.residuum(p_, b.value), b.exact};
    }
    std::string describe() const override { return pretty(p_) + " -> [" + inner_->describe() + "]"; }

private:
    Rational p_;
    SymbolicPtr inner_;
};

class Meet final : public SymbolicSemifilter {
public:
    Meet(SymbolicPtr a, SymbolicPtr b) : a_(std::move(a)), b_(std::move(b)) {}
    Bound evaluate(EvaluationContext& ctx, const FunctionDescriptor& mu, const Rational& enough) const override {
        const Bound x = a_->evaluate(ctx, mu, enough);
        const Bound y = b_->evaluate(ctx, mu, enough);
        return {std::min(x.value, y.value), x.exact && y.exact};
    }
    std::string describe() const override { return "[" + a_->describe() + "] & [" + b_->describe() + "]"; }

private:
    SymbolicPtr a_, b_;
};

class Diagonal final : public SymbolicSemifilter {
public:
    Diagonal(SymbolicPtr outer, SymbolicPtr below, SymbolicPtr at)
        : outer_(std::move(outer)), below_(std::move(below)), at_(std::move(at)) {}
    Bound evaluate(EvaluationContext& ctx, const FunctionDescriptor& mu, const Rational& enough) const override {
        const Rational need = outer_->demand(ctx.tnorm, enough);
        const Bound below = below_->evaluate(ctx, mu, need);
        const Bound at = at_ == below_ ? below : at_->evaluate(ctx, mu, enough);
        const FunctionDescriptor psi =
            FunctionDescriptor::two_valued(below.value, at.value, mu.truncation(), mu.slope());
        const Bound out = outer_->evaluate(ctx, psi, enough);
        return {out.value, out.exact && below.exact && at.exact};
    }
    std::string describe() const override {
        return "diag(" + outer_->describe() + "; x<1: " + below_->describe() + "; x=1: " + at_->describe() + ")";
    }

private:
    SymbolicPtr outer_, below_, at_;
};

class Coreflected final : public SymbolicSemifilter {
public:
    Coreflected(SymbolicPtr inner, bool bounded) : inner_(std::move(inner)), bounded_(bounded) {}

    Bound evaluate(EvaluationContext& ctx, const FunctionDescriptor& mu, const Rational& enough) const override {
        if (inner_->known_conical(bounded_)) return inner_->evaluate(ctx, mu, enough);
        const auto key = std::make_pair(static_cast<const void*>(this), mu.id);
        if (mu.id >= 0) {
            auto it = ctx.memo.find(key);
            if (it != ctx.memo.end() && (it->second.complete || it->second.bound.value >= enough))
                return it->second.bound;
        }
        Bound best{Rational(0), false};
        bool complete = true;
        auto consider = [&](const FunctionDescriptor& nu) {
            if (best.value >= enough) {
                complete = false;
                return true;
            }
            if (bounded_ && !nu.is_bounded()) return false;
            ++ctx.sub_evaluations;
            const Bound s = sub_above(ctx.tnorm, nu, mu, best.value);
            if (s.value <= best.value) return false;
            if (!accepted(ctx, nu)) return false;
            best = s;
            return best.value == Rational(1);
        };
        bool done = mu.id >= 0 && consider(ctx.catalog[static_cast<std::size_t>(mu.id)]);
        for (std::size_t i = 0; !done && i < ctx.catalog.size(); ++i) {
            if (static_cast<std::ptrdiff_t>(i) == mu.id) continue;
            done = consider(ctx.catalog[i]);
        }
        // Only a top value attained by an exact witness is known to be the supremum.
        best.exact = best.exact && best.value == Rational(1);
        if (mu.id >= 0) ctx.memo[key] = {best, enough, complete || best.value == Rational(1)};
        return best;
    }

    std::string describe() const override {
        return std::string(bounded_ ? "theta" : "c") + "(" + inner_->describe() + ")";
    }
    bool known_conical(bool bounded) const override { return !bounded || bounded_; }

private:
    bool accepted(EvaluationContext& ctx, const FunctionDescriptor& nu) const {
        const auto key = std::make_pair(static_cast<const void*>(inner_.get()), nu.id);
        if (nu.id >= 0) {
            auto it = ctx.memo.find(key);
            if (it != ctx.memo.end() && it->second.complete) return it->second.bound.value >= Rational(1);
        }
        const Bound b = inner_->evaluate(ctx, nu, Rational(1));
        if (nu.id >= 0) ctx.memo[key] = {b, Rational(1), true};
        return b.value >= Rational(1);
    }

    SymbolicPtr inner_;
    bool bounded_;
};

}  // namespace

SymbolicPtr threshold(Rational c, bool pinned) { return std::make_shared<Threshold>(std::move(c), pinned); }
SymbolicPtr tail_filter(bool bounded) { return std::make_shared<TailFilter>(bounded); }
SymbolicPtr point(std::size_t m) { return std::make_shared<Point>(m); }
SymbolicPtr residuated(Rational p, SymbolicPtr inner) {
    return std::make_shared<Residuated>(std::move(p), std::move(inner));
}
SymbolicPtr meet(SymbolicPtr a, SymbolicPtr b) { return std::make_shared<Meet>(std::move(a), std::move(b)); }
SymbolicPtr diagonal(SymbolicPtr outer, SymbolicPtr below_one, SymbolicPtr at_one) {
    return std::make_shared<Diagonal>(std::move(outer), std::move(below_one), std::move(at_one));
}
SymbolicPtr coreflected(SymbolicPtr inner, bool bounded) {
    return std::make_shared<Coreflected>(std::move(inner), bounded);
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Violation: return "VIOLATION";
        case Verdict::NoViolationFound: return "NO_VIOLATION_FOUND";
        case Verdict::NoViolationExpected: return "NO_VIOLATION_EXPECTED";
    }
    return "?";
}

// ---------------------------------------------------------------------------

namespace {

struct Setup {
    Rational p, q, t, s;
};

Setup choose_parameters(const TNorm& tn, const ConditionS& cs, const CounterexampleParams& params) {
    Setup out;
    if (cs.satisfied) {
        out.t = params.t.value_or(Rational(1, 2));
        out.s = params.s.value_or(Rational(1, 2));
        require_unit_interval(out.t, "t");
        require_unit_interval(out.s, "s");
        out.p = tn.tensor(out.t, out.s);
        out.q = Rational(1);
        return out;
    }
    const Block& witness = *cs.witness;
    const Block* block = &witness;
    if (params.t) {
        block = tn.block_of(*params.t);
        if (block == nullptr || block->kind != BlockKind::Lukasiewicz || block->lo == Rational(0))
            throw PreconditionError("t = " + pretty(*params.t) +
                                    " does not lie strictly inside a Lukasiewicz block (p,q) with p > 0");
    }
    out.p = block->lo;
    out.q = block->hi;
    const Rational mid = (out.p + out.q) / 2;
    out.t = params.t.value_or(mid);
    out.s = params.s.value_or(mid);
    for (const auto& [name, v] : {std::pair{"t", &out.t}, std::pair{"s", &out.s}}) {
        if (!block->interior(*v))
            throw PreconditionError(std::string(name) + " = " + pretty(*v) + " must lie strictly inside (" +
                                    pretty(out.p) + "," + pretty(out.q) + ")");
    }
    const Rational ts = tn.tensor(out.t, out.s);
    if (ts != out.p)
        throw PreconditionError("t (x) s = " + pretty(ts) + " but the proof needs t (x) s = p = " + pretty(out.p));
    return out;
}

FunctionDescriptor make_gamma(Variant v, const Rational& p, const Rational& eps, std::size_t n) {
    const Rational lo = v == Variant::Bounded ? eps : Rational(0);
    std::vector<Rational> samples(n);
    for (std::size_t m = 1; m <= n; ++m)
        samples[m - 1] = std::max(lo, p * (1 - Rational(1, static_cast<long long>(m))));
    if (v == Variant::Filter) samples.front() = Rational(1);
    return FunctionDescriptor("gamma", p, std::move(samples), std::max(lo, p), Piece::ramp(lo, p),
                              Piece::ramp(lo, p));
}

FunctionDescriptor make_indicator(std::size_t start, const Rational& delta, std::size_t n, const Rational& slope) {
    if (start < 1 || start > n + 1)
        throw UsageError("indicator start " + std::to_string(start) + " must lie in [1, N+1]");
    std::vector<Rational> samples(n);
    for (std::size_t m = 1; m <= n; ++m) samples[m - 1] = m >= start ? Rational(1) : delta;
    return FunctionDescriptor("1_A" + std::to_string(start) + " v " + pretty(delta), slope, std::move(samples), delta,
                              Piece::constant(Rational(1)), Piece::constant(delta));
}

std::vector<FunctionDescriptor> build_catalog(const TNorm& tn, Variant v, const Setup& su, const Rational& eps,
                                              std::size_t n, const CatalogConfig& config) {
    if (config.depth < 1 || config.depth > 2) throw UsageError("catalog depth must be 1 or 2");
    std::vector<FunctionDescriptor> base;
    base.push_back(make_gamma(v, su.p, eps, n));
    std::vector<Rational> deltas{Rational(0), su.p};
    if (v == Variant::Bounded) deltas.push_back(eps);
    for (std::size_t start : config.indicator_starts)
        for (const Rational& d : deltas) base.push_back(make_indicator(start, d, n, su.p));
    std::vector<Rational> constants{Rational(0), su.p, su.p / 2, su.s, su.t, su.q, Rational(1)};
    for (const Rational& c : config.extra_constants) {
        require_unit_interval(c, "catalog constant");
        constants.push_back(c);
    }
    for (const Rational& c : constants) base.push_back(FunctionDescriptor::constant(c, n, su.p));

    std::vector<FunctionDescriptor> all = base;
    if (config.depth >= 2) {
        for (std::size_t i = 0; i < base.size(); ++i) {
            for (std::size_t j = 0; j < base.size(); ++j) {
                if (i == j) continue;
                if (i < j) {
                    for (PointwiseOp op : {PointwiseOp::Join, PointwiseOp::Meet})
                        if (auto d = combine(tn, op, base[i], base[j])) all.push_back(std::move(*d));
                }
                if (auto d = combine(tn, PointwiseOp::Residuum, base[i], base[j])) all.push_back(std::move(*d));
                if (all.size() > 4 * config.max_size)
                    throw ResourceError("witness catalog exceeds " + std::to_string(config.max_size) + " entries");
            }
        }
    }
    if (v == Variant::Filter)
        for (FunctionDescriptor& d : all) d.pin_at_one(Rational(1));

    std::vector<FunctionDescriptor> out;
    std::set<const FunctionDescriptor*, bool (*)(const FunctionDescriptor*, const FunctionDescriptor*)> seen(
        [](const FunctionDescriptor* a, const FunctionDescriptor* b) { return *a < *b; });
    out.reserve(all.size());
    for (FunctionDescriptor& d : all) {
        if (seen.count(&d)) continue;
        seen.insert(&d);
        out.push_back(d);
    }
    if (out.size() > config.max_size)
        throw ResourceError("witness catalog has " + std::to_string(out.size()) + " entries, above the cap of " +
                            std::to_string(config.max_size));
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<std::ptrdiff_t>(i);
    return out;
}

}  // namespace

CounterexampleResult run_counterexample(const CounterexampleParams& params) {
    const TNorm& tn = params.tnorm;
    if (params.truncation < 2) throw UsageError("truncation depth must be at least 2");

    CounterexampleResult r;
    r.tnorm = tn;
    r.requested_variant = params.variant;
    r.variant = params.variant;
    r.truncation = params.truncation;
    r.epsilon = params.epsilon;
    const ConditionS cs = check_condition_s(tn);
    r.condition_s = cs.satisfied;
    r.s_witness = cs.witness;
    if (r.variant == Variant::Bounded && tn.is_lukasiewicz_isomorphic()) {
        r.variant = Variant::Plain;
        r.notes.push_back("Lukasiewicz-isomorphic t-norm: the bounded monad is the plain one, run as plain");
    }

    const Setup su = choose_parameters(tn, cs, params);
    r.p = su.p;
    r.q = su.q;
    r.t = su.t;
    r.s = su.s;
    const bool bounded = r.variant == Variant::Bounded;
    const bool pinned = r.variant == Variant::Filter;
    if (bounded && !(Rational(0) < r.epsilon && r.epsilon < r.p))
        throw PreconditionError("bounded variant needs 0 < epsilon < p, got epsilon = " + pretty(r.epsilon) +
                                " and p = " + pretty(r.p));

    EvaluationContext ctx{tn, build_catalog(tn, r.variant, su, r.epsilon, r.truncation, params.catalog),
                          sup_residuum_to_zero(tn), {}, 0};
    r.catalog_size = ctx.catalog.size();
    const FunctionDescriptor& gamma = ctx.catalog.front();

    const SymbolicPtr F = threshold(su.t, pinned);
    const SymbolicPtr H = threshold(su.s, pinned);
    const SymbolicPtr G = tail_filter(bounded);
    const SymbolicPtr at_one = point(1);
    const SymbolicPtr f_at_one = pinned ? at_one : F;
    const SymbolicPtr g_at_one = pinned ? at_one : G;

    // (a) the diagonal of H along f is p -> inf, as an identity on the catalog
    const SymbolicPtr fH_diag = diagonal(H, F, f_at_one);
    const SymbolicPtr fH = threshold(su.p, pinned);
    for (const FunctionDescriptor& mu : ctx.catalog) {
        ++r.identity_checks;
        const Bound lhs = fH_diag->evaluate(ctx, mu, Rational(1));
        const Bound rhs = fH->evaluate(ctx, mu, Rational(1));
        if (lhs.value != rhs.value) {
            if (r.identity_failures == 0)
                r.identity_first_failure = mu.name() + ": " + pretty(lhs.value) + " vs " + pretty(rhs.value);
            ++r.identity_failures;
        }
    }

    // Step 1: g# f# H at gamma
    const SymbolicPtr step1 = coreflected(diagonal(fH, G, g_at_one), bounded);
    r.step1 = step1->evaluate(ctx, gamma, Rational(1));

    // Step 2: (g# o f)# H at gamma; on [0,1) the map is g#(F), at 1 (filter) g#(d(1)) = d(1)
    const SymbolicPtr gF = coreflected(diagonal(F, G, g_at_one), bounded);
    const SymbolicPtr h_at_one = pinned ? at_one : gF;
    const SymbolicPtr step2 = coreflected(diagonal(H, gF, h_at_one), bounded);
    r.step2_catalog = step2->evaluate(ctx, gamma, Rational(1));

    // Certified upper bound p for step 2
    bool ok = true;
    auto require = [&](bool cond, std::string what) {
        r.certificate.push_back(what);
        if (ok && !cond) {
            ok = false;
            r.certificate_failure = std::move(what);
        }
    };
    require(r.p > Rational(0), "p > 0");
    require(tn.is_idempotent(r.p), "p idempotent");
    require(r.t > r.p, "t > p");
    require(r.s > r.p, "s > p");
    require(tn.tensor(r.t, r.s) == r.p, "t (x) s = p");
    if (bounded) require(Rational(0) < r.epsilon && r.epsilon < r.p, "0 < epsilon < p");
    const std::size_t first_m = pinned ? 2 : 1;
    bool below = true;
    for (std::size_t m = first_m; m <= r.truncation; ++m) below = below && gamma.sample(m) < r.p;
    const ValueRange gt = gamma.tail_range();
    below = below && (gt.vmax < r.p || (gt.vmax == r.p && !gt.max_attained));
    require(below, "gamma(1/m) < p for m >= " + std::to_string(first_m) + " and on the tail");
    if (ok) {
        for (const FunctionDescriptor& mu : ctx.catalog) {
            for (std::size_t m = first_m; m <= r.truncation; ++m) {
                const Rational& x = mu.sample(m);
                if (x < r.p) continue;
                ++r.collapse_checks;
                if (tn.residuum(x, gamma.sample(m)) != gamma.sample(m)) ++r.collapse_failures;
            }
        }
    }
    require(r.collapse_failures == 0,
            "mu(1/m) -> gamma(1/m) = gamma(1/m) whenever mu(1/m) >= p (catalog, m <= N)");
    r.certified = ok;
    r.step2_bound = ok ? r.p : Rational(1);
    r.sound = r.step2_catalog.value <= r.step2_bound;

    r.raw = r.step1.value > r.step2_bound ? Verdict::Violation : Verdict::NoViolationFound;
    if (r.condition_s) {
        r.verdict = Verdict::NoViolationExpected;
        r.consistent = r.raw != Verdict::Violation;
    } else {
        r.verdict = r.raw;
        r.consistent = r.raw == Verdict::Violation;
    }
    r.consistent = r.consistent && r.identity_failures == 0 && r.sound;
    r.may_underapproximate = !(r.step1.exact && r.step2_catalog.exact);
    if (r.may_underapproximate)
        r.notes.push_back("catalog suprema are lower bounds; a value below 1 may under-approximate the true supremum");
    if (!r.sound) r.notes.push_back("catalog value for step 2 exceeds the certified bound");
    return r;
}

}  // namespace qfl
