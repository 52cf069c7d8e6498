#pragma once

#include "qfl/monad.hpp"
#include "qfl/quantale.hpp"
#include "qfl/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qfl {

// Functions [0,1] -> [0,1] in the shape used by the counterexample: exact
// samples at x = 1/m for m <= N, a value at 0, a closed form on the tail
// {1/m : m > N}, and a closed form on the rest R = (0,1) minus {1/m}.
// A ramp piece is clamp(a(1 - x), lo, hi) for the run's slope a.
enum class PieceKind { Constant, Ramp };

struct Piece {
    PieceKind kind = PieceKind::Constant;
    Rational value{0};
    Rational lo{0}, hi{0};

    static Piece constant(Rational c) { return {PieceKind::Constant, std::move(c), Rational(0), Rational(0)}; }
    static Piece ramp(Rational lo, Rational hi) { return {PieceKind::Ramp, Rational(0), std::move(lo), std::move(hi)}; }
    bool operator==(const Piece&) const = default;
};

struct ValueRange {
    Rational vmin;
    bool min_attained = true;
    Rational vmax;
    bool max_attained = true;
};

class FunctionDescriptor {
public:
    FunctionDescriptor(std::string name, Rational slope, std::vector<Rational> samples, Rational at_zero, Piece tail,
                       Piece rest);

    static FunctionDescriptor constant(const Rational& c, std::size_t n, const Rational& slope);
    static FunctionDescriptor two_valued(const Rational& below_one, const Rational& at_one, std::size_t n,
                                         const Rational& slope);

    const std::string& name() const noexcept { return name_; }
    void rename(std::string name) { name_ = std::move(name); }
    const Rational& slope() const noexcept { return slope_; }
    std::size_t truncation() const noexcept { return samples_.size(); }
    // mu(1/m), 1 <= m <= N
    const Rational& sample(std::size_t m) const { return samples_.at(m - 1); }
    const std::vector<Rational>& samples() const noexcept { return samples_; }
    const Rational& at_one() const { return samples_.front(); }
    const Rational& at_zero() const noexcept { return at_zero_; }
    const Piece& tail() const noexcept { return tail_; }
    const Piece& rest() const noexcept { return rest_; }

    ValueRange tail_range() const;
    ValueRange rest_range() const;
    Rational tail_liminf() const;
    Rational global_inf() const;
    Rational inf_off_one() const;
    bool is_bounded() const { return global_inf() > Rational(0); }

    void pin_at_one(const Rational& v) { samples_.front() = v; }

    // Catalog position, or -1 for descriptors built during evaluation.
    std::ptrdiff_t id = -1;

    bool same_function(const FunctionDescriptor& other) const;
    bool operator<(const FunctionDescriptor& other) const;

private:
    Piece normalize(Piece p) const;

    std::string name_;
    Rational slope_;
    std::vector<Rational> samples_;
    Rational at_zero_;
    Piece tail_;
    Piece rest_;
};

enum class PointwiseOp { Join, Meet, Residuum };
std::string_view to_string(PointwiseOp op);

// Pointwise a op b; nullopt when a piece falls outside the closed forms.
std::optional<FunctionDescriptor> combine(const TNorm& t, PointwiseOp op, const FunctionDescriptor& a,
                                          const FunctionDescriptor& b);

struct Bound {
    Rational value;
    bool exact = true;
};

// sub(lambda, mu) = inf_x lambda(x) -> mu(x). Inexact results are lower bounds.
Bound sub(const TNorm& t, const FunctionDescriptor& lambda, const FunctionDescriptor& mu);
// As sub, but may stop once the running infimum is <= floor (result then <= floor).
Bound sub_above(const TNorm& t, const FunctionDescriptor& lambda, const FunctionDescriptor& mu, const Rational& floor);

struct CatalogConfig {
    std::vector<std::size_t> indicator_starts{1, 2, 3};
    std::vector<Rational> extra_constants;
    std::size_t depth = 2;
    std::size_t max_size = 20000;
};

struct EvaluationContext;

class SymbolicSemifilter {
public:
    virtual ~SymbolicSemifilter() = default;
    // Lower bound on the value at mu; evaluation may stop early once the
    // value is known to be >= enough.
    virtual Bound evaluate(EvaluationContext& ctx, const FunctionDescriptor& mu, const Rational& enough) const = 0;
    virtual std::string describe() const = 0;
    virtual bool known_conical(bool bounded) const { (void)bounded; return false; }
    // What the argument of this node must reach, pointwise below 1, for the
    // value to reach enough; 1 when unknown.
    virtual Rational demand(const TNorm& t, const Rational& enough) const { (void)t; (void)enough; return Rational(1); }
};

using SymbolicPtr = std::shared_ptr<const SymbolicSemifilter>;

// mu -> c -> inf mu; pinned: mu(1) & (c -> inf_{x != 1} mu)
SymbolicPtr threshold(Rational c, bool pinned = false);
// mu -> liminf mu(1/m); bounded: the generated bounded Q-filter
SymbolicPtr tail_filter(bool bounded = false);
// mu -> mu(1/m); m = 0 means the point 0
SymbolicPtr point(std::size_t m);
SymbolicPtr residuated(Rational p, SymbolicPtr inner);
SymbolicPtr meet(SymbolicPtr a, SymbolicPtr b);
// The Kleisli diagonal mu -> outer(x -> h(x)(mu)) for h constant on [0,1)
// with value below_one there and at_one at 1.
SymbolicPtr diagonal(SymbolicPtr outer, SymbolicPtr below_one, SymbolicPtr at_one);
// Conical (bounded: conical bounded) coreflection as a catalog supremum.
SymbolicPtr coreflected(SymbolicPtr inner, bool bounded = false);

struct EvaluationContext {
    TNorm tnorm;
    std::vector<FunctionDescriptor> catalog;
    Rational residuum_to_zero;  // sup over p > 0 of p -> 0
    struct Memo {
        Bound bound;
        Rational enough;
        bool complete = false;
    };
    std::map<std::pair<const void*, std::ptrdiff_t>, Memo> memo;
    std::size_t sub_evaluations = 0;
};

struct CounterexampleParams {
    TNorm tnorm;
    std::optional<Rational> t, s;
    std::size_t truncation = 1000;
    Variant variant = Variant::Plain;
    Rational epsilon = Rational(1, 8);
    CatalogConfig catalog;
};

enum class Verdict { Violation, NoViolationFound, NoViolationExpected };
std::string_view to_string(Verdict v);

struct CounterexampleResult {
    TNorm tnorm;
    Variant requested_variant = Variant::Plain;
    Variant variant = Variant::Plain;
    bool condition_s = false;
    std::optional<Block> s_witness;
    Rational p, q, t, s, epsilon;
    std::size_t truncation = 0;
    std::size_t catalog_size = 0;

    std::size_t identity_checks = 0;
    std::size_t identity_failures = 0;
    std::string identity_first_failure;

    Bound step1;
    Bound step2_catalog;
    Rational step2_bound;
    bool certified = false;
    std::vector<std::string> certificate;  // conditions checked, in order
    std::string certificate_failure;
    std::size_t collapse_checks = 0;
    std::size_t collapse_failures = 0;
    bool sound = true;  // catalog lower bound never exceeds the certified bound

    Verdict raw = Verdict::NoViolationFound;
    Verdict verdict = Verdict::NoViolationFound;
    bool consistent = true;
    bool may_underapproximate = false;
    std::vector<std::string> notes;
};

CounterexampleResult run_counterexample(const CounterexampleParams& params);

}  // namespace qfl
