#pragma once

#include "qfl/errors.hpp"
#include "qfl/rational.hpp"

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qfl {

template <class Q>
concept Quantale = requires(const Q& q, const typename Q::value_type& a) {
    { q.tensor(a, a) } -> std::convertible_to<typename Q::value_type>;
    { q.residuum(a, a) } -> std::convertible_to<typename Q::value_type>;
    { q.join(a, a) } -> std::convertible_to<typename Q::value_type>;
    { q.meet(a, a) } -> std::convertible_to<typename Q::value_type>;
    { q.leq(a, a) } -> std::convertible_to<bool>;
    { q.top() } -> std::convertible_to<typename Q::value_type>;
    { q.bottom() } -> std::convertible_to<typename Q::value_type>;
    { q.unit() } -> std::convertible_to<typename Q::value_type>;
};

// ---------------------------------------------------------------------------
// Continuous t-norms on [0,1] as ordinal sums.

enum class BlockKind { Lukasiewicz, Product };

std::string_view to_string(BlockKind kind);
BlockKind parse_block_kind(std::string_view text);

struct Block {
    Rational lo;
    Rational hi;
    BlockKind kind;

    bool operator==(const Block&) const = default;
    bool interior(const Rational& x) const { return lo < x && x < hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

std::string describe(const Block& block);

class TNorm {
public:
    using value_type = Rational;

    TNorm() = default;

    // Sorts the blocks; rejects reversed, zero-width, out-of-range and
    // overlapping blocks with ConstructionError.
    static TNorm build(std::vector<Block> blocks);
    static TNorm godel() { return TNorm(); }
    static TNorm product();
    static TNorm lukasiewicz();

    const std::vector<Block>& blocks() const noexcept { return blocks_; }

    Rational tensor(const Rational& x, const Rational& y) const;
    Rational residuum(const Rational& x, const Rational& y) const;
    Rational join(const Rational& x, const Rational& y) const;
    Rational meet(const Rational& x, const Rational& y) const;
    bool leq(const Rational& x, const Rational& y) const;
    Rational top() const { return Rational(1); }
    Rational bottom() const { return Rational(0); }
    Rational unit() const { return Rational(1); }

    bool is_idempotent(const Rational& x) const;
    bool way_below(const Rational& x, const Rational& y) const;
    bool contains(const Rational& x) const { return Rational(0) <= x && x <= Rational(1); }

    // Block holding x strictly inside, if any.
    const Block* block_of(const Rational& x) const;
    bool is_lukasiewicz_isomorphic() const;

    bool operator==(const TNorm&) const = default;

private:
    explicit TNorm(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}
    void require(const Rational& x) const;
    const Block* common_block(const Rational& x, const Rational& y) const;

    std::vector<Block> blocks_;
};

std::string describe(const TNorm& t);

struct ConditionS {
    bool satisfied = true;
    std::optional<Block> witness;
};

ConditionS check_condition_s(const TNorm& t);

// max{z on the grid 0, step, ..., 1 : x ⊗ z <= y}; step must be 1/2^n.
Rational residuum_grid_oracle(const TNorm& t, const Rational& x, const Rational& y, const Rational& step);

std::vector<Rational> dyadic_grid(unsigned exponent);

struct ContinuityProbe {
    bool jump_found = false;
    Rational x, y;
    Rational x2, y2;
    Rational jump;
    Rational allowed;
    std::size_t pairs_checked = 0;
};

// Scans grid-adjacent off-diagonal pairs for residuum jumps larger than
// step times the local Lipschitz constant of the block closed forms.
ContinuityProbe probe_residuum_continuity(const TNorm& t, unsigned exponent);

// sup_{p>0} (p -> 0), computed as the limit p -> 0+.
Rational sup_residuum_to_zero(const TNorm& t);
// max over grid points p = k/2^n, k >= 1, of p -> 0.
Rational grid_sup_residuum_to_zero(const TNorm& t, unsigned exponent);

// ---------------------------------------------------------------------------
// Finite quantales given by tables.

enum class Elem : std::uint8_t {};

constexpr std::size_t idx(Elem e) noexcept { return static_cast<std::size_t>(e); }
constexpr Elem elem(std::size_t i) noexcept { return static_cast<Elem>(i); }

class FiniteQuantale {
public:
    using value_type = Elem;
    static constexpr std::size_t max_size = 64;

    // Labels strictly ascending from 0 to 1; order is the numeric order.
    static FiniteQuantale chain(std::string name, std::vector<Rational> labels,
                                const std::vector<std::vector<std::size_t>>& tensor, std::size_t unit);

    // Labels must list the carrier in a linear extension of the order given
    // by the meet table. Join and meet tables are checked for consistency.
    static FiniteQuantale lattice(std::string name, std::vector<Rational> labels,
                                  const std::vector<std::vector<std::size_t>>& join,
                                  const std::vector<std::vector<std::size_t>>& meet,
                                  const std::vector<std::vector<std::size_t>>& tensor, std::size_t unit);

    // Restriction of a t-norm to a finite chain; the chain must be closed
    // under the tensor.
    static FiniteQuantale from_tnorm(std::string name, const TNorm& t, std::vector<Rational> labels);

    static FiniteQuantale boolean();
    static FiniteQuantale godel3();
    static FiniteQuantale mv3();
    static FiniteQuantale chain5();
    static std::vector<FiniteQuantale> shipped_chains();

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return n_; }
    std::vector<Elem> elements() const;
    const Rational& label(Elem a) const;
    std::optional<Elem> find(const Rational& value) const;
    Elem at(const Rational& value) const;

    Elem tensor(Elem a, Elem b) const { return tensor_[check(a) * n_ + check(b)]; }
    Elem residuum(Elem a, Elem b) const { return residuum_[check(a) * n_ + check(b)]; }
    Elem join(Elem a, Elem b) const { return join_[check(a) * n_ + check(b)]; }
    Elem meet(Elem a, Elem b) const { return meet_[check(a) * n_ + check(b)]; }
    bool leq(Elem a, Elem b) const { return leq_[check(a) * n_ + check(b)] != 0; }
    Elem top() const { return elem(n_ - 1); }
    Elem bottom() const { return elem(0); }
    Elem unit() const { return unit_; }

    bool is_chain() const noexcept { return chain_; }
    bool is_integral() const { return unit_ == top(); }
    bool is_idempotent(Elem a) const { return tensor(a, a) == a; }

    // Decided from the definition: every nonempty directed subset whose
    // join is above b contains an element above a.
    bool way_below(Elem a, Elem b) const;
    // p -> (join D) = join (p -> D) for every p and nonempty directed D.
    bool residuum_preserves_directed_joins() const;

    // Least element strictly above bottom; chains only.
    Elem least_positive() const;

    bool operator==(const FiniteQuantale& other) const;

private:
    FiniteQuantale() = default;
    std::size_t check(Elem a) const {
        if (idx(a) >= n_) throw UsageError("element index outside the carrier of " + name_);
        return idx(a);
    }
    void finish();
    template <class Visit>
    void for_each_directed_subset(Visit&& visit) const;

    std::string name_;
    std::size_t n_ = 0;
    bool chain_ = true;
    std::vector<Rational> labels_;
    std::vector<Elem> tensor_, residuum_, join_, meet_;
    std::vector<std::uint8_t> leq_;
    Elem unit_{};
};

// ---------------------------------------------------------------------------
// Law checking over explicit element lists.

template <class V>
struct LawViolation {
    std::string law;
    std::vector<V> witness;
};

enum class Law : unsigned {
    Commutativity = 1u << 0,
    Associativity = 1u << 1,
    Unit = 1u << 2,
    Monotonicity = 1u << 3,
    JoinDistributivity = 1u << 4,
    Adjunction = 1u << 5,
};

constexpr unsigned operator|(Law a, Law b) { return static_cast<unsigned>(a) | static_cast<unsigned>(b); }
constexpr unsigned operator|(unsigned a, Law b) { return a | static_cast<unsigned>(b); }

inline constexpr unsigned quantale_laws = Law::Commutativity | Law::Associativity | Law::Unit |
                                          Law::Monotonicity | Law::JoinDistributivity;

template <Quantale Q>
std::vector<LawViolation<typename Q::value_type>> check_laws(const Q& q,
                                                             std::span<const typename Q::value_type> values,
                                                             unsigned laws, std::size_t max_reports = 64) {
    using V = typename Q::value_type;
    std::vector<LawViolation<V>> out;
    auto report = [&](const char* law, std::vector<V> w) {
        if (out.size() < max_reports) out.push_back({law, std::move(w)});
    };
    auto has = [laws](Law l) { return (laws & static_cast<unsigned>(l)) != 0; };
    if (has(Law::Unit) || has(Law::JoinDistributivity)) {
        for (const V& a : values) {
            if (has(Law::Unit) && !(q.tensor(a, q.unit()) == a)) report("unit", {a});
            if (has(Law::JoinDistributivity) && !(q.tensor(a, q.bottom()) == q.bottom()))
                report("join-distributivity", {a, q.bottom()});
        }
    }
    for (const V& a : values) {
        for (const V& b : values) {
            const V ab = q.tensor(a, b);
            if (has(Law::Commutativity) && !(ab == q.tensor(b, a))) report("commutativity", {a, b});
            for (const V& c : values) {
                if (has(Law::Associativity) && !(q.tensor(ab, c) == q.tensor(a, q.tensor(b, c))))
                    report("associativity", {a, b, c});
                if (has(Law::Monotonicity) && q.leq(a, b) && !q.leq(q.tensor(a, c), q.tensor(b, c)))
                    report("monotonicity", {a, b, c});
                if (has(Law::JoinDistributivity) &&
                    !(q.tensor(a, q.join(b, c)) == q.join(ab, q.tensor(a, c))))
                    report("join-distributivity", {a, b, c});
                if (has(Law::Adjunction) && q.leq(q.tensor(a, c), b) != q.leq(c, q.residuum(a, b)))
                    report("adjunction", {a, b, c});
            }
        }
    }
    return out;
}

std::vector<LawViolation<Elem>> check_quantale_axioms(const FiniteQuantale& q);
std::vector<LawViolation<Rational>> check_tnorm_on_grid(const TNorm& t, unsigned exponent, unsigned laws);

}  // namespace qfl
