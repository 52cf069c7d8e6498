#include "qfl/quantale.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace qfl {

std::string_view to_string(BlockKind kind) {
    return kind == BlockKind::Lukasiewicz ? "LUKASIEWICZ" : "PRODUCT";
}

BlockKind parse_block_kind(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    if (upper == "LUKASIEWICZ" || upper == "L") return BlockKind::Lukasiewicz;
    if (upper == "PRODUCT" || upper == "P") return BlockKind::Product;
    throw ParseError("unknown block kind \"" + std::string(text) + "\"");
}

std::string describe(const Block& block) {
    return "(" + pretty(block.lo) + ", " + pretty(block.hi) + ", " + std::string(to_string(block.kind)) + ")";
}

std::string describe(const TNorm& t) {
    if (t.blocks().empty()) return "[] (Goedel)";
    std::string out = "[";
    for (std::size_t i = 0; i < t.blocks().size(); ++i) {
        if (i) out += ", ";
        out += describe(t.blocks()[i]);
    }
    return out + "]";
}

// ---------------------------------------------------------------------------

TNorm TNorm::build(std::vector<Block> blocks) {
    for (const Block& b : blocks) {
        if (b.lo < Rational(0) || b.hi > Rational(1)) throw ConstructionError("block endpoints outside [0,1]: " + describe(b));
        if (!(b.lo < b.hi)) throw ConstructionError("block must satisfy lo < hi: " + describe(b));
    }
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        if (blocks[i - 1].hi > blocks[i].lo)
            throw ConstructionError("overlapping blocks " + describe(blocks[i - 1]) + " and " + describe(blocks[i]));
    }
    TNorm t(std::move(blocks));
    for (const Block& b : t.blocks_) {
        if (!t.is_idempotent(b.lo) || !t.is_idempotent(b.hi))
            throw ConstructionError("block endpoint not idempotent: " + describe(b));
    }
    return t;
}

TNorm TNorm::product() { return build({{Rational(0), Rational(1), BlockKind::Product}}); }
TNorm TNorm::lukasiewicz() { return build({{Rational(0), Rational(1), BlockKind::Lukasiewicz}}); }

void TNorm::require(const Rational& x) const {
    if (!contains(x)) throw UsageError("value " + pretty(x) + " outside [0,1]");
}

const Block* TNorm::common_block(const Rational& x, const Rational& y) const {
    for (const Block& b : blocks_) {
        if (b.contains(x) && b.contains(y)) return &b;
    }
    return nullptr;
}

const Block* TNorm::block_of(const Rational& x) const {
    for (const Block& b : blocks_) {
        if (b.interior(x)) return &b;
    }
    return nullptr;
}

bool TNorm::is_lukasiewicz_isomorphic() const {
    return blocks_.size() == 1 && blocks_[0].lo == Rational(0) && blocks_[0].hi == Rational(1) &&
           blocks_[0].kind == BlockKind::Lukasiewicz;
}

Rational TNorm::tensor(const Rational& x, const Rational& y) const {
    require(x);
    require(y);
    const Block* b = common_block(x, y);
    if (b == nullptr) return std::min(x, y);
    const Rational width = b->hi - b->lo;
    const Rational xs = (x - b->lo) / width;
    const Rational ys = (y - b->lo) / width;
    Rational base;
    if (b->kind == BlockKind::Lukasiewicz) {
        base = std::max(Rational(0), xs + ys - 1);
    } else {
        base = xs * ys;
    }
    return b->lo + width * base;
}

Rational TNorm::residuum(const Rational& x, const Rational& y) const {
    require(x);
    require(y);
    if (x <= y) return Rational(1);
    const Block* b = common_block(x, y);
    if (b == nullptr) return y;
    const Rational width = b->hi - b->lo;
    const Rational xs = (x - b->lo) / width;
    const Rational ys = (y - b->lo) / width;
    const Rational base = b->kind == BlockKind::Lukasiewicz ? 1 - xs + ys : ys / xs;
    return b->lo + width * base;
}

Rational TNorm::join(const Rational& x, const Rational& y) const { return std::max(x, y); }
Rational TNorm::meet(const Rational& x, const Rational& y) const { return std::min(x, y); }
bool TNorm::leq(const Rational& x, const Rational& y) const { return x <= y; }

bool TNorm::is_idempotent(const Rational& x) const { return tensor(x, x) == x; }

bool TNorm::way_below(const Rational& x, const Rational& y) const {
    require(x);
    require(y);
    return x == Rational(0) || x < y;
}

ConditionS check_condition_s(const TNorm& t) {
    for (const Block& b : t.blocks()) {
        if (b.lo > Rational(0) && b.kind != BlockKind::Product) return {false, b};
    }
    return {true, std::nullopt};
}

namespace {

bool is_dyadic_step(const Rational& step) {
    if (step.numerator() != 1 || step.denominator() < 1) return false;
    const Integer d = step.denominator();
    return (d & (d - 1)) == 0;
}

}  // namespace

std::vector<Rational> dyadic_grid(unsigned exponent) {
    if (exponent > 30) throw UsageError("grid exponent too large");
    const long long n = 1LL << exponent;
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (long long k = 0; k <= n; ++k) out.push_back(rat(k, n));
    return out;
}

Rational residuum_grid_oracle(const TNorm& t, const Rational& x, const Rational& y, const Rational& step) {
    if (!is_dyadic_step(step)) throw UsageError("grid step must be 1/2^n, got " + pretty(step));
    const Integer n = step.denominator();
    for (Integer k = n; k >= 0; --k) {
        const Rational z(k, n);
        if (t.tensor(x, z) <= y) return z;
    }
    return Rational(0);
}

ContinuityProbe probe_residuum_continuity(const TNorm& t, unsigned exponent) {
    const std::vector<Rational> grid = dyadic_grid(exponent);
    const std::size_t m = grid.size();
    const Rational step = grid[1];
    std::vector<Rational> r(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r[i * m + j] = t.residuum(grid[i], grid[j]);

    auto lipschitz = [&](const Rational& x) {
        const Block* b = t.block_of(x);
        if (b != nullptr && b->kind == BlockKind::Product) return std::max(Rational(1), (b->hi - b->lo) / (x - b->lo));
        return Rational(1);
    };

    ContinuityProbe probe;
    auto visit = [&](std::size_t i, std::size_t j, std::size_t i2, std::size_t j2) {
        if (i == j || i2 == j2) return false;
        ++probe.pairs_checked;
        const Rational& a = r[i * m + j];
        const Rational& b = r[i2 * m + j2];
        const Rational jump = a > b ? a - b : b - a;
        const Rational allowed = step * std::max(lipschitz(grid[i]), lipschitz(grid[i2]));
        if (jump <= allowed) return false;
        probe = {true, grid[i], grid[j], grid[i2], grid[j2], jump, allowed, probe.pairs_checked};
        return true;
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i + 1 < m && visit(i, j, i + 1, j)) return probe;
            if (j + 1 < m && visit(i, j, i, j + 1)) return probe;
        }
    }
    return probe;
}

Rational sup_residuum_to_zero(const TNorm& t) {
    for (const Block& b : t.blocks()) {
        if (b.lo == Rational(0) && b.kind == BlockKind::Lukasiewicz) return b.hi;
    }
    return Rational(0);
}

Rational grid_sup_residuum_to_zero(const TNorm& t, unsigned exponent) {
    const std::vector<Rational> grid = dyadic_grid(exponent);
    Rational best(0);
    for (std::size_t k = 1; k < grid.size(); ++k) best = std::max(best, t.residuum(grid[k], Rational(0)));
    return best;
}

std::vector<LawViolation<Rational>> check_tnorm_on_grid(const TNorm& t, unsigned exponent, unsigned laws) {
    const std::vector<Rational> grid = dyadic_grid(exponent);
    return check_laws(t, std::span<const Rational>(grid), laws);
}

// ---------------------------------------------------------------------------

namespace {

using Table = std::vector<std::vector<std::size_t>>;

void check_table(const Table& table, std::size_t n, const std::string& what) {
    if (table.size() != n)
        throw StructuralError(what + " table has " + std::to_string(table.size()) + " rows, expected " +
                              std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n)
            throw StructuralError(what + " table row " + std::to_string(i) + " has " +
                                  std::to_string(table[i].size()) + " entries, expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j] >= n)
                throw StructuralError(what + " table entry (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") outside the carrier");
        }
    }
}

void check_labels(const std::vector<Rational>& labels) {
    if (labels.size() < 2) throw StructuralError("carrier must contain 0 and 1");
    if (labels.size() > FiniteQuantale::max_size) throw StructuralError("carrier too large");
    if (labels.front() != Rational(0) || labels.back() != Rational(1))
        throw StructuralError("carrier must start with bottom 0 and end with top 1");
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw StructuralError("duplicate carrier label " + pretty(labels[i]));
}

}  // namespace

FiniteQuantale FiniteQuantale::chain(std::string name, std::vector<Rational> labels, const Table& tensor,
                                     std::size_t unit) {
    check_labels(labels);
    for (std::size_t i = 1; i < labels.size(); ++i)
        if (!(labels[i - 1] < labels[i])) throw StructuralError("chain carrier must be strictly ascending");
    const std::size_t n = labels.size();
    check_table(tensor, n, "tensor");
    if (unit >= n) throw StructuralError("unit outside the carrier");

    FiniteQuantale q;
    q.name_ = std::move(name);
    q.n_ = n;
    q.chain_ = true;
    q.labels_ = std::move(labels);
    q.unit_ = elem(unit);
    q.tensor_.resize(n * n);
    q.join_.resize(n * n);
    q.meet_.resize(n * n);
    q.leq_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            q.tensor_[i * n + j] = elem(tensor[i][j]);
            q.join_[i * n + j] = elem(std::max(i, j));
            q.meet_[i * n + j] = elem(std::min(i, j));
            q.leq_[i * n + j] = i <= j;
        }
    }
    q.finish();
    return q;
}

FiniteQuantale FiniteQuantale::lattice(std::string name, std::vector<Rational> labels, const Table& join,
                                       const Table& meet, const Table& tensor, std::size_t unit) {
    check_labels(labels);
    const std::size_t n = labels.size();
    check_table(join, n, "join");
    check_table(meet, n, "meet");
    check_table(tensor, n, "tensor");
    if (unit >= n) throw StructuralError("unit outside the carrier");

    auto le = [&](std::size_t a, std::size_t b) { return meet[a][b] == a; };
    for (std::size_t a = 0; a < n; ++a) {
        if (!le(a, a)) throw StructuralError("meet table is not idempotent");
        if (!le(0, a) || !le(a, n - 1)) throw StructuralError("first label must be bottom and last label top");
        for (std::size_t b = 0; b < n; ++b) {
            if ((join[a][b] == b) != le(a, b)) throw StructuralError("join and meet tables disagree on the order");
            if (join[a][b] != join[b][a] || meet[a][b] != meet[b][a])
                throw StructuralError("join/meet tables not symmetric");
            if (a != b && le(a, b) && le(b, a)) throw StructuralError("order is not antisymmetric");
            if (le(a, b) && b < a) throw StructuralError("carrier must be listed in a linear extension of its order");
            for (std::size_t c = 0; c < n; ++c) {
                if (le(a, b) && le(b, c) && !le(a, c)) throw StructuralError("order is not transitive");
                const bool upper = le(a, c) && le(b, c);
                const bool lower = le(c, a) && le(c, b);
                if (upper != le(join[a][b], c)) throw StructuralError("join table is not the least upper bound");
                if (lower != le(c, meet[a][b])) throw StructuralError("meet table is not the greatest lower bound");
            }
        }
    }

    FiniteQuantale q;
    q.name_ = std::move(name);
    q.n_ = n;
    q.labels_ = std::move(labels);
    q.unit_ = elem(unit);
    q.tensor_.resize(n * n);
    q.join_.resize(n * n);
    q.meet_.resize(n * n);
    q.leq_.resize(n * n);
    q.chain_ = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            q.tensor_[i * n + j] = elem(tensor[i][j]);
            q.join_[i * n + j] = elem(join[i][j]);
            q.meet_[i * n + j] = elem(meet[i][j]);
            q.leq_[i * n + j] = le(i, j);
            if (!le(i, j) && !le(j, i)) q.chain_ = false;
        }
    }
    q.finish();
    return q;
}

FiniteQuantale FiniteQuantale::from_tnorm(std::string name, const TNorm& t, std::vector<Rational> labels) {
    std::sort(labels.begin(), labels.end());
    check_labels(labels);
    const std::size_t n = labels.size();
    Table tensor(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational v = t.tensor(labels[i], labels[j]);
            const auto it = std::find(labels.begin(), labels.end(), v);
            if (it == labels.end())
                throw ConstructionError("carrier not closed under the tensor: " + pretty(labels[i]) + " * " +
                                        pretty(labels[j]) + " = " + pretty(v));
            tensor[i][j] = static_cast<std::size_t>(it - labels.begin());
        }
    }
    return chain(std::move(name), std::move(labels), tensor, n - 1);
}

void FiniteQuantale::finish() {
    residuum_.assign(n_ * n_, bottom());
    for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = 0; b < n_; ++b) {
            Elem r = bottom();
            for (std::size_t z = 0; z < n_; ++z) {
                if (leq(tensor(elem(a), elem(z)), elem(b))) r = join(r, elem(z));
            }
            residuum_[a * n_ + b] = r;
        }
    }
}

FiniteQuantale FiniteQuantale::boolean() {
    return chain("boolean", {rat(0), rat(1)}, {{0, 0}, {0, 1}}, 1);
}

FiniteQuantale FiniteQuantale::godel3() {
    return chain("godel3", {rat(0), rat(1, 2), rat(1)}, {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}}, 2);
}

FiniteQuantale FiniteQuantale::mv3() {
    return chain("mv3", {rat(0), rat(1, 2), rat(1)}, {{0, 0, 0}, {0, 0, 1}, {0, 1, 2}}, 2);
}

FiniteQuantale FiniteQuantale::chain5() {
    const TNorm t = TNorm::build({{rat(1, 4), rat(1, 2), BlockKind::Lukasiewicz}});
    return from_tnorm("chain5", t, {rat(0), rat(1, 4), rat(3, 8), rat(1, 2), rat(1)});
}

std::vector<FiniteQuantale> FiniteQuantale::shipped_chains() { return {boolean(), godel3(), mv3(), chain5()}; }

std::vector<Elem> FiniteQuantale::elements() const {
    std::vector<Elem> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = elem(i);
    return out;
}

const Rational& FiniteQuantale::label(Elem a) const { return labels_[check(a)]; }

std::optional<Elem> FiniteQuantale::find(const Rational& value) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (labels_[i] == value) return elem(i);
    return std::nullopt;
}

Elem FiniteQuantale::at(const Rational& value) const {
    if (auto e = find(value)) return *e;
    throw UsageError("value " + pretty(value) + " not in the carrier of " + name_);
}

Elem FiniteQuantale::least_positive() const {
    if (!chain_) throw UsageError("least positive element requested on a non-chain carrier");
    return elem(1);
}

template <class Visit>
void FiniteQuantale::for_each_directed_subset(Visit&& visit) const {
    if (n_ > 16) throw ResourceError("directed-subset enumeration limited to 16 elements");
    const std::uint32_t limit = 1u << n_;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        bool directed = true;
        Elem sup = bottom();
        for (std::size_t a = 0; a < n_ && directed; ++a) {
            if (!(mask >> a & 1u)) continue;
            sup = join(sup, elem(a));
            for (std::size_t b = a + 1; b < n_ && directed; ++b) {
                if (!(mask >> b & 1u)) continue;
                bool bounded = false;
                for (std::size_t c = 0; c < n_ && !bounded; ++c)
                    bounded = (mask >> c & 1u) && leq(elem(a), elem(c)) && leq(elem(b), elem(c));
                directed = bounded;
            }
        }
        if (directed) visit(mask, sup);
    }
}

bool FiniteQuantale::way_below(Elem a, Elem b) const {
    check(a);
    check(b);
    bool result = true;
    for_each_directed_subset([&](std::uint32_t mask, Elem sup) {
        if (!result || !leq(b, sup)) return;
        bool hit = false;
        for (std::size_t d = 0; d < n_ && !hit; ++d) hit = (mask >> d & 1u) && leq(a, elem(d));
        if (!hit) result = false;
    });
    return result;
}

bool FiniteQuantale::residuum_preserves_directed_joins() const {
    bool result = true;
    for_each_directed_subset([&](std::uint32_t mask, Elem sup) {
        for (std::size_t p = 0; p < n_ && result; ++p) {
            Elem pointwise = bottom();
            for (std::size_t d = 0; d < n_; ++d)
                if (mask >> d & 1u) pointwise = join(pointwise, residuum(elem(p), elem(d)));
            if (pointwise != residuum(elem(p), sup)) result = false;
        }
    });
    return result;
}

bool FiniteQuantale::operator==(const FiniteQuantale& other) const {
    return labels_ == other.labels_ && tensor_ == other.tensor_ && join_ == other.join_ && meet_ == other.meet_ &&
           unit_ == other.unit_;
}

std::vector<LawViolation<Elem>> check_quantale_axioms(const FiniteQuantale& q) {
    const std::vector<Elem> all = q.elements();
    return check_laws(q, std::span<const Elem>(all), quantale_laws, static_cast<std::size_t>(-1));
}

}  // namespace qfl
