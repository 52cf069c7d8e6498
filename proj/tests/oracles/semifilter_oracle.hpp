#pragma once

// Brute-force semifilters over a finite quantale: every map Q^X -> Q is
// listed and tested against (F1)-(F4) one constraint at a time. Conicity,
// coreflections and boundedness are decided by searching the resulting set.

#include "qfl/quantale.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oracle {

using qfl::Elem;
using qfl::FiniteQuantale;

using Fn = std::vector<Elem>;

struct Table {
    std::size_t base = 0;            // |Q|
    std::vector<Fn> domain;          // all of Q^X, in odometer order
    std::vector<Elem> values;        // one per domain entry

    Elem at(const Fn& f) const {
        std::size_t i = 0;
        for (Elem v : f) i = i * base + qfl::idx(v);
        if (i >= values.size() || domain[i] != f) throw std::logic_error("function outside the domain");
        return values[i];
    }
};

inline std::vector<Fn> all_functions(const FiniteQuantale& q, std::size_t n) {
    std::vector<Fn> out;
    Fn f(n, q.bottom());
    const auto els = q.elements();
    while (true) {
        out.push_back(f);
        std::size_t x = n;
        while (x > 0) {
            --x;
            const std::size_t i = qfl::idx(f[x]) + 1;
            if (i < els.size()) {
                f[x] = qfl::elem(i);
                break;
            }
            f[x] = q.bottom();
            if (x == 0) return out;
        }
        if (n == 0) return out;
    }
}

inline Elem sub(const FiniteQuantale& q, const Fn& a, const Fn& b) {
    Elem out = q.top();
    for (std::size_t x = 0; x < a.size(); ++x) out = q.meet(out, q.residuum(a[x], b[x]));
    return out;
}

inline Fn pointwise_meet(const FiniteQuantale& q, const Fn& a, const Fn& b) {
    Fn out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out[x] = q.meet(a[x], b[x]);
    return out;
}

inline bool f1(const FiniteQuantale& q, const Table& t) {
    return q.leq(q.unit(), t.at(Fn(t.domain.front().size(), q.unit())));
}

inline bool f2(const FiniteQuantale& q, const Table& t) {
    for (std::size_t i = 0; i < t.domain.size(); ++i)
        for (std::size_t j = 0; j < t.domain.size(); ++j)
            if (!q.leq(q.meet(t.values[i], t.values[j]), t.at(pointwise_meet(q, t.domain[i], t.domain[j]))))
                return false;
    return true;
}

inline bool f3(const FiniteQuantale& q, const Table& t) {
    for (std::size_t i = 0; i < t.domain.size(); ++i)
        for (std::size_t j = 0; j < t.domain.size(); ++j)
            if (!q.leq(sub(q, t.domain[i], t.domain[j]), q.residuum(t.values[i], t.values[j]))) return false;
    return true;
}

inline bool f4(const FiniteQuantale& q, const Table& t) {
    const std::size_t n = t.domain.front().size();
    for (Elem p : q.elements())
        if (!q.leq(t.at(Fn(n, p)), p)) return false;
    return true;
}

// Every map Q^X -> Q satisfying (F1)-(F3), and (F4) when asked.
inline std::vector<Table> brute_semifilters(const FiniteQuantale& q, std::size_t n, bool filters_only = false) {
    const std::vector<Fn> dom = all_functions(q, n);
    const std::vector<Fn> codes = all_functions(q, dom.size());
    std::vector<Table> out;
    for (const Fn& values : codes) {
        Table t{q.size(), dom, values};
        if (!f1(q, t) || !f2(q, t) || !f3(q, t)) continue;
        if (filters_only && !f4(q, t)) continue;
        out.push_back(std::move(t));
    }
    return out;
}

inline bool pointwise_leq(const FiniteQuantale& q, const Table& a, const Table& b) {
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (!q.leq(a.values[i], b.values[i])) return false;
    return true;
}

// T(lambda) = join over {mu : T(mu) >= k} of sub(mu, lambda), for every lambda.
inline bool conical(const FiniteQuantale& q, const Table& t) {
    for (std::size_t i = 0; i < t.domain.size(); ++i) {
        Elem v = q.bottom();
        for (std::size_t j = 0; j < t.domain.size(); ++j)
            if (q.leq(q.unit(), t.values[j])) v = q.join(v, sub(q, t.domain[j], t.domain[i]));
        if (v != t.values[i]) return false;
    }
    return true;
}

// No function with bottom minimum reaches k.
inline bool bounded(const FiniteQuantale& q, const Table& t) {
    for (std::size_t i = 0; i < t.domain.size(); ++i) {
        Elem m = q.top();
        for (Elem v : t.domain[i]) m = q.meet(m, v);
        if (m == q.bottom() && q.leq(q.unit(), t.values[i])) return false;
    }
    return true;
}

// The greatest element of {C in candidates : C <= t}, if that set has one.
inline std::optional<Table> largest_below(const FiniteQuantale& q, const Table& t,
                                          const std::vector<Table>& candidates) {
    std::vector<const Table*> below;
    for (const Table& c : candidates)
        if (pointwise_leq(q, c, t)) below.push_back(&c);
    for (const Table* c : below) {
        bool top = true;
        for (const Table* d : below) top = top && pointwise_leq(q, *d, *c);
        if (top) return *c;
    }
    return std::nullopt;
}

}  // namespace oracle
