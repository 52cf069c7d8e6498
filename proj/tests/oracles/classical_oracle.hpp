#pragma once

// The proper filter monad on finite sets, written with std::set: filters are
// found by testing every family of subsets against the filter axioms.

#include <cstddef>
#include <set>
#include <vector>

namespace oracle {

using Subset = std::set<std::size_t>;
using Family = std::set<Subset>;

inline std::vector<Subset> power_set(std::size_t n) {
    std::vector<Subset> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Subset s;
        for (std::size_t x = 0; x < n; ++x)
            if (mask & (std::size_t{1} << x)) s.insert(x);
        out.push_back(s);
    }
    return out;
}

inline bool is_subset(const Subset& a, const Subset& b) {
    for (std::size_t x : a)
        if (!b.count(x)) return false;
    return true;
}

inline Subset intersect(const Subset& a, const Subset& b) {
    Subset out;
    for (std::size_t x : a)
        if (b.count(x)) out.insert(x);
    return out;
}

inline bool is_proper_filter(std::size_t n, const Family& f) {
    const std::vector<Subset> all = power_set(n);
    if (f.empty() || f.count(Subset{})) return false;
    for (const Subset& a : f) {
        for (const Subset& b : all)
            if (is_subset(a, b) && !f.count(b)) return false;
        for (const Subset& b : f)
            if (!f.count(intersect(a, b))) return false;
    }
    return true;
}

inline std::vector<Family> proper_filters(std::size_t n) {
    const std::vector<Subset> all = power_set(n);
    std::vector<Family> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
        Family f;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (mask & (std::size_t{1} << i)) f.insert(all[i]);
        if (is_proper_filter(n, f)) out.push_back(f);
    }
    return out;
}

inline Family unit(std::size_t n, std::size_t x) {
    Family out;
    for (const Subset& s : power_set(n))
        if (s.count(x)) out.insert(s);
    return out;
}

// h#(F) = {B : {x : B in h(x)} in F}
inline Family extend(const std::vector<Family>& h, std::size_t codomain, const Family& F) {
    Family out;
    for (const Subset& b : power_set(codomain)) {
        Subset pre;
        for (std::size_t x = 0; x < h.size(); ++x)
            if (h[x].count(b)) pre.insert(x);
        if (F.count(pre)) out.insert(b);
    }
    return out;
}

}  // namespace oracle
