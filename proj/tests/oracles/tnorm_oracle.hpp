#pragma once

// Ordinal-sum t-norms written directly from the block rescaling, without
// the library's block lookup, plus residua found by grid search.

#include "qfl/rational.hpp"

#include <algorithm>
#include <vector>

namespace oracle {

using qfl::Rational;

struct OBlock {
    Rational lo, hi;
    bool lukasiewicz;
};

inline Rational block_tensor(const OBlock& b, const Rational& x, const Rational& y) {
    const Rational w = b.hi - b.lo;
    const Rational u = (x - b.lo) / w;
    const Rational v = (y - b.lo) / w;
    const Rational r = b.lukasiewicz ? std::max(Rational(0), u + v - Rational(1)) : u * v;
    return b.lo + w * r;
}

inline Rational tensor(const std::vector<OBlock>& blocks, const Rational& x, const Rational& y) {
    for (const OBlock& b : blocks)
        if (b.lo <= x && x <= b.hi && b.lo <= y && y <= b.hi) return block_tensor(b, x, y);
    return std::min(x, y);
}

inline std::vector<Rational> grid(long long denominator) {
    std::vector<Rational> out;
    for (long long k = 0; k <= denominator; ++k) out.push_back(qfl::rat(k, denominator));
    return out;
}

// max{z on the grid : x (x) z <= y}
inline Rational grid_residuum(const std::vector<OBlock>& blocks, const Rational& x, const Rational& y,
                              long long denominator) {
    Rational best(0);
    for (const Rational& z : grid(denominator))
        if (tensor(blocks, x, z) <= y) best = std::max(best, z);
    return best;
}

}  // namespace oracle
