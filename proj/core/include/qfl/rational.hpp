#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <concepts>

#include <string>
#include <string_view>

namespace qfl {

// Fixed 128-bit numerators/denominators with overflow checking: every
// operation is exact or throws, never silently wraps.
using Integer = boost::multiprecision::checked_int128_t;
using Rational = boost::rational<Integer>;

inline Rational rat(long long num, long long den = 1) { return Rational(Integer(num), Integer(den)); }

// Accepts "n/d" or "n"; throws ParseError on anything else, including d = 0.
Rational parse_rational(std::string_view text);

// Canonical "n/d" form, d > 0, always with a denominator.
std::string to_string(const Rational& r);

// Compact human form: "n" for integers, "n/d" otherwise.
std::string pretty(const Rational& r);

}  // namespace qfl

// Boost.Rational's mixed rational/int comparisons recurse forever under
// C++20 rewritten-operator lookup. Deleting them turns every such use into a
// compile error; compare against Rational values instead.
namespace boost {

#define QFL_MIXED_CMP(OP)                                     \
    template <class I>                                        \
        requires std::integral<I>                             \
    bool operator OP(const qfl::Rational&, const I&) = delete; \
    template <class I>                                        \
        requires std::integral<I>                             \
    bool operator OP(const I&, const qfl::Rational&) = delete;
QFL_MIXED_CMP(==)
QFL_MIXED_CMP(!=)
QFL_MIXED_CMP(<)
QFL_MIXED_CMP(>)
QFL_MIXED_CMP(<=)
QFL_MIXED_CMP(>=)
#undef QFL_MIXED_CMP

}  // namespace boost
