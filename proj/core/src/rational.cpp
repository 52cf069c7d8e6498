#include "qfl/rational.hpp"

#include "qfl/errors.hpp"

#include <charconv>
#include <string>

namespace qfl {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty() || text.size() > 38) throw ParseError("malformed rational \"" + std::string(whole) + "\"");
    Integer value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw ParseError("malformed rational \"" + std::string(whole) + "\"");
        value = value * 10 + (c - '0');
    }
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
        const Integer num = parse_integer(text.substr(0, slash), text);
        const Integer den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
        return Rational(num, den);
    } catch (const std::overflow_error&) {
        throw ParseError("rational out of range \"" + std::string(text) + "\"");
    }
}

std::string to_string(const Rational& r) {
    return r.numerator().str() + "/" + r.denominator().str();
}

std::string pretty(const Rational& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return to_string(r);
}

}  // namespace qfl
