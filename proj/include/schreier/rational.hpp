#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace schreier {

// All coefficient and distance arithmetic is exact: arbitrary-precision
// integers and reduced fractions, no floating point anywhere.
using big_int = boost::multiprecision::cpp_int;
using rat = boost::multiprecision::cpp_rational;

inline rat make_rat(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return rat(big_int(num), big_int(den));
}

// Canonical "p/q" rendering, denominator always spelled out so that report
// files stay byte-stable regardless of reducibility.
inline std::string rat_str(const rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p" or "p/q" with optional leading minus on p.
inline rat parse_rat(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return rat(big_int(text));
        big_int num(text.substr(0, slash));
        big_int den(text.substr(slash + 1));
        if (den <= 0) throw std::domain_error("");
        return rat(num, den);
    } catch (const std::exception&) {
        throw std::domain_error("invalid rational literal: '" + text + "'");
    }
}

inline rat rat_abs(const rat& r) { return r < 0 ? rat(-r) : r; }

}  // namespace schreier
