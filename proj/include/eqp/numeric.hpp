#ifndef EQP_NUMERIC_HPP
#define EQP_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace eqp {

/// Arbitrary-precision integer used for all exact integral linear algebra.
using Int = boost::multiprecision::cpp_int;

/// Exact rational type used for edge lengths, barycentric coordinates and
/// homology computations over Q.
using Rational = boost::multiprecision::cpp_rational;

/// Parse "p/q" or "p" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid rational literal: " + text);
    }
}

inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace eqp

#endif
