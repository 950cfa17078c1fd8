#ifndef RECFG_RATIONAL_HPP
#define RECFG_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <string>

namespace recfg {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always in lowest terms with positive denominator.
// All values and acceptance probabilities in this codebase are Rationals;
// no floating point appears on any semantic path.
using Rational = boost::rational<BigInt>;

inline Rational make_rational(long long num, long long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

// Accepts "a" or "a/b" with decimal integers.
Rational parse_rational(const std::string& text);

} // namespace recfg

#endif
