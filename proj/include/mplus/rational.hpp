#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace mplus {

// Exact rational arithmetic. All algebraic data in this library (scalar
// coefficients, Novikov exponents, truncation bounds) is kept exact; no
// floating point enters any verification path.
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_parse(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(boost::multiprecision::cpp_int(s));
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline bool rat_is_integer(const Rat& r) { return denominator(r) == 1; }

// Parity of an integer-valued expression, tolerant of negatives.
inline int parity(long long n) { return static_cast<int>(((n % 2) + 2) % 2); }

inline int sign_pow(long long exponent) { return parity(exponent) == 0 ? 1 : -1; }

} // namespace mplus
