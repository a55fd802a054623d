#ifndef CUSPFOL_RATIONAL_HPP
#define CUSPFOL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cuspfol {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

// "n" when integral, "n/d" otherwise.
inline std::string rational_to_string(const Rational& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace cuspfol

#endif
