#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace elastica {

// Exact rational scalar for all symbolic coefficients.  Arbitrary precision:
// chained recursion-operator applications grow numerators quickly and must
// never overflow or round.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

// Generalized binomial coefficient C(n, r) for integer n of either sign and
// r >= 0: n (n-1) ... (n-r+1) / r!.  This is the coefficient ring of the
// extended Leibniz rule, where negative operator degrees make the series
// infinite.
inline Rational binomial(long n, unsigned long r) {
  Rational num = 1;
  for (unsigned long i = 0; i < r; ++i) {
    num *= Rational(n - static_cast<long>(i));
    num /= Rational(i + 1);
  }
  return num;
}

// 2^e as an exact rational, e of either sign.
inline Rational pow2(long e) {
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= 2;
  for (long i = 0; i > e; --i) r /= 2;
  return r;
}

}  // namespace elastica
