#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace flipflow {

// Exact arithmetic everywhere in the LP core. cpp_rational keeps canonical
// form (gcd 1, positive denominator) after every operation.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline BigInt floor_rat(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline BigInt ceil_rat(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) > 0 && q * denominator(r) != numerator(r)) ++q;
  return q;
}

// Prints integers plainly and proper fractions as "p/q".
inline std::string rat_to_string(const Rat& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Floor division for plain integers (C++ "/" truncates toward zero).
inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long ceil_div(long long a, long long b) {
  return -floor_div(-a, b);
}

}  // namespace flipflow
