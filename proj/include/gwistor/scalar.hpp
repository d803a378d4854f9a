#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gwistor {

/// Exact coefficient ring: arbitrary-precision rationals, always normalized.
using Rational = boost::multiprecision::cpp_rational;

/// Traits separating the exact ring (rationals) from the float ring.
/// The float ring carries an explicit comparison tolerance; the exact ring
/// compares structurally.
template <class K>
struct ring_traits;

template <>
struct ring_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational from_int(long long n) { return Rational(n); }
  static Rational from_fraction(long long p, long long q) { return Rational(p, q); }
  static bool is_zero(const Rational& x, const Rational& = Rational(0)) { return x == 0; }
  static double to_double(const Rational& x) { return static_cast<double>(x); }
  static double abs_double(const Rational& x) { return std::abs(static_cast<double>(x)); }
};

template <>
struct ring_traits<double> {
  static constexpr bool exact = false;
  static constexpr double default_tol = 1e-9;
  static double zero() { return 0.0; }
  static double from_int(long long n) { return static_cast<double>(n); }
  static double from_fraction(long long p, long long q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static bool is_zero(double x, double tol = default_tol) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
  static double abs_double(double x) { return std::abs(x); }
};

/// "p/q" (or plain "p") rendering used by the JSON report format.
inline std::string scalar_to_string(const Rational& x) {
  Rational v = x;
  auto num = numerator(v);
  auto den = denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string scalar_to_string(double x) { return std::to_string(x); }

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int p(s.substr(0, slash));
    boost::multiprecision::cpp_int q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  }
}

}  // namespace gwistor
