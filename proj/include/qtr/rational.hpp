/*
 * rational.hpp
 * ------------
 * Exact rational scalar used throughout the library.
 *
 * `Rational` is an arbitrary-precision rational number kept in lowest terms
 * with a positive denominator (both guaranteed by the backing type).  The
 * helpers here fix one canonical text form, "p" or "p/q", that every
 * serializer in the project uses.
 */
#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace qtr {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Canonical rendering: "p" when the denominator is 1, otherwise "p/q" with
// q > 0 and gcd(|p|, q) = 1.
std::string to_string(const Rational& r);

// Inverse of to_string.  Accepts optional surrounding whitespace and a leading
// sign; throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

}  // namespace qtr
