#pragma once

#include <gmpxx.h>

#include <string>

namespace hcwalk {

/// Arbitrary-precision rational, always held in canonical form
/// (gcd-reduced, positive denominator). Hitting times on the larger
/// structures exceed 10^60, so fixed-width arithmetic is never used here.
using Rational = mpq_class;
using BigInt = mpz_class;

/// C(n, k) computed by the multiplicative big-integer routine.
BigInt binomial(unsigned long n, unsigned long k);

/// 2^e as a big integer.
BigInt pow2(unsigned long e);

/// "num/den", or the plain integer string when the denominator is 1.
std::string to_string(const Rational& r);

/// Inverse of to_string; accepts "a/b" or "a". Throws ConfigError on junk.
Rational rational_from_string(const std::string& s);

double to_double(const Rational& r);

}  // namespace hcwalk
