#include "hcwalk/rational.hpp"

#include <stdexcept>

#include "hcwalk/errors.hpp"

namespace hcwalk {

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt pow2(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw ConfigError("not a rational: '" + s + "'");
  if (r.get_den() == 0) throw ConfigError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return mpq_get_d(r.get_mpq_t()); }

}  // namespace hcwalk
