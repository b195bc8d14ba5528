#ifndef DRFLOW_RATIONAL_HPP
#define DRFLOW_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace drflow {

/* Exact rational arithmetic.  All polynomial coefficients are mpq values;
 * no floating point appears anywhere in the library. */
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned exp) {
    Rational r(1);
    Rational b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

inline Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

/* (2d+1)!! = 1*3*5*...*(2d+1). */
inline Rational double_factorial_odd(unsigned d) {
    mpz_class f;
    mpz_2fac_ui(f.get_mpz_t(), 2 * d + 1);
    return Rational(f);
}

/* Generalized binomial coefficient C(k, j) for integer k (possibly negative)
 * and j >= 0: k(k-1)...(k-j+1)/j!. */
inline Rational gen_binomial(long k, unsigned j) {
    Rational r(1);
    for (unsigned t = 0; t < j; ++t)
        r *= Rational(k - long(t));
    return r / factorial(j);
}

inline std::string rational_str(const Rational& r) {
    return r.get_str();
}

} // namespace drflow

#endif
