#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace knotinv {

/// Exact rational scalar. GMP keeps the invariants we rely on everywhere:
/// numerator and denominator coprime, denominator positive.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }
inline int sgn(const Integer& z) { return mpz_sgn(z.get_mpz_t()); }

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational r = 1;
    Rational b = base;
    unsigned long k = e;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

/// True and sets root when q is the square of a rational.
inline bool rat_sqrt(const Rational& q, Rational& root) {
    if (sgn(q) < 0) return false;
    if (sgn(q) == 0) {
        root = 0;
        return true;
    }
    Integer n = q.get_num(), d = q.get_den(), rn, rd;
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = Rational(rn, rd);
    return true;
}

inline std::string rat_str(const Rational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p", "-p", or "p/q". Throws ParseError on malformed input.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    if (sgn(Rational(q.get_den())) == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace knotinv
