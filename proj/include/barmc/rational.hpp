#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace barmc {

/* Exact rationals, always canonical (lowest terms, positive denominator).
 * No floating point anywhere in the project. */
using Rat = mpq_class;
using Int = mpz_class;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/* Canonicalizing fraction constructor; mpq_class(p, q) alone does not reduce. */
inline Rat frac(long p, long q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

/* "p/q", or "p" when q = 1. */
std::string rat_str(const Rat& r);

/* Parse "p/q" or "p"; rejects zero denominators and junk. */
Rat rat_parse(const std::string& s);

using Vec = std::vector<Rat>;

Vec vec_zero(int n);
bool vec_is_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& v);
std::string vec_str(const Vec& v);

}  // namespace barmc
