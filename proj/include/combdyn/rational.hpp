#pragma once

#include <gmpxx.h>

#include <string>

#include "combdyn/errors.hpp"

namespace combdyn {

// Exact arithmetic everywhere: periodic points are rationals of rapidly
// growing height and traces of matrix powers grow exponentially, so both
// types are arbitrary precision.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

// Canonical "p/q" (or plain "p" for integers), lowest terms, positive
// denominator.  This is the wire format for rationals.
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw domain_error("invalid rational literal: '" + s + "'");
    if (r.get_den() == 0) throw domain_error("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline int sign_of(const Rat& r) { return sgn(r); }
inline int sign_of(const Int& z) { return sgn(z); }

}  // namespace combdyn
