#ifndef MENON_BIGINT_HPP
#define MENON_BIGINT_HPP

#include <gmpxx.h>
#include <string>
#include <vector>

namespace menon {

// All arithmetic is arbitrary precision end to end; norms and determinants
// overflow 64 bits even at desk scale.
using Int = mpz_class;
using Rat = mpq_class;

using Vec = std::vector<Int>;              // coordinate vector
using Mat = std::vector<std::vector<Int>>; // row-major, M[row][col]

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int igcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int ilcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Floor division (GMP's fdiv), needed for HNF reductions with negative entries.
inline Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline long to_long(const Int& a) { return mpz_get_si(a.get_mpz_t()); }

inline std::string to_string(const Int& a) { return a.get_str(); }

// Exact rational that must come out integral; callers wrap the failure
// in the appropriate typed error.
inline bool rat_is_integer(const Rat& q) {
    return q.get_den() == 1;
}

} // namespace menon

#endif
