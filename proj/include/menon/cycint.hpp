#ifndef MENON_CYCINT_HPP
#define MENON_CYCINT_HPP

// Exact cyclotomic integers: elements of Z[zeta_m] stored as integer
// coefficient vectors against 1, zeta, ..., zeta^{m-1}. Arithmetic is index
// arithmetic mod m; equality is decided by reducing the difference modulo
// the m-th cyclotomic polynomial. Values of different orders are compared
// after lifting to the lcm order. No floating point anywhere.

#include <optional>

#include "menon/bigint.hpp"

namespace menon {

class CycInt {
public:
    CycInt() : m_(1), c_{Int(0)} {}

    static CycInt zero(long m = 1);
    static CycInt integer(Int v);
    static CycInt zeta_pow(long m, long j);  // zeta_m^j
    static CycInt from_coeffs(long m, Vec coeffs);

    long order() const { return m_; }
    const Vec& coeffs() const { return c_; }

    CycInt operator-() const;
    friend CycInt operator+(const CycInt& a, const CycInt& b);
    friend CycInt operator-(const CycInt& a, const CycInt& b);
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    CycInt scaled(const Int& k) const;

    bool is_zero() const;
    friend bool cyc_eq(const CycInt& a, const CycInt& b);

    // the value as a rational integer, if the reduction mod Phi_m is constant
    std::optional<Int> as_integer() const;

    // same value with coefficients reduced mod Phi_m (degree < phi(m),
    // trailing zeros stripped); the canonical form written to reports
    CycInt canonical() const;

    // rewrite at order M (m | M), zeta_m -> zeta_M^{M/m}
    CycInt lifted(long M) const;

    std::string str() const;

private:
    CycInt(long m, Vec c) : m_(m), c_(std::move(c)) {}

    long m_;
    Vec c_;  // length m_, value = sum c_[j] * zeta_m^j
};

// m-th cyclotomic polynomial, integer coefficients constant-first; computed
// by exact division of x^m - 1 by the lower-order cyclotomics and cached.
const Vec& cyclotomic_poly(long m);

} // namespace menon

#endif
