#ifndef MENON_ARITH_HPP
#define MENON_ARITH_HPP

// Arithmetical functions on integral ideals: Moebius, Euler phi, divisor
// power sums, the k-dimensional unit-tuple count phi_k (closed product
// formula and counting evaluators), its two-argument refinement, Dirichlet
// convolution over divisor tables, and the conductor-part decomposition.
//
// Every formula with fractional intermediate terms is evaluated in exact
// rational arithmetic and must come out integral; a non-integer final value
// is a hard NonIntegerResult error.

#include <string>

#include "menon/residue.hpp"

namespace menon {

Int moebius(const Ideal& a);
Int euler_phi(const Ideal& a);
Int sigma_s(const Ideal& a, unsigned s);

// 1 - 1/(q-1) + 1/(q-1)^2 - ... , `terms` summands; the per-prime factor of
// the phi_k product formula and of the closed tuple-count forms
Rat alternating_unit_sum(const Int& q, unsigned terms);

// phi(n)^k prod_{p | n} (1 - 1/(N(p)-1) + ... + (-1)^{k-1}/(N(p)-1)^{k-1})
Int phi_k_formula(const Ideal& n, unsigned k);

// number of unit k-tuples of O_K/n whose sum is a unit mod m (m | n);
// direct loops for k <= 2, additive-convolution counting for k >= 3
Int phi_k_two_arg(const ResidueRing& ring, const Ideal& m, unsigned k);
Int phi_k_bruteforce(const ResidueRing& ring, unsigned k);

// C_j[t] = number of unit j-tuples summing to class t (C_0 = indicator of 0);
// the shared counting kernel behind phi_k and the identity evaluators
std::vector<Int> unit_sum_counts(const ResidueRing& ring, unsigned j);

// phi(n) * sum_{d | m} mu(d)/phi(d) * phi_{k-1}(n, d); equals phi_k(n, m)
Int phi_k_recursion_rhs(const ResidueRing& ring, const Ideal& m, unsigned k);

// the part of n supported on the primes of d: n0 = prod_{p | d} p^{v_p(n)};
// rad(n0) = rad(d) and gcd(n0, n/n0) = O_K, both checked
Ideal n_zero_of(const Ideal& n, const Ideal& d);

// A total integer-valued function on the divisors of a working modulus,
// realized as an explicit table in canonical divisor order.
class DivisorTable {
public:
    DivisorTable(Ideal modulus, std::vector<Int> values, std::string name);

    // named built-ins: "norm", "norm^s", "one", "moebius", "phi", "sigma_s"
    static DivisorTable tabulate(const Ideal& n, const std::string& name);
    static DivisorTable from_entries(
        const Ideal& n, const std::vector<std::pair<Ideal, Int>>& entries,
        std::string name);

    const Ideal& modulus() const { return n_; }
    const std::vector<Ideal>& divisors() const { return divisors_; }
    const std::string& name() const { return name_; }
    size_t size() const { return divisors_.size(); }

    size_t index_of(const Ideal& d) const;  // throws NotADivisor
    const Int& value_by_index(size_t i) const { return values_[i]; }
    const Int& value_at(const Ideal& d) const { return values_[index_of(d)]; }

private:
    Ideal n_;
    std::vector<Ideal> divisors_;
    std::vector<Int> values_;
    std::map<Vec, size_t> index_;
    std::string name_;
};

// (f * g)(a) = sum_{d | a} f(d) g(a/d) on every divisor of the common modulus
DivisorTable dirichlet_convolve(const DivisorTable& f, const DivisorTable& g);

} // namespace menon

#endif
