#ifndef MENON_CHARACTER_HPP
#define MENON_CHARACTER_HPP

// Dirichlet characters modulo an ideal, encoded by exponent vectors against
// the invariant-factor basis of (O_K/n)^*. Values are exact roots of unity
// in Z[zeta_m], m the group exponent. The character group is enumerated in
// mixed-radix order over the exponent vector (last coordinate fastest);
// index 0 is the trivial character. Conductors are computed eagerly by
// scanning the divisors of the modulus for induced moduli.

#include "menon/cycint.hpp"
#include "menon/residue.hpp"

namespace menon {

class Character {
public:
    Character(const ResidueRing* ring, std::vector<long> exps, long index,
              Ideal conductor);

    const ResidueRing& ring() const { return *ring_; }
    const std::vector<long>& exps() const { return exps_; }
    long index() const { return index_; }
    long order_m() const { return m_; }
    const Ideal& conductor() const { return conductor_; }

    bool is_trivial() const;
    bool is_primitive() const { return conductor_ == ring_->modulus(); }

    // exponent j with chi(class) = zeta_m^j, or nullopt on non-units
    std::optional<long> zeta_power(long cls) const;
    CycInt eval_class(long cls) const;  // 0 on non-units
    CycInt eval(const AlgInt& a) const;

private:
    const ResidueRing* ring_;
    std::vector<long> exps_;
    long index_;
    long m_;
    Ideal conductor_;
};

// All phi(n) characters mod n in deterministic index order.
std::vector<Character> all_characters(const ResidueRing& ring);

// Is d an induced modulus for chi (chi constant on units that agree mod d)?
bool is_induced_modulus(const ResidueRing& ring,
                        const std::vector<long>& exps, const Ideal& d);

// The smallest induced modulus under divisibility; asserts it divides every
// other induced modulus rather than assuming uniqueness.
Ideal conductor_of(const ResidueRing& ring, const std::vector<long>& exps);

// psi(u) for the primitive character psi inducing chi: evaluates chi at any
// unit lift of u along the conductor; lift-independence holds by
// construction and is exercised by tests.
CycInt primitive_eval(const Character& chi, const AlgInt& u);

// Brute-force sum of psi(a) over units a = r (mod d) for a primitive psi;
// nonzero exactly when d is the full modulus, where it equals psi(r).
CycInt char_sum_over_congruence(const Character& psi, const AlgInt& r,
                                const Ideal& d);

} // namespace menon

#endif
