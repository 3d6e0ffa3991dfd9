#ifndef MENON_RESIDUE_HPP
#define MENON_RESIDUE_HPP

// The finite quotient O_K/n. Canonical representatives are the coordinate
// vectors in the box prod [0, H[i][i]) cut out by the modulus HNF; classes
// are indexed lexicographically by coordinates. When N(n) is within the
// enumeration bound the constructor also builds the unit list, an
// invariant-factor basis of (O_K/n)^* with ascending orders d1 | d2 | ...,
// and the full discrete-log table. Everything is immutable afterwards and
// safe to share across threads.
//
// Convention: modulus O_K gives the zero ring with a single class, which
// counts as the unique unit so that phi(O_K) = 1 and empty products behave.

#include <vector>

#include "menon/ideal.hpp"

namespace menon {

class ResidueRing {
public:
    static constexpr long kDefaultEnumBound = 5000;

    ResidueRing(const NumberField* K, Ideal modulus,
                long enum_bound = kDefaultEnumBound);

    const NumberField* field() const { return K_; }
    const Ideal& modulus() const { return n_; }
    const Int& size() const { return n_.norm(); }

    // canonical representative; idempotent, and a - reduce(a) lies in n
    Vec reduce(Vec a) const;
    AlgInt reduce(const AlgInt& a) const;

    // unit iff gcd(<a>, n) = O_K (so reduce(0) is a unit only mod O_K)
    bool is_unit(const AlgInt& a) const;
    bool is_unit(const Vec& coords) const;

    // --- enumerated view (requires N(n) <= enum_bound) ---
    bool enumerated() const { return enumerated_; }
    long class_count() const;                      // N(n) as long
    const Vec& rep_of(long idx) const;             // canonical rep by index
    long index_of(const Vec& canonical) const;     // inverse of rep_of
    long index_of_reduced(Vec a) const;            // reduce, then index
    bool is_unit_class(long idx) const;
    const std::vector<long>& unit_classes() const; // ascending class indices
    long unit_count() const;                       // phi(n)

    // class-index arithmetic
    long class_add(long x, long y) const;
    long class_sub(long x, long y) const;
    long class_mul(long x, long y) const;
    long class_neg(long x) const;

    // --- unit-group structure ---
    struct UnitBasis {
        std::vector<long> gens;   // class indices; ascending orders d1 | d2 | ...
        std::vector<long> orders;
    };
    const UnitBasis& unit_basis() const;
    // exponent vector of a unit class against the basis
    const std::vector<long>& dlog(long unit_class) const;
    long exponent() const;  // largest order (1 for the trivial group)
    // position of a unit class in the unit_classes() ordering, -1 otherwise
    long unit_position(long cls) const;

    // brute-force congruence counting: units of (O_K/n)^* congruent to u
    // modulo a (and to v modulo b); a and b must divide n
    Int count_congruent(const Ideal& a, const AlgInt& u) const;
    Int count_congruent2(const Ideal& a, const AlgInt& u, const Ideal& b,
                         const AlgInt& v) const;

    ResidueRing(const ResidueRing&) = delete;
    ResidueRing& operator=(const ResidueRing&) = delete;

private:
    void enumerate(long bound);
    void build_unit_basis();

    const NumberField* K_;
    Ideal n_;
    std::vector<Int> diag_;
    std::vector<Int> stride_;  // mixed-radix strides for index_of

    bool enumerated_ = false;
    std::vector<Vec> reps_;
    std::vector<bool> unit_flag_;
    std::vector<long> unit_classes_;
    std::vector<long> unit_pos_;  // class index -> position among units, -1

    UnitBasis basis_;
    std::vector<std::vector<long>> dlogs_;  // by unit position
    long exponent_ = 1;
};

} // namespace menon

#endif
