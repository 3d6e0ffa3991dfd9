#ifndef MENON_IDEAL_HPP
#define MENON_IDEAL_HPP

// Nonzero integral ideals of O_K as full-rank Z-modules in Hermite normal
// form. Convention: column-style HNF, upper triangular, strictly positive
// diagonal, off-diagonal entries reduced modulo the diagonal entry of their
// row (0 <= H[i][j] < H[i][i] for j > i). Two ideals are equal iff their HNF
// matrices are identical.

#include <optional>
#include <utility>
#include <vector>

#include "menon/numfield.hpp"

namespace menon {

class PrimeIdeal;
class Ideal;

namespace detail {
// Wraps a trusted HNF matrix without re-validation; internal construction
// path for ideals produced by the lattice routines themselves.
Ideal adopt_hnf(const NumberField* K, Mat h);
} // namespace detail

class Ideal {
public:
    Ideal() : K_(nullptr) {}

    // Smallest ideal containing every generator: HNF of the span of
    // {g * theta^j : g in gens, 0 <= j < degree}. Throws ZeroIdeal if all
    // generators vanish.
    static Ideal from_generators(const NumberField* K,
                                 const std::vector<AlgInt>& gens);
    static Ideal principal(const AlgInt& a);
    static Ideal from_int(const NumberField* K, const Int& m);
    static Ideal unit_ideal(const NumberField* K);
    // Adopts a matrix already known to be an HNF basis closed under
    // multiplication by theta; validates both properties.
    static Ideal from_hnf(const NumberField* K, Mat h);

    const NumberField* field() const { return K_; }
    const Mat& hnf() const { return h_; }
    const Int& norm() const { return norm_; }
    bool is_unit_ideal() const { return norm_ == 1; }

    // j-th HNF basis vector as an element of O_K.
    AlgInt basis_element(int j) const;

    bool contains(const AlgInt& a) const;
    bool contains(const Vec& coords) const;

    friend bool operator==(const Ideal& a, const Ideal& b) {
        return a.K_ == b.K_ && a.h_ == b.h_;
    }
    friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }
    // Deterministic total order: by norm, then lexicographic HNF.
    friend bool operator<(const Ideal& a, const Ideal& b);

    // Flattened HNF, the canonical map key for this ideal.
    Vec key() const;

    std::string str() const;

private:
    Ideal(const NumberField* K, Mat h);
    friend Ideal detail::adopt_hnf(const NumberField* K, Mat h);

    const NumberField* K_;
    Mat h_;
    Int norm_;
};

class PrimeIdeal {
public:
    PrimeIdeal(Ideal ideal, Int residue_char, int residue_degree)
        : ideal_(std::move(ideal)), p_(std::move(residue_char)),
          fdeg_(residue_degree) {}

    const Ideal& ideal() const { return ideal_; }
    const Int& residue_char() const { return p_; }
    int residue_degree() const { return fdeg_; }

private:
    Ideal ideal_;
    Int p_;
    int fdeg_;
};

using Factorization = std::vector<std::pair<PrimeIdeal, int>>;

// gcd = ideal sum, lcm = module intersection, mul = span of pairwise
// products. gcd(a,b)*lcm(a,b) has the same norm as a*b.
Ideal ideal_gcd(const Ideal& a, const Ideal& b);
Ideal ideal_lcm(const Ideal& a, const Ideal& b);
Ideal ideal_mul(const Ideal& a, const Ideal& b);
Ideal ideal_pow(const Ideal& a, unsigned e);

// gcd of n with the principal ideals of the given elements; with no elements
// this is n itself, matching the gcd(<0>, n) = n convention.
Ideal ideal_gcd_with_elements(const Ideal& n, const std::vector<Vec>& elems);

// a | b iff b is contained in a.
bool ideal_divides(const Ideal& a, const Ideal& b);
// The unique c with a*c = b; throws NotDivisible. Goes through factorization.
Ideal ideal_divexact(const Ideal& b, const Ideal& a);

// Prime factorization via splitting of the minimal polynomial modulo each
// rational prime dividing the norm (valid because O_K = Z[theta]).
// Deterministic ordering by (p, lexicographic factor polynomial); the product
// of the returned prime powers is checked to reproduce the input exactly.
Factorization ideal_factor(const Ideal& a);

// All divisors by exponent-vector enumeration; graded by norm, ties broken
// by lexicographic HNF. Includes the unit ideal and the ideal itself.
std::vector<Ideal> ideal_divisors(const Ideal& a);

// Largest t with p^t | a.
int ideal_valuation(const Ideal& a, const Ideal& p);

// Prime ideals with norm <= bound, ordered by (norm, residue char, HNF).
std::vector<PrimeIdeal> primes_up_to(const NumberField* K, const Int& bound);

// All ideals with 1 < N <= bound via prime-power combination (production
// path), ordered by (norm, HNF).
std::vector<Ideal> enumerate_ideals(const NumberField* K, const Int& bound);

// Reference enumerator: bounded-determinant HNF matrices filtered by
// closure under multiplication by theta. Exponential in the bound; kept for
// cross-checking enumerate_ideals in tests.
std::vector<Ideal> enumerate_ideals_hnf(const NumberField* K, const Int& bound);

namespace detail {
// Column-style HNF of the lattice spanned by the given coordinate columns;
// throws if the span has rank < degree. Exposed for tests.
Mat hnf_from_columns(int dim, const std::vector<Vec>& cols);
// Intersection of two full-rank column lattices given by square HNF bases.
Mat lattice_intersection(const Mat& a, const Mat& b);
// Canonical representative of v modulo the column lattice of h.
Vec hnf_reduce(const Mat& h, Vec v);
} // namespace detail

} // namespace menon

#endif
