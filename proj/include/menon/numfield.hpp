#ifndef MENON_NUMFIELD_HPP
#define MENON_NUMFIELD_HPP

// Exact arithmetic in a monogenic ring of integers O_K = Z[theta], theta a
// root of a monic irreducible integer polynomial f. Elements live in the
// power basis 1, theta, ..., theta^{deg-1} with integer coordinates.
//
// Squarefreeness of f (gcd(f, f') = 1) is verified at construction via the
// resultant-based discriminant. Maximality of Z[theta] is the caller's
// responsibility: the shipped corpus only uses fields where Z[theta] is known
// to be the full ring of integers (Q, quadratic fields with the right
// generator, x^3 - x - 1).

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "menon/bigint.hpp"
#include "menon/errors.hpp"

namespace menon {

namespace detail {

// Write-once caches hanging off a field: splitting of the minimal polynomial
// modulo rational primes, and ideal factorizations keyed by flattened HNF.
// Idempotent fill under a mutex; safe for concurrent readers.
struct FieldCache {
    struct PrimeAbove {
        Vec gpoly;  // monic irreducible factor of min_poly mod p, constant first
        int mult;   // multiplicity in the splitting of <p>
        Mat hnf;    // HNF of the prime ideal <p, g(theta)>
        int fdeg;   // residue degree: N = p^fdeg
    };
    struct FactorTerm {
        Int p;
        int idx;  // index into primes_above[p]
        int exp;
    };
    std::mutex mu;
    std::map<Int, std::vector<PrimeAbove>> primes_above;
    std::map<Vec, std::vector<FactorTerm>> factorizations;  // key: flattened HNF
};

} // namespace detail

class NumberField {
public:
    // min_poly: integer coefficients, constant term first, monic, degree >= 1.
    static std::shared_ptr<const NumberField> make(Vec min_poly,
                                                   std::string name = "");
    ~NumberField();

    int degree() const { return deg_; }
    const Vec& min_poly() const { return f_; }
    const Int& discriminant() const { return disc_; }
    const std::string& name() const { return name_; }

    detail::FieldCache& cache() const { return *cache_; }

    NumberField(const NumberField&) = delete;
    NumberField& operator=(const NumberField&) = delete;

private:
    NumberField(int deg, Vec f, Int disc, std::string name);

    int deg_;
    Vec f_;
    Int disc_;
    std::string name_;
    std::unique_ptr<detail::FieldCache> cache_;
};

// An element of O_K in the power basis. Immutable value type; the field must
// outlive every element referring to it.
class AlgInt {
public:
    AlgInt() : K_(nullptr) {}
    AlgInt(const NumberField* K, Vec coords);

    static AlgInt zero(const NumberField* K);
    static AlgInt one(const NumberField* K);
    static AlgInt from_int(const NumberField* K, const Int& n);
    static AlgInt theta(const NumberField* K);

    const NumberField* field() const { return K_; }
    const Vec& coords() const { return c_; }
    bool is_zero() const;

    AlgInt operator-() const;
    friend AlgInt operator+(const AlgInt& a, const AlgInt& b);
    friend AlgInt operator-(const AlgInt& a, const AlgInt& b);
    friend AlgInt operator*(const AlgInt& a, const AlgInt& b);
    friend bool operator==(const AlgInt& a, const AlgInt& b);
    friend bool operator!=(const AlgInt& a, const AlgInt& b) { return !(a == b); }

    // Absolute value of the determinant of the multiplication-by-this matrix;
    // equals the absolute norm of the principal ideal for nonzero elements.
    Int norm() const;

    std::string str() const;

private:
    const NumberField* K_;
    Vec c_;
};

// Exact determinant of a square integer matrix (fraction-free elimination).
Int det_bareiss(Mat a);

// Resultant of two integer polynomials (coefficients constant-first) via the
// Sylvester matrix. Used for the discriminant; exposed for tests.
Int resultant(const Vec& f, const Vec& g);

} // namespace menon

#endif
