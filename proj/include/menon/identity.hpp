#ifndef MENON_IDENTITY_HPP
#define MENON_IDENTITY_HPP

// Both sides of the character-twisted gcd-sum identity over O_K/n:
//
//   sum over unit k-tuples (a_1..a_k) with unit sum and residue s-tuples
//   (b_1..b_s) of  f(gcd(a_1+...+a_k - r, b_1, ..., b_s, n)) * chi(a_1)
//
//   = mu(d)^{k-1} psi(r) phi(n0^k / d^{k-1}) phi_k(n/n0)
//       * sum_{d | e | n} (mu*f)(e)/phi(e) * (N(n)/N(e))^s
//
// with d the conductor of chi, psi the primitive character inducing chi and
// n0 the part of n supported on the primes of d. Three left-hand evaluators
// cross-check each other (full enumeration, collapsed b-sum, and a dynamic
// program over residue classes); the right-hand side is the exact closed
// form. The collapsed-b factor (N(n)/N(e))^s counts the s-tuples divisible
// by e. All cyclotomic and rational arithmetic is exact.
//
// The proof-layer tuple counts N_k (unit k-tuples with a_1 = u mod d,
// sum = r mod e, sum = 0 mod g), their recursion, and the character-weighted
// closed form live here too.

#include <chrono>

#include "menon/arith.hpp"
#include "menon/character.hpp"

namespace menon {

struct IdentityParams {
    const ResidueRing* ring = nullptr;
    unsigned k = 1;
    unsigned s = 0;
    AlgInt r;
    const Character* chi = nullptr;
    const DivisorTable* f = nullptr;
};

// gcd(r, n) = O_K, matching moduli/rings, k >= 1
void validate(const IdentityParams& p);

struct EvalBudgets {
    Int naive = Int(10000000);   // bounds N^{k+s} (naive) and N^k (convolution)
    Int dp = Int(100000000);     // bounds N^2 * k
};

enum class Evaluator { naive, convolution, dp };
const char* evaluator_name(Evaluator e);

// Per-modulus workspace: divisor tables, the class -> gcd-divisor map, the
// additive convolution counts and collapsed b-sum tables, reused across
// evaluations at the same modulus. Single-worker object, not thread-safe.
class IdentityContext {
public:
    explicit IdentityContext(const ResidueRing& ring);

    const ResidueRing& ring() const { return ring_; }
    const std::vector<Ideal>& divisors() const { return divisors_; }
    size_t divisor_index(const Ideal& d) const;
    // index of gcd(<x>, n) among the divisors, for every class x
    size_t gcd_divisor_of_class(long cls);
    // gcd table on divisor indices
    size_t divisor_gcd(size_t i, size_t j);
    const std::vector<Int>& tuple_counts(unsigned j);  // C_j
    const DivisorTable& mu_star(const DivisorTable& f);
    // B[e-index aggregated over divisors]: B(g) = sum_{e | g} (mu*f)(e) (N/N(e))^s
    const std::vector<Int>& b_table(const DivisorTable& f, unsigned s);

    // unit-difference matrix: class of units[t] - units[a], flattened row
    // major; empty when the unit count is too large to tabulate
    const std::vector<long>& unit_diffs();
    // w[t-position][j] = sum over first coordinates a1 with chi-power j of
    // C_{k-1}[t - a1]; single-slot cache keyed by (chi, k)
    const std::vector<std::vector<Int>>& w_table(const Character& chi,
                                                 unsigned k);
    // divisor index of gcd(t - r, n) per unit position of t, cached per r
    const std::vector<size_t>& shift_gcds(long r_class);

private:
    const ResidueRing& ring_;
    std::vector<Ideal> divisors_;
    std::map<Vec, size_t> div_index_;
    std::vector<long> class_gcd_;                  // lazily filled, -1 = unset
    std::vector<std::vector<long>> div_gcd_;       // lazily filled, -1 = unset
    std::map<unsigned, std::vector<Int>> counts_;
    std::map<const DivisorTable*, DivisorTable> mu_star_;
    std::map<std::pair<const DivisorTable*, unsigned>, std::vector<Int>> btab_;
    bool diffs_built_ = false;
    std::vector<long> unit_diffs_;
    const Character* w_chi_ = nullptr;
    unsigned w_k_ = 0;
    std::vector<std::vector<Int>> w_;
    std::map<long, std::vector<size_t>> shift_gcds_;
};

// --- left-hand evaluators (exactly equal wherever they run) ---
// full enumeration over unit k-tuples and residue s-tuples
CycInt lhs_naive(const IdentityParams& p, const EvalBudgets& budgets,
                 IdentityContext* ctx = nullptr);
// b-sum collapsed through mu*f; enumerates unit k-tuples only
CycInt lhs_convolution(const IdentityParams& p, const EvalBudgets& budgets,
                       IdentityContext* ctx = nullptr);
// dynamic program over residue classes; the production evaluator
CycInt lhs_dp(const IdentityParams& p, const EvalBudgets& budgets,
              IdentityContext* ctx = nullptr);

// --- right-hand side ---
CycInt rhs_closed(const IdentityParams& p, IdentityContext* ctx = nullptr);
// f = norm specialization: the e-sum telescopes to sigma_s(n/d)
CycInt rhs_corollary_norm(const IdentityParams& p,
                          IdentityContext* ctx = nullptr);

// --- proof-layer tuple counts ---
// N_k for a single residue u mod d: direct enumeration (the reference).
Int nk_bruteforce(const ResidueRing& rn, const Ideal& e, const Ideal& g,
                  const Ideal& d, const AlgInt& u, unsigned k, const AlgInt& r);
// N_k for every residue class of O_K/d at once, by counting over C_{k-1};
// rd must be the residue ring of d
std::vector<Int> nk_counts(const ResidueRing& rn, const ResidueRing& rd,
                           const Ideal& e, const Ideal& g, unsigned k,
                           const AlgInt& r, IdentityContext* ctx = nullptr);
// the recursion phi(n)/(phi(e)phi(g)) sum_{j|e} mu(j) sum_{t|g} mu(t) N_{k-1},
// per residue class of O_K/d; k >= 2, gcd(e, g) = O_K
std::vector<Int> nk_recursion_rhs(const ResidueRing& rn, const ResidueRing& rd,
                                  const Ideal& e, const Ideal& g, unsigned k,
                                  const AlgInt& r,
                                  IdentityContext* ctx = nullptr);
// closed form of sum_u psi(u) N_k(n, e, g, d, u) for chi with conductor d;
// zero unless d | e
CycInt nk_charsum_closed(const Character& chi, const Ideal& e, const Ideal& g,
                         unsigned k, const AlgInt& r);

// --- verification driver ---
struct VerificationRecord {
    std::string field_name;
    Ideal n;
    Int n_norm;
    unsigned k = 0, s = 0;
    Vec r_coords;
    long char_index = 0;
    Int conductor_norm;
    std::string f_name;
    CycInt lhs, rhs;
    bool equal = false;
    std::vector<std::string> evaluators;
    double ms = 0.0;
};

// Runs the selected evaluators; any disagreement between two left-hand
// evaluators throws InternalInconsistency, as does a disagreement between
// the closed form and its norm-function corollary shape (two routes to the
// same side). equal is exactly cyc_eq(lhs, rhs).
VerificationRecord verify(const IdentityParams& p,
                          const std::vector<Evaluator>& evaluators,
                          const EvalBudgets& budgets,
                          IdentityContext* ctx = nullptr);

} // namespace menon

#endif
