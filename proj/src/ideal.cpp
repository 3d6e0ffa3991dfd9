#include "menon/ideal.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace menon {

namespace detail {

// ---------------------------------------------------------------------------
// Column-lattice elimination. Processes rows bottom-up; at row i the active
// columns (all with zeros below row i) are combined by Euclidean column
// operations until a single one carries a nonzero entry at row i. That column
// becomes the pivot for row i, so pivots naturally have support in rows 0..i.
// ---------------------------------------------------------------------------

static void col_axpy(Vec& dst, const Int& q, const Vec& src) {
    for (size_t r = 0; r < dst.size(); ++r)
        if (src[r] != 0) dst[r] -= q * src[r];
}

// Eliminates `cols` in place. Returns pivot column indices per row
// (pivot[i] = index into cols), or throws if some row has no pivot and
// `require_full_rank`. Extra columns end up identically zero. If `transform`
// is non-null it must start as the identity; the same column operations are
// mirrored onto it.
static std::vector<int> eliminate(int dim, std::vector<Vec>& cols,
                                  std::vector<Vec>* transform,
                                  bool require_full_rank) {
    std::vector<int> pivot(dim, -1);
    std::vector<bool> active(cols.size(), true);
    for (int i = dim - 1; i >= 0; --i) {
        for (;;) {
            int best = -1;
            int nonzero = 0;
            for (size_t c = 0; c < cols.size(); ++c) {
                if (!active[c] || cols[c][i] == 0) continue;
                ++nonzero;
                if (best < 0 || mpz_cmpabs(cols[c][i].get_mpz_t(),
                                           cols[best][i].get_mpz_t()) < 0)
                    best = int(c);
            }
            if (nonzero == 0) break;
            if (nonzero == 1) {
                if (cols[best][i] < 0) {
                    for (Int& x : cols[best]) x = -x;
                    if (transform)
                        for (Int& x : (*transform)[best]) x = -x;
                }
                pivot[i] = best;
                active[best] = false;
                break;
            }
            for (size_t c = 0; c < cols.size(); ++c) {
                if (!active[c] || int(c) == best || cols[c][i] == 0) continue;
                Int q = cols[c][i] / cols[best][i];  // truncated
                if (q != 0) {
                    col_axpy(cols[c], q, cols[best]);
                    if (transform) col_axpy((*transform)[c], q, (*transform)[best]);
                }
            }
        }
        if (pivot[i] < 0 && require_full_rank)
            throw ZeroIdeal("generators do not span a full-rank module");
    }
    return pivot;
}

Mat hnf_from_columns(int dim, const std::vector<Vec>& cols_in) {
    std::vector<Vec> cols = cols_in;
    std::vector<int> pivot = eliminate(dim, cols, nullptr, true);
    Mat h(dim, Vec(dim, Int(0)));
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i <= j; ++i) h[i][j] = cols[pivot[j]][i];
    // reduce off-diagonals: 0 <= h[i][j] < h[i][i] for j > i
    for (int j = 1; j < dim; ++j) {
        for (int i = j - 1; i >= 0; --i) {
            Int q = fdiv_q(h[i][j], h[i][i]);
            if (q != 0)
                for (int r = 0; r <= i; ++r) h[r][j] -= q * h[r][i];
        }
    }
    return h;
}

Vec hnf_reduce(const Mat& h, Vec v) {
    const int d = int(h.size());
    for (int i = d - 1; i >= 0; --i) {
        Int q = fdiv_q(v[i], h[i][i]);
        if (q != 0)
            for (int r = 0; r <= i; ++r) v[r] -= q * h[r][i];
    }
    return v;
}

static bool hnf_contains(const Mat& h, const Vec& v) {
    const int d = int(h.size());
    Vec w = v;
    for (int i = d - 1; i >= 0; --i) {
        if (!divides(h[i][i], w[i])) return false;
        Int q = w[i] / h[i][i];
        if (q != 0)
            for (int r = 0; r <= i; ++r) w[r] -= q * h[r][i];
    }
    return true;
}

Mat lattice_intersection(const Mat& a, const Mat& b) {
    const int d = int(a.size());
    // kernel of [A | -B] gives the coincidences A x = B y
    std::vector<Vec> cols;
    cols.reserve(2 * d);
    for (int j = 0; j < d; ++j) {
        Vec c(d);
        for (int i = 0; i < d; ++i) c[i] = a[i][j];
        cols.push_back(std::move(c));
    }
    for (int j = 0; j < d; ++j) {
        Vec c(d);
        for (int i = 0; i < d; ++i) c[i] = -b[i][j];
        cols.push_back(std::move(c));
    }
    std::vector<Vec> u(2 * d, Vec(2 * d, Int(0)));
    for (int j = 0; j < 2 * d; ++j) u[j][j] = 1;
    std::vector<int> pivot = eliminate(d, cols, &u, true);
    std::vector<bool> is_pivot(cols.size(), false);
    for (int i = 0; i < d; ++i) is_pivot[pivot[i]] = true;
    std::vector<Vec> meet;
    for (size_t c = 0; c < cols.size(); ++c) {
        if (is_pivot[c]) continue;
        // kernel column: x-part gives an intersection vector A x
        Vec v(d, Int(0));
        for (int j = 0; j < d; ++j)
            if (u[c][j] != 0)
                for (int i = 0; i < d; ++i) v[i] += a[i][j] * u[c][j];
        meet.push_back(std::move(v));
    }
    return hnf_from_columns(d, meet);
}


} // namespace detail

// ---------------------------------------------------------------------------
// Ideal basics
// ---------------------------------------------------------------------------

Ideal::Ideal(const NumberField* K, Mat h) : K_(K), h_(std::move(h)) {
    norm_ = 1;
    for (size_t i = 0; i < h_.size(); ++i) norm_ *= h_[i][i];
}

namespace detail {
Ideal adopt_hnf(const NumberField* K, Mat h) { return Ideal(K, std::move(h)); }
} // namespace detail

static std::vector<Vec> theta_span_columns(const AlgInt& g) {
    const NumberField* K = g.field();
    std::vector<Vec> cols;
    AlgInt pw = g;
    for (int j = 0; j < K->degree(); ++j) {
        cols.push_back(pw.coords());
        if (j + 1 < K->degree()) pw = pw * AlgInt::theta(K);
    }
    return cols;
}

Ideal Ideal::from_generators(const NumberField* K,
                             const std::vector<AlgInt>& gens) {
    std::vector<Vec> cols;
    for (const AlgInt& g : gens) {
        if (g.field() != K) throw FieldMismatch("generator from another field");
        if (g.is_zero()) continue;
        for (auto& c : theta_span_columns(g)) cols.push_back(std::move(c));
    }
    if (cols.empty()) throw ZeroIdeal("all generators are zero");
    return Ideal(K, detail::hnf_from_columns(K->degree(), cols));
}

Ideal Ideal::principal(const AlgInt& a) {
    return from_generators(a.field(), {a});
}

Ideal Ideal::from_int(const NumberField* K, const Int& m) {
    return from_generators(K, {AlgInt::from_int(K, m)});
}

Ideal Ideal::unit_ideal(const NumberField* K) {
    Mat h(K->degree(), Vec(K->degree(), Int(0)));
    for (int i = 0; i < K->degree(); ++i) h[i][i] = 1;
    return Ideal(K, std::move(h));
}

Ideal Ideal::from_hnf(const NumberField* K, Mat h) {
    const int d = K->degree();
    if (int(h.size()) != d) throw Error("HNF matrix has wrong dimension");
    for (int i = 0; i < d; ++i) {
        if (int(h[i].size()) != d) throw Error("HNF matrix has wrong dimension");
        if (h[i][i] <= 0) throw Error("HNF diagonal must be positive");
        for (int j = 0; j < d; ++j) {
            if (j < i && h[i][j] != 0) throw Error("HNF must be upper triangular");
            if (j > i && (h[i][j] < 0 || h[i][j] >= h[i][i]))
                throw Error("HNF off-diagonal entries must be reduced");
        }
    }
    Ideal cand(K, std::move(h));
    // closure under multiplication by theta
    for (int j = 0; j < d; ++j) {
        AlgInt tb = cand.basis_element(j) * AlgInt::theta(K);
        if (!cand.contains(tb))
            throw Error("module is not closed under multiplication by theta");
    }
    return cand;
}

AlgInt Ideal::basis_element(int j) const {
    Vec c(h_.size());
    for (size_t i = 0; i < h_.size(); ++i) c[i] = h_[i][j];
    return AlgInt(K_, std::move(c));
}

bool Ideal::contains(const AlgInt& a) const {
    if (a.field() != K_) throw FieldMismatch("element from another field");
    return detail::hnf_contains(h_, a.coords());
}

bool Ideal::contains(const Vec& coords) const {
    return detail::hnf_contains(h_, coords);
}

bool operator<(const Ideal& a, const Ideal& b) {
    if (a.norm_ != b.norm_) return a.norm_ < b.norm_;
    return a.h_ < b.h_;
}

Vec Ideal::key() const {
    Vec k;
    k.reserve(h_.size() * h_.size());
    for (const auto& row : h_)
        for (const Int& x : row) k.push_back(x);
    return k;
}

std::string Ideal::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < h_.size(); ++i) {
        if (i) os << ";";
        for (size_t j = 0; j < h_.size(); ++j) {
            if (j) os << ",";
            os << h_[i][j];
        }
    }
    os << "](N=" << norm_ << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

static void check_same_field(const Ideal& a, const Ideal& b) {
    if (a.field() != b.field())
        throw FieldMismatch("ideals belong to different fields");
}

static std::vector<Vec> hnf_columns_of(const Ideal& a) {
    const Mat& h = a.hnf();
    const int d = int(h.size());
    std::vector<Vec> cols(d, Vec(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) cols[j][i] = h[i][j];
    return cols;
}

Ideal ideal_gcd(const Ideal& a, const Ideal& b) {
    check_same_field(a, b);
    std::vector<Vec> cols = hnf_columns_of(a);
    for (auto& c : hnf_columns_of(b)) cols.push_back(std::move(c));
    return detail::adopt_hnf(a.field(),
                             detail::hnf_from_columns(a.field()->degree(), cols));
}

Ideal ideal_lcm(const Ideal& a, const Ideal& b) {
    check_same_field(a, b);
    return detail::adopt_hnf(a.field(),
                             detail::lattice_intersection(a.hnf(), b.hnf()));
}

Ideal ideal_mul(const Ideal& a, const Ideal& b) {
    check_same_field(a, b);
    const int d = a.field()->degree();
    std::vector<Vec> cols;
    cols.reserve(size_t(d) * d);
    for (int i = 0; i < d; ++i) {
        AlgInt ai = a.basis_element(i);
        for (int j = 0; j < d; ++j)
            cols.push_back((ai * b.basis_element(j)).coords());
    }
    return detail::adopt_hnf(a.field(), detail::hnf_from_columns(d, cols));
}

Ideal ideal_pow(const Ideal& a, unsigned e) {
    Ideal r = Ideal::unit_ideal(a.field());
    for (unsigned i = 0; i < e; ++i) r = ideal_mul(r, a);
    return r;
}

Ideal ideal_gcd_with_elements(const Ideal& n, const std::vector<Vec>& elems) {
    std::vector<Vec> cols = hnf_columns_of(n);
    const NumberField* K = n.field();
    for (const Vec& e : elems) {
        AlgInt a(K, e);
        if (a.is_zero()) continue;  // gcd(<0>, n) = n
        for (auto& c : theta_span_columns(a)) cols.push_back(std::move(c));
    }
    return detail::adopt_hnf(K, detail::hnf_from_columns(K->degree(), cols));
}

bool ideal_divides(const Ideal& a, const Ideal& b) {
    check_same_field(a, b);
    const int d = a.field()->degree();
    for (int j = 0; j < d; ++j)
        if (!a.contains(b.basis_element(j))) return false;
    return true;
}

int ideal_valuation(const Ideal& a, const Ideal& p) {
    int t = 0;
    Ideal pw = p;
    while (ideal_divides(pw, a)) {
        ++t;
        pw = ideal_mul(pw, p);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Splitting of the minimal polynomial modulo p (valid since O_K = Z[theta]).
// Dense polynomials mod p, coefficients constant-first in [0, p).
// ---------------------------------------------------------------------------

namespace {

size_t pdeg(const Vec& f) {
    size_t d = f.size();
    while (d > 0 && f[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

Vec poly_reduce_mod(Vec f, const Int& p) {
    for (Int& c : f) {
        c %= p;
        if (c < 0) c += p;
    }
    size_t d = pdeg(f);
    f.resize(d + 1);
    return f;
}

Int poly_eval_mod(const Vec& f, const Int& x, const Int& p) {
    Int acc(0);
    for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    return acc;
}

// quotient of f by monic g mod p, or nullopt if g does not divide f
std::optional<Vec> poly_divexact_mod(const Vec& f, const Vec& g, const Int& p) {
    size_t df = pdeg(f), dg = pdeg(g);
    if (df < dg) return std::nullopt;
    Vec rem = f;
    Vec quot(df - dg + 1, Int(0));
    for (size_t i = df + 1; i-- > dg;) {
        Int c = rem[i] % p;
        if (c < 0) c += p;
        if (c == 0) continue;
        quot[i - dg] = c;
        for (size_t j = 0; j <= dg; ++j) {
            rem[i - dg + j] = (rem[i - dg + j] - c * g[j]) % p;
        }
    }
    for (const Int& c : rem)
        if (c % p != 0) return std::nullopt;
    return poly_reduce_mod(std::move(quot), p);
}

Vec poly_mul_mod(const Vec& a, const Vec& b, const Int& p) {
    Vec r(pdeg(a) + pdeg(b) + 1, Int(0));
    for (size_t i = 0; i <= pdeg(a); ++i)
        for (size_t j = 0; j <= pdeg(b); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_reduce_mod(std::move(r), p);
}

// monic irreducible factors of f mod p with multiplicities, sorted by
// coefficient vector. Exhaustive root extraction plus quadratic splitting;
// sufficient through degree 5 (any unfactored remainder of degree 3..5 with
// no linear or quadratic divisor is irreducible).
std::vector<std::pair<Vec, int>> factor_poly_mod(const Vec& f_in, const Int& p) {
    Vec rem = poly_reduce_mod(f_in, p);
    std::vector<std::pair<Vec, int>> out;
    for (Int r = 0; r < p; ++r) {
        int mult = 0;
        while (pdeg(rem) >= 1 && poly_eval_mod(rem, r, p) == 0) {
            Vec lin{(p - r) % p, Int(1)};
            auto q = poly_divexact_mod(rem, lin, p);
            rem = std::move(*q);
            ++mult;
        }
        if (mult) out.push_back({Vec{(p - r) % p, Int(1)}, mult});
    }
    if (pdeg(rem) >= 4) {
        for (Int b = 0; b < p && pdeg(rem) >= 2; ++b) {
            for (Int c = 0; c < p && pdeg(rem) >= 2; ++c) {
                Vec quad{c, b, Int(1)};
                int mult = 0;
                for (;;) {
                    auto q = poly_divexact_mod(rem, quad, p);
                    if (!q) break;
                    rem = std::move(*q);
                    ++mult;
                }
                if (mult) out.push_back({std::move(quad), mult});
            }
        }
    }
    if (pdeg(rem) >= 6)
        throw Error("prime splitting beyond degree 5 is not supported");
    if (pdeg(rem) >= 2) {
        out.push_back({rem, 1});
    } else if (pdeg(rem) == 1) {
        throw Error("internal: linear factor escaped root extraction");
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // splitting sanity: degrees and product must reproduce f
    Vec check{Int(1)};
    for (const auto& [g, e] : out)
        for (int i = 0; i < e; ++i) check = poly_mul_mod(check, g, p);
    if (check != poly_reduce_mod(f_in, p))
        throw Error("internal: mod-p factorization check failed");
    return out;
}

AlgInt eval_at_theta(const NumberField* K, const Vec& g) {
    AlgInt acc = AlgInt::zero(K);
    AlgInt th = AlgInt::theta(K);
    for (size_t i = g.size(); i-- > 0;)
        acc = acc * th + AlgInt::from_int(K, g[i]);
    return acc;
}

const std::vector<detail::FieldCache::PrimeAbove>&
primes_above(const NumberField* K, const Int& p) {
    detail::FieldCache& cache = K->cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.primes_above.find(p);
    if (it != cache.primes_above.end()) return it->second;

    std::vector<detail::FieldCache::PrimeAbove> slots;
    for (auto& [g, e] : factor_poly_mod(K->min_poly(), p)) {
        Ideal prime = Ideal::from_generators(
            K, {AlgInt::from_int(K, p), eval_at_theta(K, g)});
        int fd = int(pdeg(g));
        if (prime.norm() != ipow(p, fd))
            throw Error("internal: prime ideal norm check failed");
        slots.push_back({g, e, prime.hnf(), fd});
    }
    return cache.primes_above.emplace(p, std::move(slots)).first->second;
}

std::vector<Int> rational_prime_divisors(Int n) {
    std::vector<Int> ps;
    if (n < 0) n = -n;
    Int p = 2;
    while (p * p <= n) {
        if (divides(p, n)) {
            ps.push_back(p);
            while (divides(p, n)) n /= p;
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

} // namespace

Factorization ideal_factor(const Ideal& a) {
    const NumberField* K = a.field();
    if (a.is_unit_ideal()) return {};

    detail::FieldCache& cache = K->cache();
    Vec key = a.key();
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.factorizations.find(key);
        if (it != cache.factorizations.end()) {
            Factorization out;
            for (const auto& term : it->second) {
                const auto& slot = cache.primes_above.at(term.p)[term.idx];
                out.push_back({PrimeIdeal(detail::adopt_hnf(K, slot.hnf),
                                          term.p, slot.fdeg),
                               term.exp});
            }
            return out;
        }
    }

    Factorization out;
    std::vector<detail::FieldCache::FactorTerm> terms;
    Ideal check = Ideal::unit_ideal(K);
    for (const Int& p : rational_prime_divisors(a.norm())) {
        const auto& slots = primes_above(K, p);
        for (size_t idx = 0; idx < slots.size(); ++idx) {
            Ideal prime = detail::adopt_hnf(K, slots[idx].hnf);
            int t = ideal_valuation(a, prime);
            if (t == 0) continue;
            check = ideal_mul(check, ideal_pow(prime, unsigned(t)));
            out.push_back({PrimeIdeal(std::move(prime), p, slots[idx].fdeg), t});
            terms.push_back({p, int(idx), t});
        }
    }
    if (!(check == a))
        throw Error("internal: factorization does not multiply back");
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        cache.factorizations.emplace(std::move(key), std::move(terms));
    }
    return out;
}

Ideal ideal_divexact(const Ideal& b, const Ideal& a) {
    check_same_field(a, b);
    if (!ideal_divides(a, b)) throw NotDivisible("quotient is not integral");
    Ideal c = Ideal::unit_ideal(b.field());
    for (const auto& [prime, e] : ideal_factor(b)) {
        int va = ideal_valuation(a, prime.ideal());
        if (e - va > 0) c = ideal_mul(c, ideal_pow(prime.ideal(), unsigned(e - va)));
    }
    if (!(ideal_mul(a, c) == b))
        throw Error("internal: exact division check failed");
    return c;
}

std::vector<Ideal> ideal_divisors(const Ideal& a) {
    Factorization fac = ideal_factor(a);
    std::vector<Ideal> divs{Ideal::unit_ideal(a.field())};
    for (const auto& [prime, e] : fac) {
        std::vector<Ideal> next;
        next.reserve(divs.size() * (e + 1));
        Ideal pw = Ideal::unit_ideal(a.field());
        for (int i = 0; i <= e; ++i) {
            for (const Ideal& d : divs) next.push_back(ideal_mul(d, pw));
            if (i < e) pw = ideal_mul(pw, prime.ideal());
        }
        divs = std::move(next);
    }
    std::sort(divs.begin(), divs.end());
    size_t expect = 1;
    for (const auto& [prime, e] : fac) expect *= size_t(e + 1);
    if (divs.size() != expect)
        throw Error("internal: divisor count mismatch");
    return divs;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

std::vector<PrimeIdeal> primes_up_to(const NumberField* K, const Int& bound) {
    std::vector<PrimeIdeal> out;
    for (Int p = 2; p <= bound;
         mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        for (const auto& slot : primes_above(K, p)) {
            if (ipow(p, slot.fdeg) <= bound)
                out.push_back(PrimeIdeal(detail::adopt_hnf(K, slot.hnf), p,
                                         slot.fdeg));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PrimeIdeal& a, const PrimeIdeal& b) {
                  if (a.ideal().norm() != b.ideal().norm())
                      return a.ideal().norm() < b.ideal().norm();
                  return a.ideal() < b.ideal();
              });
    return out;
}

static void extend_products(const NumberField* K,
                            const std::vector<PrimeIdeal>& primes, size_t i,
                            const Ideal& cur, const Int& bound,
                            std::vector<Ideal>& out) {
    if (i == primes.size()) {
        if (cur.norm() > 1) out.push_back(cur);
        return;
    }
    extend_products(K, primes, i + 1, cur, bound, out);
    Ideal acc = cur;
    for (;;) {
        if (acc.norm() * primes[i].ideal().norm() > bound) break;
        acc = ideal_mul(acc, primes[i].ideal());
        extend_products(K, primes, i + 1, acc, bound, out);
    }
}

std::vector<Ideal> enumerate_ideals(const NumberField* K, const Int& bound) {
    std::vector<Ideal> out;
    if (bound < 2) return out;
    std::vector<PrimeIdeal> primes = primes_up_to(K, bound);
    extend_products(K, primes, 0, Ideal::unit_ideal(K), bound, out);
    std::sort(out.begin(), out.end());
    return out;
}

static void hnf_candidates(const NumberField* K, int row, Mat& h,
                           const Int& bound, std::vector<Ideal>& out) {
    const int d = K->degree();
    if (row == d) {
        Int norm = 1;
        for (int i = 0; i < d; ++i) norm *= h[i][i];
        if (norm <= 1 || norm > bound) return;
        try {
            out.push_back(Ideal::from_hnf(K, h));
        } catch (const Error&) {
            // not closed under theta: not an ideal
        }
        return;
    }
    Int remaining = 1;
    for (int i = 0; i < row; ++i) remaining *= h[i][i];
    for (Int diag = 1; remaining * diag <= bound; ++diag) {
        h[row][row] = diag;
        // off-diagonal entries of row `row` live in columns > row and are
        // reduced mod diag; fill them with an odometer
        std::vector<Int> off(size_t(d - row - 1), Int(0));
        for (;;) {
            for (int j = row + 1; j < d; ++j) h[row][j] = off[size_t(j - row - 1)];
            hnf_candidates(K, row + 1, h, bound, out);
            size_t k = 0;
            while (k < off.size()) {
                off[k] += 1;
                if (off[k] < diag) break;
                off[k] = 0;
                ++k;
            }
            if (k == off.size()) break;
        }
    }
    for (int j = row; j < d; ++j) h[row][j] = 0;
}

std::vector<Ideal> enumerate_ideals_hnf(const NumberField* K,
                                        const Int& bound) {
    Mat h(K->degree(), Vec(K->degree(), Int(0)));
    std::vector<Ideal> out;
    hnf_candidates(K, 0, h, bound, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace menon
