#include "menon/residue.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace menon {

ResidueRing::ResidueRing(const NumberField* K, Ideal modulus, long enum_bound)
    : K_(K), n_(std::move(modulus)) {
    if (n_.field() != K_) throw FieldMismatch("modulus from another field");
    const int d = K_->degree();
    diag_.resize(d);
    for (int i = 0; i < d; ++i) diag_[i] = n_.hnf()[i][i];
    stride_.assign(d, Int(1));
    for (int i = d - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * diag_[i + 1];
    if (n_.norm() <= enum_bound) {
        enumerate(enum_bound);
        build_unit_basis();
    }
}

Vec ResidueRing::reduce(Vec a) const { return detail::hnf_reduce(n_.hnf(), std::move(a)); }

AlgInt ResidueRing::reduce(const AlgInt& a) const {
    if (a.field() != K_) throw FieldMismatch("element from another field");
    return AlgInt(K_, reduce(a.coords()));
}

bool ResidueRing::is_unit(const Vec& coords) const {
    return ideal_gcd_with_elements(n_, {coords}).is_unit_ideal();
}

bool ResidueRing::is_unit(const AlgInt& a) const {
    if (a.field() != K_) throw FieldMismatch("element from another field");
    return is_unit(a.coords());
}

long ResidueRing::class_count() const {
    if (!enumerated_)
        throw EnumerationBoundExceeded("residue ring exceeds enumeration bound");
    return long(reps_.size());
}

const Vec& ResidueRing::rep_of(long idx) const {
    if (!enumerated_)
        throw EnumerationBoundExceeded("residue ring exceeds enumeration bound");
    return reps_[size_t(idx)];
}

long ResidueRing::index_of(const Vec& canonical) const {
    Int idx(0);
    for (size_t i = 0; i < canonical.size(); ++i)
        idx += canonical[i] * stride_[i];
    return to_long(idx);
}

long ResidueRing::index_of_reduced(Vec a) const {
    return index_of(reduce(std::move(a)));
}

bool ResidueRing::is_unit_class(long idx) const { return unit_flag_[size_t(idx)]; }

const std::vector<long>& ResidueRing::unit_classes() const {
    if (!enumerated_)
        throw EnumerationBoundExceeded("residue ring exceeds enumeration bound");
    return unit_classes_;
}

long ResidueRing::unit_count() const { return long(unit_classes().size()); }

long ResidueRing::class_add(long x, long y) const {
    Vec s = reps_[size_t(x)];
    const Vec& t = reps_[size_t(y)];
    for (size_t i = 0; i < s.size(); ++i) s[i] += t[i];
    return index_of(reduce(std::move(s)));
}

long ResidueRing::class_sub(long x, long y) const {
    Vec s = reps_[size_t(x)];
    const Vec& t = reps_[size_t(y)];
    for (size_t i = 0; i < s.size(); ++i) s[i] -= t[i];
    return index_of(reduce(std::move(s)));
}

long ResidueRing::class_neg(long x) const {
    Vec s = reps_[size_t(x)];
    for (auto& c : s) c = -c;
    return index_of(reduce(std::move(s)));
}

long ResidueRing::class_mul(long x, long y) const {
    AlgInt p = AlgInt(K_, reps_[size_t(x)]) * AlgInt(K_, reps_[size_t(y)]);
    return index_of(reduce(p.coords()));
}

void ResidueRing::enumerate(long) {
    const int d = K_->degree();
    const long N = to_long(n_.norm());
    reps_.reserve(size_t(N));
    Vec cur(d, Int(0));
    for (;;) {
        reps_.push_back(cur);
        int k = d - 1;
        while (k >= 0) {
            cur[size_t(k)] += 1;
            if (cur[size_t(k)] < diag_[size_t(k)]) break;
            cur[size_t(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    if (long(reps_.size()) != N)
        throw Error("internal: representative count mismatch");

    unit_flag_.resize(reps_.size());
    unit_pos_.assign(reps_.size(), -1);
    for (size_t i = 0; i < reps_.size(); ++i) {
        unit_flag_[i] = is_unit(reps_[i]);
        if (unit_flag_[i]) {
            unit_pos_[i] = long(unit_classes_.size());
            unit_classes_.push_back(long(i));
        }
    }
    enumerated_ = true;
}

long ResidueRing::unit_position(long cls) const { return unit_pos_[size_t(cls)]; }

namespace {

long pow_class(const ResidueRing& R, long base, long one, long e) {
    long acc = one;
    long sq = base;
    while (e > 0) {
        if (e & 1) acc = R.class_mul(acc, sq);
        sq = R.class_mul(sq, sq);
        e >>= 1;
    }
    return acc;
}

std::vector<std::pair<long, int>> factor_long(long n) {
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

} // namespace

void ResidueRing::build_unit_basis() {
    const long phi = long(unit_classes_.size());
    const long one = index_of_reduced(AlgInt::one(K_).coords());
    dlogs_.assign(size_t(phi), {});
    if (phi == 1) {
        exponent_ = 1;
        return;
    }

    // One invariant-factor basis per Sylow subgroup, greedy by maximal
    // relative order with discrete-log elimination; orders come out
    // descending within each prime.
    std::vector<std::vector<long>> prime_gens;
    std::vector<std::vector<long>> prime_ords;
    for (auto [q, e] : factor_long(phi)) {
        long cofactor = phi;
        for (int i = 0; i < e; ++i) cofactor /= q;
        std::set<long> sylow;
        for (long u : unit_classes_) sylow.insert(pow_class(*this, u, one, cofactor));

        std::vector<long> gens, ords;
        std::map<long, std::vector<long>> gen_sub;  // class -> dlog in gens
        gen_sub[one] = {};
        while (long(gen_sub.size()) < long(sylow.size())) {
            // element of maximal relative order q^b modulo the generated
            // subgroup; smallest class index breaks ties
            long best_x = -1, best_land = -1;
            int best_b = 0;
            for (long x : sylow) {
                if (gen_sub.count(x)) continue;
                int b = 1;
                long y = pow_class(*this, x, one, q);
                while (!gen_sub.count(y)) {
                    y = pow_class(*this, y, one, q);
                    ++b;
                }
                if (b > best_b) {
                    best_b = b;
                    best_x = x;
                    best_land = y;
                }
            }
            if (best_x < 0) throw Error("internal: unit basis search stalled");
            // x^{q^b} = prod g_i^{v_i} with q^b | v_i; divide the overlap out
            // so the new generator meets the subgroup only at 1
            long qb = 1;
            for (int i = 0; i < best_b; ++i) qb *= q;
            const std::vector<long> v = gen_sub.at(best_land);
            long g = best_x;
            for (size_t i = 0; i < gens.size(); ++i) {
                if (v[i] % qb != 0)
                    throw Error("internal: unit basis adjustment failed");
                long w = (v[i] / qb) % ords[i];
                if (w == 0) continue;
                g = class_mul(g, pow_class(*this, gens[i], one, ords[i] - w));
            }
            gens.push_back(g);
            ords.push_back(qb);
            // extend the generated-subgroup table
            std::map<long, std::vector<long>> next;
            long gp = one;
            for (long ei = 0; ei < qb; ++ei) {
                for (const auto& [cls, dl] : gen_sub) {
                    std::vector<long> nd = dl;
                    nd.push_back(ei);
                    next.emplace(class_mul(cls, gp), std::move(nd));
                }
                gp = class_mul(gp, g);
            }
            if (long(next.size()) != long(gen_sub.size()) * qb)
                throw Error("internal: unit basis direct-sum check failed");
            gen_sub = std::move(next);
        }
        prime_gens.push_back(std::move(gens));
        prime_ords.push_back(std::move(ords));
    }

    // CRT-combine the i-th generators across primes (descending orders),
    // then flip to the ascending divisor chain d1 | d2 | ... | dt.
    size_t t = 0;
    for (const auto& g : prime_gens) t = std::max(t, g.size());
    std::vector<long> gens(t, one), ords(t, 1);
    for (size_t qi = 0; qi < prime_gens.size(); ++qi) {
        for (size_t i = 0; i < prime_gens[qi].size(); ++i) {
            gens[i] = class_mul(gens[i], prime_gens[qi][i]);
            ords[i] *= prime_ords[qi][i];
        }
    }
    std::reverse(gens.begin(), gens.end());
    std::reverse(ords.begin(), ords.end());
    Int prod(1);
    for (long o : ords) prod *= o;
    if (prod != phi) throw Error("internal: basis orders do not multiply to phi");
    for (size_t i = 0; i + 1 < t; ++i)
        if (ords[i + 1] % ords[i] != 0)
            throw Error("internal: basis orders not a divisor chain");

    basis_.gens = gens;
    basis_.orders = ords;
    exponent_ = t == 0 ? 1 : ords.back();

    // full discrete-log table by walking every exponent vector
    std::vector<std::vector<long>> powers(t);
    for (size_t i = 0; i < t; ++i) {
        powers[i].resize(size_t(ords[i]));
        long acc = one;
        for (long e2 = 0; e2 < ords[i]; ++e2) {
            powers[i][size_t(e2)] = acc;
            acc = class_mul(acc, gens[i]);
        }
    }
    std::vector<long> expv(t, 0);
    std::vector<bool> seen(size_t(phi), false);
    for (;;) {
        long cls = one;
        for (size_t i = 0; i < t; ++i)
            cls = class_mul(cls, powers[i][size_t(expv[i])]);
        long pos = unit_pos_[size_t(cls)];
        if (pos < 0 || seen[size_t(pos)])
            throw Error("internal: dlog table is not a bijection");
        seen[size_t(pos)] = true;
        dlogs_[size_t(pos)] = std::vector<long>(expv.begin(), expv.end());
        size_t k = t;
        bool done = (t == 0);
        while (k > 0) {
            --k;
            if (++expv[k] < ords[k]) break;
            expv[k] = 0;
            if (k == 0) done = true;
        }
        if (done) break;
    }
    for (bool s : seen)
        if (!s) throw Error("internal: dlog table missed a unit");
}

const ResidueRing::UnitBasis& ResidueRing::unit_basis() const {
    if (!enumerated_)
        throw EnumerationBoundExceeded("residue ring exceeds enumeration bound");
    return basis_;
}

const std::vector<long>& ResidueRing::dlog(long unit_class) const {
    if (!enumerated_)
        throw EnumerationBoundExceeded("residue ring exceeds enumeration bound");
    long pos = unit_pos_[size_t(unit_class)];
    if (pos < 0) throw Error("dlog of a non-unit class");
    return dlogs_[size_t(pos)];
}

long ResidueRing::exponent() const {
    if (!enumerated_)
        throw EnumerationBoundExceeded("residue ring exceeds enumeration bound");
    return exponent_;
}

Int ResidueRing::count_congruent(const Ideal& a, const AlgInt& u) const {
    if (!ideal_divides(a, n_)) throw NotADivisor("a must divide the modulus");
    Vec target = detail::hnf_reduce(a.hnf(), u.coords());
    Int count(0);
    for (long cls : unit_classes()) {
        if (detail::hnf_reduce(a.hnf(), reps_[size_t(cls)]) == target) ++count;
    }
    return count;
}

Int ResidueRing::count_congruent2(const Ideal& a, const AlgInt& u,
                                  const Ideal& b, const AlgInt& v) const {
    if (!ideal_divides(a, n_) || !ideal_divides(b, n_))
        throw NotADivisor("a and b must divide the modulus");
    Vec ta = detail::hnf_reduce(a.hnf(), u.coords());
    Vec tb = detail::hnf_reduce(b.hnf(), v.coords());
    Int count(0);
    for (long cls : unit_classes()) {
        if (detail::hnf_reduce(a.hnf(), reps_[size_t(cls)]) == ta &&
            detail::hnf_reduce(b.hnf(), reps_[size_t(cls)]) == tb)
            ++count;
    }
    return count;
}

} // namespace menon
