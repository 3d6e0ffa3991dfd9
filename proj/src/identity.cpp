#include "menon/identity.hpp"

#include <algorithm>
#include <functional>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace menon {

void validate(const IdentityParams& p) {
    if (!p.ring || !p.chi || !p.f) throw Error("incomplete identity parameters");
    if (p.k < 1) throw Error("k must be positive");
    if (&p.chi->ring() != p.ring)
        throw Error("character does not live on the given residue ring");
    if (!(p.f->modulus() == p.ring->modulus()))
        throw Error("f is tabulated against a different modulus");
    if (p.r.field() != p.ring->field())
        throw FieldMismatch("r belongs to another field");
    if (!p.ring->is_unit(p.r)) throw NotCoprime("r must be a unit mod n");
}

const char* evaluator_name(Evaluator e) {
    switch (e) {
        case Evaluator::naive: return "naive";
        case Evaluator::convolution: return "convolution";
        case Evaluator::dp: return "dp";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Context
// ---------------------------------------------------------------------------

IdentityContext::IdentityContext(const ResidueRing& ring)
    : ring_(ring), divisors_(ideal_divisors(ring.modulus())) {
    for (size_t i = 0; i < divisors_.size(); ++i)
        div_index_.emplace(divisors_[i].key(), i);
    class_gcd_.assign(size_t(ring.class_count()), -1);
    div_gcd_.assign(divisors_.size(),
                    std::vector<long>(divisors_.size(), -1));
}

size_t IdentityContext::divisor_index(const Ideal& d) const {
    auto it = div_index_.find(d.key());
    if (it == div_index_.end()) throw NotADivisor("not a divisor of the modulus");
    return it->second;
}

size_t IdentityContext::gcd_divisor_of_class(long cls) {
    long& slot = class_gcd_[size_t(cls)];
    if (slot < 0) {
        Ideal g = ideal_gcd_with_elements(ring_.modulus(), {ring_.rep_of(cls)});
        slot = long(divisor_index(g));
    }
    return size_t(slot);
}

size_t IdentityContext::divisor_gcd(size_t i, size_t j) {
    long& slot = div_gcd_[i][j];
    if (slot < 0) {
        slot = long(divisor_index(ideal_gcd(divisors_[i], divisors_[j])));
        div_gcd_[j][i] = slot;
    }
    return size_t(slot);
}

const std::vector<Int>& IdentityContext::tuple_counts(unsigned j) {
    auto it = counts_.find(j);
    if (it == counts_.end())
        it = counts_.emplace(j, unit_sum_counts(ring_, j)).first;
    return it->second;
}

const DivisorTable& IdentityContext::mu_star(const DivisorTable& f) {
    auto it = mu_star_.find(&f);
    if (it == mu_star_.end()) {
        DivisorTable mu = DivisorTable::tabulate(ring_.modulus(), "moebius");
        it = mu_star_.emplace(&f, dirichlet_convolve(mu, f)).first;
    }
    return it->second;
}

const std::vector<long>& IdentityContext::unit_diffs() {
    if (!diffs_built_) {
        const auto& units = ring_.unit_classes();
        const size_t nu = units.size();
        if (nu <= 1200) {
            unit_diffs_.resize(nu * nu);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (nu >= 64)
#endif
            for (long t = 0; t < long(nu); ++t)
                for (size_t a = 0; a < nu; ++a)
                    unit_diffs_[size_t(t) * nu + a] =
                        ring_.class_sub(units[size_t(t)], units[a]);
        }
        diffs_built_ = true;
    }
    return unit_diffs_;
}

const std::vector<std::vector<Int>>& IdentityContext::w_table(
    const Character& chi, unsigned k) {
    if (w_chi_ == &chi && w_k_ == k) return w_;
    const auto& units = ring_.unit_classes();
    const size_t nu = units.size();
    const long m = chi.order_m();
    const std::vector<Int>& C = tuple_counts(k - 1);
    const std::vector<long>& diffs = unit_diffs();
    std::vector<long> zp(nu);
    for (size_t a = 0; a < nu; ++a) zp[a] = *chi.zeta_power(units[a]);
    w_.assign(nu, Vec(size_t(m), Int(0)));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (nu >= 64)
#endif
    for (long t = 0; t < long(nu); ++t) {
        Vec& row = w_[size_t(t)];
        for (size_t a = 0; a < nu; ++a) {
            long cls = diffs.empty()
                           ? ring_.class_sub(units[size_t(t)], units[a])
                           : diffs[size_t(t) * nu + a];
            const Int& c = C[size_t(cls)];
            if (c != 0) row[size_t(zp[a])] += c;
        }
    }
    w_chi_ = &chi;
    w_k_ = k;
    return w_;
}

const std::vector<size_t>& IdentityContext::shift_gcds(long r_class) {
    auto it = shift_gcds_.find(r_class);
    if (it != shift_gcds_.end()) return it->second;
    const auto& units = ring_.unit_classes();
    std::vector<size_t> out(units.size());
    for (size_t ti = 0; ti < units.size(); ++ti)
        out[ti] = gcd_divisor_of_class(ring_.class_sub(units[ti], r_class));
    return shift_gcds_.emplace(r_class, std::move(out)).first->second;
}

const std::vector<Int>& IdentityContext::b_table(const DivisorTable& f,
                                                 unsigned s) {
    auto key = std::make_pair(&f, s);
    auto it = btab_.find(key);
    if (it != btab_.end()) return it->second;
    const DivisorTable& ms = mu_star(f);
    const Int& N = ring_.modulus().norm();
    std::vector<Int> b(divisors_.size(), Int(0));
    for (size_t gi = 0; gi < divisors_.size(); ++gi) {
        for (size_t ei = 0; ei < divisors_.size(); ++ei) {
            if (!ideal_divides(divisors_[ei], divisors_[gi])) continue;
            Int cnt = ipow(N / divisors_[ei].norm(), s);
            b[gi] += ms.value_by_index(ei) * cnt;
        }
    }
    return btab_.emplace(key, std::move(b)).first->second;
}

// ---------------------------------------------------------------------------
// Left-hand evaluators
// ---------------------------------------------------------------------------

namespace {

struct CtxHolder {
    IdentityContext* ctx;
    std::unique_ptr<IdentityContext> owned;
    explicit CtxHolder(const ResidueRing& ring, IdentityContext* given)
        : ctx(given) {
        if (!ctx) {
            owned = std::make_unique<IdentityContext>(ring);
            ctx = owned.get();
        }
    }
};

std::vector<long> zeta_powers_by_unit(const ResidueRing& ring,
                                      const Character& chi) {
    std::vector<long> zp;
    zp.reserve(size_t(ring.unit_count()));
    for (long cls : ring.unit_classes()) zp.push_back(*chi.zeta_power(cls));
    return zp;
}

// odometer over unit k-tuples carrying partial class sums; calls
// visit(sum_class, first_unit_position) per tuple
template <typename Visit>
void for_each_unit_tuple(const ResidueRing& ring, unsigned k, Visit visit) {
    const auto& units = ring.unit_classes();
    const long zero = ring.index_of_reduced(Vec(ring.field()->degree(), Int(0)));
    const size_t nu = units.size();
    std::vector<size_t> idx(k, 0);
    std::vector<long> psum(k + 1);
    psum[0] = zero;
    for (unsigned i = 0; i < k; ++i)
        psum[i + 1] = ring.class_add(psum[i], units[idx[i]]);
    for (;;) {
        visit(psum[k], idx[0]);
        size_t lvl = k;
        while (lvl > 0) {
            --lvl;
            if (++idx[lvl] < nu) break;
            idx[lvl] = 0;
            if (lvl == 0) return;
        }
        for (unsigned i = unsigned(lvl); i < k; ++i)
            psum[i + 1] = ring.class_add(psum[i], units[idx[i]]);
    }
}

CycInt coefs_to_cyc(long m, Vec coefs) {
    return CycInt::from_coeffs(m, std::move(coefs));
}

} // namespace

CycInt lhs_naive(const IdentityParams& p, const EvalBudgets& budgets,
                 IdentityContext* ctx_in) {
    validate(p);
    const ResidueRing& ring = *p.ring;
    const Int& N = ring.modulus().norm();
    if (ipow(N, p.k + p.s) > budgets.naive)
        throw BudgetExceeded("naive enumeration exceeds its budget");
    CtxHolder h(ring, ctx_in);
    IdentityContext& ctx = *h.ctx;

    const long m = p.chi->order_m();
    Vec coefs(size_t(m), Int(0));
    std::vector<long> zp = zeta_powers_by_unit(ring, *p.chi);
    const long rcls = ring.index_of_reduced(p.r.coords());
    const long Ncls = ring.class_count();

    for_each_unit_tuple(ring, p.k, [&](long sum_cls, size_t a1_pos) {
        if (!ring.is_unit_class(sum_cls)) return;
        size_t base = ctx.gcd_divisor_of_class(ring.class_sub(sum_cls, rcls));
        Int& coef = coefs[size_t(zp[a1_pos])];
        if (p.s == 0) {
            coef += p.f->value_by_index(base);
            return;
        }
        // full enumeration over the residue s-tuples
        std::vector<long> b(p.s, 0);
        for (;;) {
            size_t g = base;
            for (unsigned i = 0; i < p.s; ++i)
                g = ctx.divisor_gcd(g, ctx.gcd_divisor_of_class(b[i]));
            coef += p.f->value_by_index(g);
            size_t lvl = p.s;
            bool done = false;
            while (lvl > 0) {
                --lvl;
                if (++b[lvl] < Ncls) break;
                b[lvl] = 0;
                if (lvl == 0) done = true;
            }
            if (done) break;
        }
    });
    return coefs_to_cyc(m, std::move(coefs));
}

CycInt lhs_convolution(const IdentityParams& p, const EvalBudgets& budgets,
                       IdentityContext* ctx_in) {
    validate(p);
    const ResidueRing& ring = *p.ring;
    const Int& N = ring.modulus().norm();
    if (ipow(N, p.k) > budgets.naive)
        throw BudgetExceeded("tuple enumeration exceeds its budget");
    CtxHolder h(ring, ctx_in);
    IdentityContext& ctx = *h.ctx;

    const long m = p.chi->order_m();
    Vec coefs(size_t(m), Int(0));
    std::vector<long> zp = zeta_powers_by_unit(ring, *p.chi);
    const std::vector<Int>& B = ctx.b_table(*p.f, p.s);
    const long rcls = ring.index_of_reduced(p.r.coords());

    for_each_unit_tuple(ring, p.k, [&](long sum_cls, size_t a1_pos) {
        if (!ring.is_unit_class(sum_cls)) return;
        size_t g = ctx.gcd_divisor_of_class(ring.class_sub(sum_cls, rcls));
        coefs[size_t(zp[a1_pos])] += B[g];
    });
    return coefs_to_cyc(m, std::move(coefs));
}

CycInt lhs_dp(const IdentityParams& p, const EvalBudgets& budgets,
              IdentityContext* ctx_in) {
    validate(p);
    const ResidueRing& ring = *p.ring;
    const Int& N = ring.modulus().norm();
    if (N * N * p.k > budgets.dp)
        throw BudgetExceeded("dynamic program exceeds its budget");
    CtxHolder h(ring, ctx_in);
    IdentityContext& ctx = *h.ctx;

    const long m = p.chi->order_m();
    const size_t nu = ring.unit_classes().size();
    const long rcls = ring.index_of_reduced(p.r.coords());

    // sum_{t unit} sum_{a1 unit} C_{k-1}[t - a1] * B(gcd(t - r, n)) * chi(a1):
    // the inner sum over a1 is the cached per-(chi, k) table W[t][j]
    const std::vector<std::vector<Int>>& W = ctx.w_table(*p.chi, p.k);
    const std::vector<Int>& B = ctx.b_table(*p.f, p.s);
    const std::vector<size_t>& gidx = ctx.shift_gcds(rcls);

    Vec coefs(size_t(m), Int(0));
    for (size_t ti = 0; ti < nu; ++ti) {
        const Int& Bg = B[gidx[ti]];
        if (Bg == 0) continue;
        const Vec& row = W[ti];
        for (long j = 0; j < m; ++j)
            if (row[size_t(j)] != 0) coefs[size_t(j)] += row[size_t(j)] * Bg;
    }
    return coefs_to_cyc(m, std::move(coefs));
}

// ---------------------------------------------------------------------------
// Right-hand side
// ---------------------------------------------------------------------------

CycInt rhs_closed(const IdentityParams& p, IdentityContext* ctx_in) {
    validate(p);
    const ResidueRing& ring = *p.ring;
    const Ideal& n = ring.modulus();
    CtxHolder h(ring, ctx_in);
    IdentityContext& ctx = *h.ctx;

    const Ideal d = p.chi->conductor();
    const Ideal n0 = n_zero_of(n, d);
    const CycInt psi_r = primitive_eval(*p.chi, p.r);

    Int mu_pow = p.k == 1 ? Int(1) : ipow(moebius(d), p.k - 1);
    Int phi_head = euler_phi(
        ideal_divexact(ideal_pow(n0, p.k), ideal_pow(d, p.k - 1)));
    Int phik_tail = phi_k_formula(ideal_divexact(n, n0), p.k);

    const DivisorTable& ms = ctx.mu_star(*p.f);
    const Int& N = n.norm();
    Rat esum(0);
    for (size_t ei = 0; ei < ctx.divisors().size(); ++ei) {
        const Ideal& e = ctx.divisors()[ei];
        if (!ideal_divides(d, e)) continue;
        Rat term(ms.value_by_index(ei) * ipow(N / e.norm(), p.s));
        term /= Rat(euler_phi(e));
        esum += term;
    }
    Rat scalar = esum * Rat(mu_pow * phi_head * phik_tail);
    scalar.canonicalize();
    if (!rat_is_integer(scalar))
        throw NonIntegerScalar("closed form scalar is not integral");
    return psi_r.scaled(scalar.get_num());
}

CycInt rhs_corollary_norm(const IdentityParams& p, IdentityContext* ctx_in) {
    validate(p);
    if (p.f->name() != "norm")
        throw WrongF("the corollary form requires f = norm");
    const ResidueRing& ring = *p.ring;
    const Ideal& n = ring.modulus();
    CtxHolder h(ring, ctx_in);

    const Ideal d = p.chi->conductor();
    const Ideal n0 = n_zero_of(n, d);
    const CycInt psi_r = primitive_eval(*p.chi, p.r);

    Int mu_pow = p.k == 1 ? Int(1) : ipow(moebius(d), p.k - 1);
    Int phi_head = euler_phi(
        ideal_divexact(ideal_pow(n0, p.k), ideal_pow(d, p.k - 1)));
    Int phik_tail = phi_k_formula(ideal_divexact(n, n0), p.k);
    Int sig = sigma_s(ideal_divexact(n, d), p.s);
    return psi_r.scaled(mu_pow * phi_head * phik_tail * sig);
}

// ---------------------------------------------------------------------------
// Constrained tuple counts
// ---------------------------------------------------------------------------

Int nk_bruteforce(const ResidueRing& rn, const Ideal& e, const Ideal& g,
                  const Ideal& d, const AlgInt& u, unsigned k,
                  const AlgInt& r) {
    const Ideal& n = rn.modulus();
    if (!ideal_divides(e, n) || !ideal_divides(g, n) || !ideal_divides(d, n))
        throw NotADivisor("e, g and d must divide the modulus");
    if (!rn.is_unit(r)) throw NotCoprime("r must be a unit mod n");

    Vec u_res = detail::hnf_reduce(d.hnf(), u.coords());
    Vec r_res_e = detail::hnf_reduce(e.hnf(), r.coords());
    Vec zero_g(rn.field()->degree(), Int(0));
    zero_g = detail::hnf_reduce(g.hnf(), std::move(zero_g));

    const auto& units = rn.unit_classes();
    // first-coordinate filter
    std::vector<long> firsts;
    for (long cls : units)
        if (detail::hnf_reduce(d.hnf(), rn.rep_of(cls)) == u_res)
            firsts.push_back(cls);

    Int count(0);
    std::function<void(unsigned, long)> rec = [&](unsigned level, long sum) {
        if (level == k) {
            if (detail::hnf_reduce(e.hnf(), rn.rep_of(sum)) == r_res_e &&
                detail::hnf_reduce(g.hnf(), rn.rep_of(sum)) == zero_g)
                ++count;
            return;
        }
        for (long cls : units) rec(level + 1, rn.class_add(sum, cls));
    };
    const long zero = rn.index_of_reduced(Vec(rn.field()->degree(), Int(0)));
    for (long a1 : firsts) rec(1, rn.class_add(zero, a1));
    return count;
}

std::vector<Int> nk_counts(const ResidueRing& rn, const ResidueRing& rd,
                           const Ideal& e, const Ideal& g, unsigned k,
                           const AlgInt& r, IdentityContext* ctx_in) {
    const Ideal& n = rn.modulus();
    const Ideal& d = rd.modulus();
    if (!ideal_divides(e, n) || !ideal_divides(g, n) || !ideal_divides(d, n))
        throw NotADivisor("e, g and d must divide the modulus");
    if (!rn.is_unit(r)) throw NotCoprime("r must be a unit mod n");
    CtxHolder h(rn, ctx_in);

    const long N = rn.class_count();
    Vec r_res_e = detail::hnf_reduce(e.hnf(), r.coords());
    Vec zero_g(rn.field()->degree(), Int(0));
    zero_g = detail::hnf_reduce(g.hnf(), std::move(zero_g));
    // acceptance flag for the tuple sum
    std::vector<bool> ok(static_cast<size_t>(N));
    for (long t = 0; t < N; ++t)
        ok[size_t(t)] =
            detail::hnf_reduce(e.hnf(), rn.rep_of(t)) == r_res_e &&
            detail::hnf_reduce(g.hnf(), rn.rep_of(t)) == zero_g;

    const std::vector<Int>& C = h.ctx->tuple_counts(k - 1);
    std::vector<Int> counts(size_t(rd.class_count()), Int(0));
    for (long a1 : rn.unit_classes()) {
        long u_idx = rd.index_of_reduced(rn.rep_of(a1));
        Int acc(0);
        for (long t = 0; t < N; ++t) {
            if (C[size_t(t)] == 0) continue;
            if (ok[size_t(rn.class_add(a1, t))]) acc += C[size_t(t)];
        }
        counts[size_t(u_idx)] += acc;
    }
    return counts;
}

std::vector<Int> nk_recursion_rhs(const ResidueRing& rn, const ResidueRing& rd,
                                  const Ideal& e, const Ideal& g, unsigned k,
                                  const AlgInt& r, IdentityContext* ctx_in) {
    if (k < 2) throw Error("the recursion needs k >= 2");
    if (!ideal_gcd(e, g).is_unit_ideal())
        throw NotCoprime("e and g must be coprime");
    CtxHolder h(rn, ctx_in);

    const long D = rd.class_count();
    std::vector<Int> acc(size_t(D), Int(0));
    for (const Ideal& j : ideal_divisors(e)) {
        Int mu_j = moebius(j);
        if (mu_j == 0) continue;
        for (const Ideal& t : ideal_divisors(g)) {
            Int mu_t = moebius(t);
            if (mu_t == 0) continue;
            std::vector<Int> sub = nk_counts(rn, rd, j, t, k - 1, r, h.ctx);
            Int w = mu_j * mu_t;
            for (long i = 0; i < D; ++i) acc[size_t(i)] += w * sub[size_t(i)];
        }
    }
    Rat scale(Int(rn.unit_count()));
    scale /= Rat(euler_phi(e) * euler_phi(g));
    std::vector<Int> out(static_cast<size_t>(D));
    for (long i = 0; i < D; ++i) {
        Rat v = Rat(acc[size_t(i)]) * scale;
        v.canonicalize();
        if (!rat_is_integer(v))
            throw NonIntegerResult("tuple-count recursion is not integral");
        out[size_t(i)] = v.get_num();
    }
    return out;
}

CycInt nk_charsum_closed(const Character& chi, const Ideal& e, const Ideal& g,
                         unsigned k, const AlgInt& r) {
    const ResidueRing& ring = chi.ring();
    const Ideal& n = ring.modulus();
    if (k < 2) throw Error("the closed form needs k >= 2");
    if (!ideal_divides(e, n) || !ideal_divides(g, n))
        throw NotADivisor("e and g must divide the modulus");
    if (!ideal_gcd(e, g).is_unit_ideal())
        throw NotCoprime("e and g must be coprime");
    if (!ring.is_unit(r)) throw NotCoprime("r must be a unit mod n");

    const Ideal d = chi.conductor();
    if (!ideal_divides(d, e)) return CycInt::zero(chi.order_m());
    Int mu_d = moebius(d);
    if (mu_d == 0) return CycInt::zero(chi.order_m());

    Rat scalar(ipow(Int(ring.unit_count()), k) *
               (k == 1 ? Int(1) : ipow(mu_d, k - 1)));
    scalar /= Rat(euler_phi(e) * euler_phi(g));
    for (const auto& [p, ex] : ideal_factor(d)) {
        Rat den(ipow(p.ideal().norm() - 1, k - 1));
        scalar /= den;
    }
    for (const auto& [p, ex] : ideal_factor(e)) {
        if (ideal_divides(p.ideal(), d)) continue;
        scalar *= alternating_unit_sum(p.ideal().norm(), k);
    }
    for (const auto& [p, ex] : ideal_factor(g))
        scalar *= alternating_unit_sum(p.ideal().norm(), k - 1);
    scalar.canonicalize();
    if (!rat_is_integer(scalar))
        throw NonIntegerScalar("tuple-count closed form is not integral");
    return primitive_eval(chi, r).scaled(scalar.get_num());
}

// ---------------------------------------------------------------------------
// Verification driver
// ---------------------------------------------------------------------------

VerificationRecord verify(const IdentityParams& p,
                          const std::vector<Evaluator>& evaluators,
                          const EvalBudgets& budgets, IdentityContext* ctx_in) {
    validate(p);
    if (evaluators.empty()) throw Error("no evaluator selected");
    auto t0 = std::chrono::steady_clock::now();
    CtxHolder h(*p.ring, ctx_in);

    VerificationRecord rec;
    bool have = false;
    for (Evaluator ev : evaluators) {
        CycInt v;
        switch (ev) {
            case Evaluator::naive: v = lhs_naive(p, budgets, h.ctx); break;
            case Evaluator::convolution:
                v = lhs_convolution(p, budgets, h.ctx);
                break;
            case Evaluator::dp: v = lhs_dp(p, budgets, h.ctx); break;
        }
        if (!have) {
            rec.lhs = v.canonical();
            have = true;
        } else if (!cyc_eq(v, rec.lhs)) {
            throw InternalInconsistency(
                "left-hand evaluators disagree at a parameter point");
        }
        rec.evaluators.push_back(evaluator_name(ev));
    }
    rec.rhs = rhs_closed(p, h.ctx).canonical();
    rec.equal = cyc_eq(rec.lhs, rec.rhs);
    if (p.f->name() == "norm") {
        // two closed routes to the same side must agree exactly
        CycInt cor = rhs_corollary_norm(p, h.ctx);
        if (!cyc_eq(cor, rec.rhs))
            throw InternalInconsistency(
                "norm-function corollary disagrees with the closed form");
    }

    rec.field_name = p.ring->field()->name();
    rec.n = p.ring->modulus();
    rec.n_norm = p.ring->modulus().norm();
    rec.k = p.k;
    rec.s = p.s;
    rec.r_coords = p.r.coords();
    rec.char_index = p.chi->index();
    rec.conductor_norm = p.chi->conductor().norm();
    rec.f_name = p.f->name();
    rec.ms = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
    return rec;
}

} // namespace menon
