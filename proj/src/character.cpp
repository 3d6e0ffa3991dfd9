#include "menon/character.hpp"

#include <map>

namespace menon {

Character::Character(const ResidueRing* ring, std::vector<long> exps,
                     long index, Ideal conductor)
    : ring_(ring), exps_(std::move(exps)), index_(index),
      m_(ring->exponent()), conductor_(std::move(conductor)) {
    const auto& orders = ring_->unit_basis().orders;
    if (exps_.size() != orders.size())
        throw Error("exponent vector does not match the unit basis");
    for (size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] < 0 || exps_[i] >= orders[i])
            throw Error("character exponent out of range");
}

bool Character::is_trivial() const {
    for (long e : exps_)
        if (e) return false;
    return true;
}

std::optional<long> Character::zeta_power(long cls) const {
    if (!ring_->is_unit_class(cls)) return std::nullopt;
    const auto& x = ring_->dlog(cls);
    const auto& orders = ring_->unit_basis().orders;
    long acc = 0;
    for (size_t i = 0; i < exps_.size(); ++i) {
        long term = (exps_[i] * x[i]) % orders[i];
        acc = (acc + term * (m_ / orders[i])) % m_;
    }
    return acc;
}

CycInt Character::eval_class(long cls) const {
    auto p = zeta_power(cls);
    if (!p) return CycInt::zero(m_);
    return CycInt::zeta_pow(m_, *p);
}

CycInt Character::eval(const AlgInt& a) const {
    return eval_class(ring_->index_of_reduced(a.coords()));
}

bool is_induced_modulus(const ResidueRing& ring, const std::vector<long>& exps,
                        const Ideal& d) {
    // group unit classes by residue mod d; the character value must be
    // constant on each group
    Character chi(&ring, exps, -1, Ideal::unit_ideal(ring.field()));
    std::map<Vec, long> value_by_residue;
    for (long cls : ring.unit_classes()) {
        Vec res = detail::hnf_reduce(d.hnf(), ring.rep_of(cls));
        long v = *chi.zeta_power(cls);
        auto [it, fresh] = value_by_residue.emplace(std::move(res), v);
        if (!fresh && it->second != v) return false;
    }
    return true;
}

Ideal conductor_of(const ResidueRing& ring, const std::vector<long>& exps) {
    std::vector<Ideal> induced;
    for (const Ideal& d : ideal_divisors(ring.modulus()))
        if (is_induced_modulus(ring, exps, d)) induced.push_back(d);
    if (induced.empty()) throw Error("internal: modulus itself not induced");
    const Ideal& cond = induced.front();  // divisors are sorted by norm
    for (const Ideal& d : induced)
        if (!ideal_divides(cond, d))
            throw Error("internal: induced moduli have no unique minimum");
    return cond;
}

std::vector<Character> all_characters(const ResidueRing& ring) {
    const auto& orders = ring.unit_basis().orders;
    const size_t t = orders.size();
    std::vector<Character> out;
    std::vector<long> exps(t, 0);
    long index = 0;
    for (;;) {
        out.emplace_back(&ring, exps, index,
                         conductor_of(ring, exps));
        ++index;
        size_t k = t;
        bool done = (t == 0);
        while (k > 0) {
            --k;
            if (++exps[k] < orders[k]) break;
            exps[k] = 0;
            if (k == 0) done = true;
        }
        if (done) break;
    }
    if (long(out.size()) != ring.unit_count())
        throw Error("internal: character count mismatch");
    return out;
}

CycInt primitive_eval(const Character& chi, const AlgInt& u) {
    const ResidueRing& ring = chi.ring();
    const Ideal& d = chi.conductor();
    if (!ideal_gcd_with_elements(d, {u.coords()}).is_unit_ideal())
        throw NotUnitModConductor("u is not a unit modulo the conductor");
    Vec target = detail::hnf_reduce(d.hnf(), u.coords());
    for (long cls : ring.unit_classes()) {
        if (detail::hnf_reduce(d.hnf(), ring.rep_of(cls)) == target)
            return chi.eval_class(cls);
    }
    throw Error("internal: no unit lift found along the conductor");
}

CycInt char_sum_over_congruence(const Character& psi, const AlgInt& r,
                                const Ideal& d) {
    const ResidueRing& ring = psi.ring();
    if (!psi.is_primitive())
        throw NotPrimitive("character is not primitive modulo its modulus");
    if (!ring.is_unit(r)) throw NotCoprime("r must be a unit mod n");
    if (!ideal_divides(d, ring.modulus()))
        throw NotADivisor("d must divide the modulus");
    Vec target = detail::hnf_reduce(d.hnf(), r.coords());
    Vec coefs(size_t(psi.order_m()), Int(0));
    for (long cls : ring.unit_classes()) {
        if (detail::hnf_reduce(d.hnf(), ring.rep_of(cls)) == target)
            coefs[size_t(*psi.zeta_power(cls))] += 1;
    }
    return CycInt::from_coeffs(psi.order_m(), std::move(coefs));
}

} // namespace menon
