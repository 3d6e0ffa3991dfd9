#include "menon/arith.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace menon {

Int moebius(const Ideal& a) {
    int t = 0;
    for (const auto& [p, e] : ideal_factor(a)) {
        if (e >= 2) return Int(0);
        ++t;
    }
    return t % 2 == 0 ? Int(1) : Int(-1);
}

Int euler_phi(const Ideal& a) {
    Int phi(1);
    for (const auto& [p, e] : ideal_factor(a)) {
        const Int& np = p.ideal().norm();
        phi *= ipow(np, unsigned(e - 1)) * (np - 1);
    }
    return phi;
}

Int sigma_s(const Ideal& a, unsigned s) {
    Int acc(1);
    for (const auto& [p, e] : ideal_factor(a)) {
        Int nps = ipow(p.ideal().norm(), s);
        Int geom(1), term(1);
        for (int j = 1; j <= e; ++j) {
            term *= nps;
            geom += term;
        }
        acc *= geom;
    }
    return acc;
}

Rat alternating_unit_sum(const Int& q, unsigned terms) {
    Rat acc(0);
    Rat pow(1);
    Rat base = Rat(-1) / Rat(q - 1);
    base.canonicalize();
    for (unsigned j = 0; j < terms; ++j) {
        acc += pow;
        pow *= base;
    }
    return acc;
}

Int phi_k_formula(const Ideal& n, unsigned k) {
    if (k < 1) throw Error("k must be positive");
    Rat acc(ipow(euler_phi(n), k));
    for (const auto& [p, e] : ideal_factor(n))
        acc *= alternating_unit_sum(p.ideal().norm(), k);
    if (!rat_is_integer(acc))
        throw NonIntegerResult("phi_k product formula is not integral");
    Int v = acc.get_num();
    if (v < 0) throw NonIntegerResult("phi_k product formula is negative");
    return v;
}

// indicator over classes of n: is the class a unit modulo m?
static std::vector<bool> unit_mod_m_flags(const ResidueRing& ring,
                                          const Ideal& m) {
    if (!ideal_divides(m, ring.modulus()))
        throw NotADivisor("m must divide the modulus");
    const long N = ring.class_count();
    std::vector<bool> flags(static_cast<size_t>(N));
    for (long x = 0; x < N; ++x)
        flags[size_t(x)] =
            ideal_gcd_with_elements(m, {ring.rep_of(x)}).is_unit_ideal();
    return flags;
}

// C_j[t] = number of unit j-tuples of O_K/n summing to class t
std::vector<Int> unit_sum_counts(const ResidueRing& ring, unsigned j) {
    const long N = ring.class_count();
    std::vector<Int> cur(size_t(N), Int(0));
    cur[size_t(ring.index_of_reduced(Vec(ring.field()->degree(), Int(0))))] = 1;
    const auto& units = ring.unit_classes();
    for (unsigned step = 0; step < j; ++step) {
        std::vector<Int> next(size_t(N), Int(0));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (N >= 256)
#endif
        for (long t = 0; t < N; ++t) {
            Int acc(0);
            for (long a : units) acc += cur[size_t(ring.class_sub(t, a))];
            next[size_t(t)] = std::move(acc);
        }
        cur = std::move(next);
    }
    return cur;
}

Int phi_k_two_arg(const ResidueRing& ring, const Ideal& m, unsigned k) {
    if (k < 1) throw Error("k must be positive");
    std::vector<bool> ok = unit_mod_m_flags(ring, m);
    const auto& units = ring.unit_classes();
    if (k == 1) {
        Int count(0);
        for (long a : units)
            if (ok[size_t(a)]) ++count;
        return count;
    }
    if (k == 2) {
        Int count(0);
        for (long a : units) {
            for (long b : units)
                if (ok[size_t(ring.class_add(a, b))]) ++count;
        }
        return count;
    }
    std::vector<Int> counts = unit_sum_counts(ring, k);
    Int total(0);
    for (long t = 0; t < ring.class_count(); ++t)
        if (ok[size_t(t)]) total += counts[size_t(t)];
    return total;
}

Int phi_k_bruteforce(const ResidueRing& ring, unsigned k) {
    return phi_k_two_arg(ring, ring.modulus(), k);
}

Int phi_k_recursion_rhs(const ResidueRing& ring, const Ideal& m, unsigned k) {
    if (k < 2) throw Error("the recursion needs k >= 2");
    if (!ideal_divides(m, ring.modulus()))
        throw NotADivisor("m must divide the modulus");
    Rat acc(0);
    for (const Ideal& d : ideal_divisors(m)) {
        Int mu = moebius(d);
        if (mu == 0) continue;
        Rat term(mu * phi_k_two_arg(ring, d, k - 1));
        term /= Rat(euler_phi(d));
        acc += term;
    }
    acc *= Rat(Int(ring.unit_count()));
    acc.canonicalize();
    if (!rat_is_integer(acc))
        throw NonIntegerResult("recursion right-hand side is not integral");
    return acc.get_num();
}

Ideal n_zero_of(const Ideal& n, const Ideal& d) {
    if (!ideal_divides(d, n)) throw NotADivisor("d must divide n");
    const NumberField* K = n.field();
    Ideal n0 = Ideal::unit_ideal(K);
    Ideal rad_n0 = Ideal::unit_ideal(K);
    for (const auto& [p, e] : ideal_factor(n)) {
        if (!ideal_divides(p.ideal(), d)) continue;
        n0 = ideal_mul(n0, ideal_pow(p.ideal(), unsigned(e)));
        rad_n0 = ideal_mul(rad_n0, p.ideal());
    }
    Ideal rad_d = Ideal::unit_ideal(K);
    for (const auto& [p, e] : ideal_factor(d)) rad_d = ideal_mul(rad_d, p.ideal());
    if (!(rad_n0 == rad_d))
        throw Error("internal: conductor part has wrong radical");
    if (!ideal_gcd(n0, ideal_divexact(n, n0)).is_unit_ideal())
        throw Error("internal: conductor part is not coprime to the rest");
    return n0;
}

// ---------------------------------------------------------------------------
// Divisor tables
// ---------------------------------------------------------------------------

DivisorTable::DivisorTable(Ideal modulus, std::vector<Int> values,
                           std::string name)
    : n_(std::move(modulus)), divisors_(ideal_divisors(n_)),
      values_(std::move(values)), name_(std::move(name)) {
    if (values_.size() != divisors_.size())
        throw Error("value table does not cover the divisors");
    for (size_t i = 0; i < divisors_.size(); ++i)
        index_.emplace(divisors_[i].key(), i);
}

size_t DivisorTable::index_of(const Ideal& d) const {
    auto it = index_.find(d.key());
    if (it == index_.end())
        throw NotADivisor("ideal is not a divisor of the modulus");
    return it->second;
}

DivisorTable DivisorTable::tabulate(const Ideal& n, const std::string& name) {
    std::vector<Ideal> divs = ideal_divisors(n);
    std::vector<Int> vals;
    vals.reserve(divs.size());
    auto starts_with = [&](const char* p) { return name.rfind(p, 0) == 0; };
    for (const Ideal& d : divs) {
        if (name == "norm") {
            vals.push_back(d.norm());
        } else if (name == "one") {
            vals.push_back(Int(1));
        } else if (name == "moebius") {
            vals.push_back(moebius(d));
        } else if (name == "phi") {
            vals.push_back(euler_phi(d));
        } else if (starts_with("norm^")) {
            vals.push_back(ipow(d.norm(), std::stoul(name.substr(5))));
        } else if (starts_with("sigma_")) {
            vals.push_back(sigma_s(d, unsigned(std::stoul(name.substr(6)))));
        } else {
            throw Error("unknown arithmetical function: " + name);
        }
    }
    return DivisorTable(n, std::move(vals), name);
}

DivisorTable DivisorTable::from_entries(
    const Ideal& n, const std::vector<std::pair<Ideal, Int>>& entries,
    std::string name) {
    std::vector<Ideal> divs = ideal_divisors(n);
    std::map<Vec, size_t> idx;
    for (size_t i = 0; i < divs.size(); ++i) idx.emplace(divs[i].key(), i);
    std::vector<Int> vals(divs.size());
    std::vector<bool> seen(divs.size(), false);
    for (const auto& [d, v] : entries) {
        auto it = idx.find(d.key());
        if (it == idx.end())
            throw NotADivisor("table entry is not a divisor of the modulus");
        if (seen[it->second]) throw Error("duplicate table entry");
        seen[it->second] = true;
        vals[it->second] = v;
    }
    for (bool s : seen)
        if (!s) throw Error("table does not cover every divisor");
    return DivisorTable(n, std::move(vals), std::move(name));
}

DivisorTable dirichlet_convolve(const DivisorTable& f, const DivisorTable& g) {
    if (!(f.modulus() == g.modulus()))
        throw Error("convolution requires a common modulus");
    const auto& divs = f.divisors();
    std::map<Vec, size_t> idx;
    for (size_t i = 0; i < divs.size(); ++i) idx.emplace(divs[i].key(), i);
    std::vector<Int> vals(divs.size(), Int(0));
    for (size_t i = 0; i < divs.size(); ++i) {
        for (size_t j = 0; j < divs.size(); ++j) {
            if (divs[i].norm() * divs[j].norm() > f.modulus().norm()) continue;
            auto it = idx.find(ideal_mul(divs[i], divs[j]).key());
            if (it == idx.end()) continue;
            vals[it->second] += f.value_by_index(i) * g.value_by_index(j);
        }
    }
    return DivisorTable(f.modulus(), std::move(vals),
                        "(" + f.name() + "*" + g.name() + ")");
}

} // namespace menon
