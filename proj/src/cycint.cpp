#include "menon/cycint.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "menon/errors.hpp"

namespace menon {

namespace {

size_t pdeg(const Vec& f) {
    size_t d = f.size();
    while (d > 0 && f[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

// exact division by a monic divisor; remainder must vanish
Vec poly_divexact_monic(const Vec& f, const Vec& g) {
    size_t df = pdeg(f), dg = pdeg(g);
    if (df < dg) throw Error("internal: cyclotomic division underflow");
    Vec rem = f;
    Vec quot(df - dg + 1, Int(0));
    for (size_t i = df + 1; i-- > dg;) {
        Int c = rem[i];
        if (c == 0) continue;
        quot[i - dg] = c;
        for (size_t j = 0; j <= dg; ++j) rem[i - dg + j] -= c * g[j];
    }
    for (const Int& c : rem)
        if (c != 0) throw Error("internal: cyclotomic division not exact");
    return quot;
}

// remainder of f modulo a monic g
Vec poly_mod_monic(Vec f, const Vec& g) {
    size_t dg = pdeg(g);
    for (size_t i = f.size(); i-- > dg;) {
        Int c = f[i];
        if (c == 0) continue;
        f[i] = 0;
        for (size_t j = 0; j < dg; ++j) f[i - dg + j] -= c * g[j];
    }
    f.resize(dg == 0 ? 1 : dg);
    if (f.empty()) f.push_back(Int(0));
    return f;
}

const Vec& cyclotomic_locked(long m, std::map<long, Vec>& cache) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    if (m == 1) {
        return cache.emplace(1, Vec{Int(-1), Int(1)}).first->second;
    }
    Vec xm(size_t(m) + 1, Int(0));
    xm[0] = -1;
    xm[size_t(m)] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d) continue;
        xm = poly_divexact_monic(xm, cyclotomic_locked(d, cache));
    }
    return cache.emplace(m, std::move(xm)).first->second;
}

} // namespace

const Vec& cyclotomic_poly(long m) {
    static std::mutex mu;
    static std::map<long, Vec> cache;
    std::lock_guard<std::mutex> lock(mu);
    return cyclotomic_locked(m, cache);
}

CycInt CycInt::zero(long m) { return CycInt(m, Vec(size_t(m), Int(0))); }

CycInt CycInt::integer(Int v) {
    Vec c{std::move(v)};
    return CycInt(1, std::move(c));
}

CycInt CycInt::zeta_pow(long m, long j) {
    Vec c(size_t(m), Int(0));
    j %= m;
    if (j < 0) j += m;
    c[size_t(j)] = 1;
    return CycInt(m, std::move(c));
}

CycInt CycInt::from_coeffs(long m, Vec coeffs) {
    if (m < 1 || long(coeffs.size()) != m)
        throw Error("coefficient vector must have length m");
    return CycInt(m, std::move(coeffs));
}

CycInt CycInt::lifted(long M) const {
    if (M == m_ && long(c_.size()) == m_) return *this;
    if (M % m_ != 0) throw Error("internal: lift target is not a multiple");
    // canonical values carry fewer than m coefficients; always emit length M
    Vec c(size_t(M), Int(0));
    long step = M / m_;
    for (size_t j = 0; j < c_.size(); ++j) c[size_t(long(j) * step)] = c_[j];
    return CycInt(M, std::move(c));
}

CycInt CycInt::operator-() const {
    Vec c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return CycInt(m_, std::move(c));
}

CycInt operator+(const CycInt& a, const CycInt& b) {
    long M = std::lcm(a.m_, b.m_);
    CycInt x = a.lifted(M), y = b.lifted(M);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

CycInt operator-(const CycInt& a, const CycInt& b) {
    long M = std::lcm(a.m_, b.m_);
    CycInt x = a.lifted(M), y = b.lifted(M);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
    long M = std::lcm(a.m_, b.m_);
    CycInt x = a.lifted(M), y = b.lifted(M);
    Vec c(size_t(M), Int(0));
    for (long i = 0; i < M; ++i) {
        if (x.c_[size_t(i)] == 0) continue;
        for (long j = 0; j < M; ++j) {
            if (y.c_[size_t(j)] == 0) continue;
            c[size_t((i + j) % M)] += x.c_[size_t(i)] * y.c_[size_t(j)];
        }
    }
    return CycInt(M, std::move(c));
}

CycInt CycInt::scaled(const Int& k) const {
    Vec c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * k;
    return CycInt(m_, std::move(c));
}

bool CycInt::is_zero() const {
    Vec r = poly_mod_monic(c_, cyclotomic_poly(m_));
    for (const Int& x : r)
        if (x != 0) return false;
    return true;
}

bool cyc_eq(const CycInt& a, const CycInt& b) { return (a - b).is_zero(); }

std::optional<Int> CycInt::as_integer() const {
    Vec r = poly_mod_monic(c_, cyclotomic_poly(m_));
    for (size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    return r[0];
}

CycInt CycInt::canonical() const {
    Vec r = poly_mod_monic(c_, cyclotomic_poly(m_));
    size_t len = r.size();
    while (len > 1 && r[len - 1] == 0) --len;
    r.resize(len);
    return CycInt(m_, std::move(r));
}

std::string CycInt::str() const {
    CycInt c = canonical();
    std::ostringstream os;
    bool printed = false;
    for (size_t j = 0; j < c.c_.size(); ++j) {
        if (c.c_[j] == 0) continue;
        if (printed) os << " + ";
        os << c.c_[j];
        if (j > 0) os << "*z" << m_ << "^" << j;
        printed = true;
    }
    if (!printed) os << "0";
    return os.str();
}

} // namespace menon
