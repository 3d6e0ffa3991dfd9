#include "menon/numfield.hpp"

#include <sstream>

namespace menon {

Int det_bareiss(Mat a) {
    const size_t n = a.size();
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

static size_t poly_degree(const Vec& f) {
    size_t d = f.size();
    while (d > 0 && f[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

Int resultant(const Vec& f, const Vec& g) {
    const size_t m = poly_degree(f), n = poly_degree(g);
    if (n == 0) return ipow(g.empty() ? Int(0) : g[0], m);
    if (m == 0) {
        Int r = ipow(f.empty() ? Int(0) : f[0], n);
        // Res(f,g) = (-1)^{mn} Res(g,f); mn = 0 here
        return r;
    }
    const size_t N = m + n;
    Mat s(N, Vec(N, Int(0)));
    // n rows of f coefficients (descending), then m rows of g coefficients
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j <= m; ++j)
            s[i][i + j] = f[m - j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= n; ++j)
            s[n + i][i + j] = g[n - j];
    return det_bareiss(std::move(s));
}

NumberField::NumberField(int deg, Vec f, Int disc, std::string name)
    : deg_(deg), f_(std::move(f)), disc_(std::move(disc)),
      name_(std::move(name)), cache_(std::make_unique<detail::FieldCache>()) {}

NumberField::~NumberField() = default;

std::shared_ptr<const NumberField> NumberField::make(Vec min_poly,
                                                     std::string name) {
    size_t d = poly_degree(min_poly);
    if (d == 0) throw DegreeZero("minimal polynomial must have degree >= 1");
    min_poly.resize(d + 1);
    if (min_poly[d] != 1) throw NotMonic("minimal polynomial must be monic");

    Int disc;
    if (d == 1) {
        disc = 1;
    } else {
        Vec fprime(d);
        for (size_t i = 1; i <= d; ++i) fprime[i - 1] = Int(long(i)) * min_poly[i];
        Int res = resultant(min_poly, fprime);
        if (res == 0)
            throw NotSquarefree("minimal polynomial has a repeated factor");
        // monic leading coefficient, so disc = (-1)^{d(d-1)/2} Res(f, f')
        disc = ((d * (d - 1) / 2) % 2 == 0) ? res : Int(-res);
    }
    return std::shared_ptr<const NumberField>(
        new NumberField(int(d), std::move(min_poly), std::move(disc),
                        std::move(name)));
}

AlgInt::AlgInt(const NumberField* K, Vec coords) : K_(K), c_(std::move(coords)) {
    if (!K_) throw Error("element requires a field");
    if (c_.size() != size_t(K_->degree()))
        throw Error("coordinate vector length must equal the field degree");
}

AlgInt AlgInt::zero(const NumberField* K) {
    return AlgInt(K, Vec(K->degree(), Int(0)));
}

AlgInt AlgInt::one(const NumberField* K) { return from_int(K, Int(1)); }

AlgInt AlgInt::from_int(const NumberField* K, const Int& n) {
    Vec c(K->degree(), Int(0));
    c[0] = n;
    return AlgInt(K, std::move(c));
}

AlgInt AlgInt::theta(const NumberField* K) {
    Vec c(K->degree(), Int(0));
    if (K->degree() == 1) {
        // theta = -constant term in a degree-1 field
        c[0] = -K->min_poly()[0];
    } else {
        c[1] = 1;
    }
    return AlgInt(K, std::move(c));
}

bool AlgInt::is_zero() const {
    for (const Int& x : c_)
        if (x != 0) return false;
    return true;
}

static void check_same_field(const AlgInt& a, const AlgInt& b) {
    if (a.field() != b.field())
        throw FieldMismatch("elements belong to different fields");
}

AlgInt AlgInt::operator-() const {
    Vec c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return AlgInt(K_, std::move(c));
}

AlgInt operator+(const AlgInt& a, const AlgInt& b) {
    check_same_field(a, b);
    Vec c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
    return AlgInt(a.K_, std::move(c));
}

AlgInt operator-(const AlgInt& a, const AlgInt& b) {
    check_same_field(a, b);
    Vec c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] - b.c_[i];
    return AlgInt(a.K_, std::move(c));
}

AlgInt operator*(const AlgInt& a, const AlgInt& b) {
    check_same_field(a, b);
    const size_t d = a.c_.size();
    const Vec& f = a.K_->min_poly();
    // schoolbook product, then kill powers >= d using x^d = -(f - x^d)
    Vec prod(2 * d - 1, Int(0));
    for (size_t i = 0; i < d; ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j)
            if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    for (size_t i = 2 * d - 2; i >= d; --i) {
        if (prod[i] == 0) continue;
        Int coef = prod[i];
        prod[i] = 0;
        for (size_t j = 0; j < d; ++j) prod[i - d + j] -= coef * f[j];
    }
    prod.resize(d);
    return AlgInt(a.K_, std::move(prod));
}

bool operator==(const AlgInt& a, const AlgInt& b) {
    return a.K_ == b.K_ && a.c_ == b.c_;
}

Int AlgInt::norm() const {
    const size_t d = c_.size();
    // columns: coords of this * theta^j
    Mat m(d, Vec(d));
    AlgInt pw = *this;
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < d; ++i) m[i][j] = pw.c_[i];
        if (j + 1 < d) pw = pw * AlgInt::theta(K_);
    }
    Int det = det_bareiss(std::move(m));
    return det < 0 ? Int(-det) : det;
}

std::string AlgInt::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

} // namespace menon
