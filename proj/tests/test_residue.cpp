#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "menon/residue.hpp"

using namespace menon;

namespace {

std::shared_ptr<const NumberField> make_Qi() {
    return NumberField::make({Int(1), Int(0), Int(1)}, "Q(i)");
}

AlgInt gauss(const NumberField* K, long re, long im) {
    return AlgInt(K, Vec{Int(re), Int(im)});
}

// brute-force phi for integers, the degree-1 oracle
long int_phi(long n) {
    long c = 0;
    for (long a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

} // namespace

TEST_CASE("canonical reduction") {
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();

    ResidueRing r3(K, Ideal::from_int(K, 3));
    CHECK(r3.reduce(AlgInt::zero(K)) == AlgInt::zero(K));
    CHECK(r3.reduce(gauss(K, 4, 5)) == gauss(K, 1, 2));
    // idempotent, difference lies in the modulus
    AlgInt a = gauss(K, -7, 11);
    AlgInt red = r3.reduce(a);
    CHECK(r3.reduce(red) == red);
    CHECK(r3.modulus().contains(a - red));

    ResidueRing r1i(K, Ideal::principal(gauss(K, 1, 1)));
    CHECK(r1i.reduce(gauss(K, 0, 1)) == AlgInt::one(K));
}

TEST_CASE("unit detection") {
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();

    ResidueRing r2(K, Ideal::from_int(K, 2));
    CHECK(r2.is_unit(AlgInt::one(K)));
    CHECK_FALSE(r2.is_unit(gauss(K, 1, 1)));

    ResidueRing r3(K, Ideal::from_int(K, 3));
    CHECK(r3.is_unit(gauss(K, 1, 1)));
    CHECK_FALSE(r3.is_unit(AlgInt::zero(K)));
}

TEST_CASE("unit enumeration") {
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();

    // zero ring mod O_K: one class, which counts as the unit
    ResidueRing r1(K, Ideal::unit_ideal(K));
    CHECK(r1.class_count() == 1);
    CHECK(r1.unit_count() == 1);
    CHECK(r1.is_unit(AlgInt::zero(K)));

    ResidueRing r1i(K, Ideal::principal(gauss(K, 1, 1)));
    CHECK(r1i.class_count() == 2);
    CHECK(r1i.unit_count() == 1);
    CHECK(r1i.rep_of(r1i.unit_classes()[0]) == Vec{Int(1), Int(0)});

    ResidueRing r3(K, Ideal::from_int(K, 3));
    CHECK(r3.unit_count() == 8);

    // partition: classes = N(n), units = phi(n)
    ResidueRing r6(K, Ideal::from_int(K, 6));
    CHECK(r6.class_count() == 36);
    CHECK(r6.unit_count() == 16);
}

TEST_CASE("enumeration bound is a hard error") {
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();
    ResidueRing big(K, Ideal::from_int(K, 101), 5000);  // N = 10201 > 5000
    CHECK(big.size() == 10201);
    CHECK_THROWS_AS(big.unit_classes(), EnumerationBoundExceeded);
    CHECK_THROWS_AS(big.class_count(), EnumerationBoundExceeded);
    // reduce and is_unit still work
    CHECK(big.is_unit(AlgInt::one(K)));
}

TEST_CASE("unit basis structure") {
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();

    // (O_K/p)^* is cyclic for prime p: single generator of order 8 mod <3>
    ResidueRing r3(K, Ideal::from_int(K, 3));
    REQUIRE(r3.unit_basis().orders == std::vector<long>{8});
    CHECK(r3.exponent() == 8);

    // trivial group mod O_K
    ResidueRing r1(K, Ideal::unit_ideal(K));
    CHECK(r1.unit_basis().gens.empty());
    CHECK(r1.exponent() == 1);

    // mod <6>: order-16 group; invariant chain must multiply to 16 and the
    // whole group must be reachable (the constructor verifies the bijection)
    ResidueRing r6(K, Ideal::from_int(K, 6));
    Int prod(1);
    for (long o : r6.unit_basis().orders) prod *= o;
    CHECK(prod == 16);
    CHECK(r6.exponent() == 8);  // units mod <6> in Z[i] form Z/2 x Z/8
}

TEST_CASE("dlog round trip") {
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();
    for (long m : {3L, 5L, 6L, 8L}) {
        ResidueRing r(K, Ideal::from_int(K, m));
        const auto& basis = r.unit_basis();
        long one = r.index_of_reduced(AlgInt::one(K).coords());
        for (long cls : r.unit_classes()) {
            const auto& x = r.dlog(cls);
            long acc = one;
            for (size_t i = 0; i < basis.gens.size(); ++i)
                for (long e = 0; e < x[i]; ++e)
                    acc = r.class_mul(acc, basis.gens[i]);
            CHECK(acc == cls);
        }
    }
}

TEST_CASE("congruence counting basics") {
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();
    ResidueRing r3(K, Ideal::from_int(K, 3));

    // empty condition: a = O_K
    CHECK(r3.count_congruent(Ideal::unit_ideal(K), gauss(K, 2, 2)) == 8);
    // a = n: only the class itself, and only if a unit
    CHECK(r3.count_congruent(Ideal::from_int(K, 3), AlgInt::one(K)) == 1);

    ResidueRing r6(K, Ideal::from_int(K, 6));
    CHECK(r6.count_congruent(Ideal::from_int(K, 3), AlgInt::zero(K)) == 0);
    CHECK_THROWS_AS(r6.count_congruent(Ideal::from_int(K, 5), AlgInt::one(K)),
                    NotADivisor);
}

TEST_CASE("congruence counts match phi(n)/phi(a) exhaustively") {
    // counting lemma: #(units of n congruent to u mod a) is phi(n)/phi(a)
    // when gcd(u, a) = 1 and 0 otherwise; checked over every divisor and
    // every residue for a couple of moduli
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();
    for (long m : {4L, 6L, 9L}) {
        Ideal n = Ideal::from_int(K, m);
        ResidueRing rn(K, n);
        for (const Ideal& a : ideal_divisors(n)) {
            ResidueRing ra(K, a);
            Int expect_hit = Int(rn.unit_count()) / ra.unit_count();
            for (long cls = 0; cls < rn.class_count(); ++cls) {
                AlgInt u(K, rn.rep_of(cls));
                bool coprime = ideal_gcd_with_elements(a, {u.coords()})
                                   .is_unit_ideal();
                Int got = rn.count_congruent(a, u);
                CHECK(got == (coprime ? expect_hit : Int(0)));
            }
        }
    }
}

TEST_CASE("unit-count closed values in Z[i]") {
    auto Qi = make_Qi();
    const NumberField* K = Qi.get();
    auto phi_of = [&](long m) {
        ResidueRing r(K, Ideal::from_int(K, m));
        return r.unit_count();
    };
    CHECK(phi_of(2) == 2);   // 4 * (1 - 1/2)
    CHECK(phi_of(3) == 8);   // 9 * (1 - 1/9)
    CHECK(phi_of(5) == 16);  // split: (5-1)^2
    CHECK(phi_of(7) == 48);  // inert: 49 - 1
}

TEST_CASE("degree-1 ring agrees with integers mod n") {
    auto Q = NumberField::make({Int(0), Int(1)}, "Q");
    const NumberField* K = Q.get();
    for (long n = 2; n <= 40; ++n) {
        ResidueRing r(K, Ideal::from_int(K, n));
        CHECK(r.class_count() == n);
        CHECK(r.unit_count() == int_phi(n));
        CHECK(r.class_add(n - 1, 2 % n) == (n + 1) % n);
        CHECK(r.class_mul(2 % n, n - 1) == (2 * (n - 1)) % n);
    }
}
