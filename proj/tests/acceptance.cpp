// Acceptance suite. One criterion per --criterion value, each printing a
// single PASS/FAIL line; exit status 0 iff every requested criterion passed.
// Everything is exact: integer, rational and cyclotomic arithmetic with no
// tolerances anywhere.
//
//   1  product formula for the k-dimensional unit-tuple count vs direct
//      counting, every ideal of norm <= 500, k = 1..3, five fields
//   2  the character-twisted gcd-sum identity: dp evaluator vs closed form
//      over the full N <= 100 grid, plus pairwise agreement of all three
//      evaluators on the N <= 30 subgrid
//   3  classical anchors over Q against a pure-integer oracle
//   4  hand-derived golden values in Z[i]
//   5  counting lemmas, the character-sum lemma, the two-argument recursion,
//      and the constrained tuple-count recursion and closed form
//   6  corollary consistency for f = norm
//   7  infrastructure property tests, >= 1000 random cases each
//
// Criteria 1, 2 and 5 walk many moduli; they parallelize over moduli with
// one worker context per modulus.

#include <cstring>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "menon/sweep.hpp"

using namespace menon;

namespace {

std::string g_data_dir = "data";

std::vector<FieldEntry> corpus() {
    return load_field_corpus(g_data_dir + "/fields.json");
}

struct Failure {
    std::string what;
};

// collects at most a handful of failure descriptions across threads
struct FailLog {
    std::vector<std::string> lines;
    long count = 0;
    void add(const std::string& line) {
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            ++count;
            if (lines.size() < 5) lines.push_back(line);
        }
    }
};

bool report(int crit, const std::string& what, const FailLog& log,
            const std::string& stats) {
    if (log.count == 0) {
        std::cout << "[PASS] criterion " << crit << ": " << what << " ("
                  << stats << ")\n";
        return true;
    }
    std::cout << "[FAIL] criterion " << crit << ": " << what << " ("
              << log.count << " failures; " << stats << ")\n";
    for (const auto& line : log.lines) std::cout << "       " << line << "\n";
    return false;
}

// ---------------------------------------------------------------------------
// criterion 1
// ---------------------------------------------------------------------------

bool criterion1() {
    FailLog log;
    long checked = 0;
    for (const FieldEntry& fe : corpus()) {
        const NumberField* K = fe.field.get();
        std::vector<Ideal> moduli = enumerate_ideals(K, 500);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long i = 0; i < long(moduli.size()); ++i) {
            const Ideal& n = moduli[size_t(i)];
            try {
                ResidueRing ring(K, n);
                for (unsigned k = 1; k <= 3; ++k) {
                    Int formula = phi_k_formula(n, k);
                    Int counted = phi_k_bruteforce(ring, k);
                    if (formula != counted)
                        log.add(fe.name + " n=" + n.str() + " k=" +
                                std::to_string(k) + ": formula " +
                                formula.get_str() + " != count " +
                                counted.get_str());
                }
            } catch (const std::exception& e) {
                log.add(fe.name + " n=" + n.str() + ": " + e.what());
            }
#ifdef _OPENMP
#pragma omp atomic
#endif
            checked += 3;
        }
    }
    return report(1, "product formula = direct count, N(n) <= 500, k = 1..3",
                  log, std::to_string(checked) + " points");
}

// ---------------------------------------------------------------------------
// criterion 2
// ---------------------------------------------------------------------------

bool criterion2() {
    SweepConfig cfg;
    cfg.field_path = g_data_dir + "/fields.json";
    cfg.max_norm = 100;
    cfg.ks = {1, 2, 3};
    cfg.ss = {0, 1, 2};
    cfg.chars = "all";
    cfg.r_sel = "first:3";
    cfg.fs = {"norm", "one", "sigma_1"};
    cfg.evaluators = {Evaluator::dp};

    SweepResult full = run_sweep(cfg);

    cfg.max_norm = 30;
    cfg.evaluators = {Evaluator::naive, Evaluator::convolution, Evaluator::dp};
    SweepResult sub = run_sweep(cfg);

    long pairwise = 0;
    for (const auto& rec : sub.records)
        if (rec.evaluators.size() >= 2) ++pairwise;

    FailLog log;
    if (full.summary.failed || full.summary.errored)
        log.add("full grid: " + std::to_string(full.summary.failed) +
                " failed, " + std::to_string(full.summary.errored) +
                " errored");
    if (sub.summary.failed || sub.summary.errored)
        log.add("N<=30 subgrid: " + std::to_string(sub.summary.failed) +
                " failed, " + std::to_string(sub.summary.errored) +
                " errored");
    for (const auto& err : full.errors) log.add("full: " + err);
    for (const auto& err : sub.errors) log.add("sub: " + err);

    std::ostringstream stats;
    stats << full.summary.total << " dp points, " << sub.summary.total
          << " subgrid points of which " << pairwise
          << " ran two or more evaluators";
    return report(2,
                  "identity sweep N(n) <= 100, all characters, k = 1..3, "
                  "s = 0..2, 3 r values, f in {norm, one, sigma_1}",
                  log, stats.str());
}

// ---------------------------------------------------------------------------
// criterion 3: classical anchors over Q with a pure-integer oracle
// ---------------------------------------------------------------------------

// sum over unit k-tuples with unit sum and s-tuples of gcd(sum - 1, b.., n)
long classical_oracle(long n, unsigned k, unsigned s) {
    std::vector<long> units;
    for (long a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) units.push_back(a);
    long total = 0;
    std::vector<size_t> idx(k, 0);
    for (;;) {
        long sum = 0;
        for (unsigned i = 0; i < k; ++i) sum += units[idx[i]];
        if (std::gcd(sum % n, n) == 1) {
            long base = std::gcd((sum - 1) % n, n);
            if (s == 0) {
                total += base;
            } else {
                std::vector<long> b(s, 0);
                for (;;) {
                    long g = base;
                    for (unsigned i = 0; i < s; ++i) g = std::gcd(g, b[i] == 0 ? n : std::gcd(b[i], n));
                    total += g;
                    size_t lvl = s;
                    bool done = false;
                    while (lvl > 0) {
                        --lvl;
                        if (++b[lvl] < n) break;
                        b[lvl] = 0;
                        if (lvl == 0) done = true;
                    }
                    if (done) break;
                }
            }
        }
        size_t lvl = k;
        bool done = false;
        while (lvl > 0) {
            --lvl;
            if (++idx[lvl] < units.size()) break;
            idx[lvl] = 0;
            if (lvl == 0) done = true;
        }
        if (done) break;
    }
    return total;
}

long int_phi(long n) {
    long c = 0;
    for (long a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

long int_phi_k(long n, unsigned k) {
    std::vector<long> units;
    for (long a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) units.push_back(a);
    long c = 0;
    std::vector<size_t> idx(k, 0);
    for (;;) {
        long sum = 0;
        for (unsigned i = 0; i < k; ++i) sum += units[idx[i]];
        if (std::gcd(sum % n, n) == 1) ++c;
        size_t lvl = k;
        bool done = false;
        while (lvl > 0) {
            --lvl;
            if (++idx[lvl] < units.size()) break;
            idx[lvl] = 0;
            if (lvl == 0) done = true;
        }
        if (done) break;
    }
    return c;
}

long int_sigma(long n, unsigned s) {
    long acc = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d) continue;
        long p = 1;
        for (unsigned i = 0; i < s; ++i) p *= d;
        acc += p;
    }
    return acc;
}

bool criterion3() {
    FailLog log;
    auto all = corpus();
    const FieldEntry* fq = nullptr;
    for (const auto& fe : all)
        if (fe.name == "Q") fq = &fe;
    const NumberField* K = fq->field.get();

    long checked = 0;
    EvalBudgets budgets;
    budgets.naive = Int("100000000000");

    auto check_point = [&](long n, unsigned k, unsigned s) {
        Ideal ni = Ideal::from_int(K, n);
        ResidueRing ring(K, ni);
        auto chars = all_characters(ring);
        DivisorTable norm = DivisorTable::tabulate(ni, "norm");
        IdentityContext ctx(ring);
        IdentityParams p;
        p.ring = &ring;
        p.k = k;
        p.s = s;
        p.r = AlgInt::one(K);
        p.chi = &chars[0];
        p.f = &norm;

        long oracle = classical_oracle(n, k, s);
        long closed = int_phi_k(n, k) * int_sigma(n, s);
        CycInt lhs = lhs_dp(p, budgets, &ctx);
        CycInt rhs = rhs_closed(p, &ctx);
        auto li = lhs.as_integer();
        auto ri = rhs.as_integer();
        if (!li || *li != oracle || !ri || *ri != oracle || closed != oracle) {
            log.add("n=" + std::to_string(n) + " k=" + std::to_string(k) +
                    " s=" + std::to_string(s) + ": oracle " +
                    std::to_string(oracle) + " closed " +
                    std::to_string(closed) + " lhs " + lhs.str() + " rhs " +
                    rhs.str());
        }
        ++checked;
    };

    // direct gcd sum for n <= 100 (k = 1, s = 0); spot values 4 -> 6, 12 -> 24
    for (long n = 2; n <= 100; ++n) check_point(n, 1, 0);
    if (classical_oracle(4, 1, 0) != 6) log.add("oracle(4) != 6");
    if (classical_oracle(12, 1, 0) != 24) log.add("oracle(12) != 24");
    // s-extended form for n <= 40, s <= 2
    for (long n = 2; n <= 40; ++n)
        for (unsigned s = 1; s <= 2; ++s) check_point(n, 1, s);
    // k-extended form for n <= 40, k <= 3
    for (long n = 2; n <= 40; ++n)
        for (unsigned k = 2; k <= 3; ++k) check_point(n, k, 0);

    return report(3, "classical gcd-sum anchors over Q", log,
                  std::to_string(checked) + " points vs the integer oracle");
}

// ---------------------------------------------------------------------------
// criterion 4: golden values in Z[i]
// ---------------------------------------------------------------------------

bool criterion4() {
    FailLog log;
    auto all = corpus();
    const FieldEntry* fqi = nullptr;
    for (const auto& fe : all)
        if (fe.name == "Q(i)") fqi = &fe;
    const NumberField* K = fqi->field.get();

    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) log.add(what);
    };

    Ideal three = Ideal::from_int(K, 3);
    ResidueRing r3(K, three);
    expect(euler_phi(three) == 8, "phi(<3>) != 8");
    expect(Int(r3.unit_count()) == 8, "unit count mod <3> != 8");
    expect(phi_k_formula(three, 2) == 56, "phi_2(<3>) formula != 56");
    expect(phi_k_bruteforce(r3, 2) == 56, "phi_2(<3>) count != 56");
    expect(sigma_s(three, 0) == 2, "sigma_0(<3>) != 2");

    Ideal two = Ideal::from_int(K, 2);
    ResidueRing r2(K, two);
    expect(phi_k_formula(two, 2) == 0, "phi_2(<2>) formula != 0");
    expect(phi_k_bruteforce(r2, 2) == 0, "phi_2(<2>) count != 0");

    auto chars = all_characters(r3);
    DivisorTable norm = DivisorTable::tabulate(three, "norm");
    IdentityContext ctx(r3);
    EvalBudgets budgets;

    IdentityParams p;
    p.ring = &r3;
    p.s = 0;
    p.r = AlgInt::one(K);
    p.chi = &chars[0];
    p.f = &norm;

    p.k = 1;
    auto v1l = lhs_naive(p, budgets, &ctx).as_integer();
    auto v1r = rhs_closed(p, &ctx).as_integer();
    expect(v1l && *v1l == 16, "k=1 gcd sum mod <3> != 16");
    expect(v1r && *v1r == 16, "k=1 closed form mod <3> != 16");

    p.k = 2;
    auto v2l = lhs_naive(p, budgets, &ctx).as_integer();
    auto v2c = lhs_convolution(p, budgets, &ctx).as_integer();
    auto v2d = lhs_dp(p, budgets, &ctx).as_integer();
    auto v2r = rhs_closed(p, &ctx).as_integer();
    expect(v2l && *v2l == 112, "k=2 gcd sum mod <3> != 112 (naive)");
    expect(v2c && *v2c == 112, "k=2 gcd sum mod <3> != 112 (convolution)");
    expect(v2d && *v2d == 112, "k=2 gcd sum mod <3> != 112 (dp)");
    expect(v2r && *v2r == 112, "k=2 closed form mod <3> != 112");

    return report(4, "golden values in Z[i]", log, "12 frozen values");
}

// ---------------------------------------------------------------------------
// criterion 5: lemma suites
// ---------------------------------------------------------------------------

// residue of the canonical rep of each class of rn modulo the divisor a,
// flattened to a string key for counting
std::vector<std::string> residue_keys(const ResidueRing& rn, const Ideal& a) {
    std::vector<std::string> keys(size_t(rn.class_count()));
    for (long x = 0; x < rn.class_count(); ++x) {
        Vec red = detail::hnf_reduce(a.hnf(), rn.rep_of(x));
        std::string k;
        for (const Int& c : red) {
            k += c.get_str();
            k += ',';
        }
        keys[size_t(x)] = std::move(k);
    }
    return keys;
}

void check_counting_lemmas(const FieldEntry& fe, const Ideal& n, FailLog& log,
                           long& points) {
    const NumberField* K = fe.field.get();
    ResidueRing rn(K, n);
    std::vector<Ideal> divs = ideal_divisors(n);
    Int phi_n = euler_phi(n);

    // single-congruence counts: per divisor a, bucket units by residue
    for (const Ideal& a : divs) {
        std::vector<std::string> keys = residue_keys(rn, a);
        std::map<std::string, Int> got;
        for (long u : rn.unit_classes()) got[keys[size_t(u)]] += 1;
        Int expect_hit = phi_n / euler_phi(a);
        for (long x = 0; x < rn.class_count(); ++x) {
            bool coprime = ideal_gcd_with_elements(a, {rn.rep_of(x)})
                               .is_unit_ideal();
            Int actual(0);
            auto it = got.find(keys[size_t(x)]);
            if (it != got.end()) actual = it->second;
            Int want = coprime ? expect_hit : Int(0);
            if (actual != want) {
                log.add(fe.name + " n=" + n.str() + " a=" + a.str() +
                        " u-class " + std::to_string(x) + ": count " +
                        actual.get_str() + " != " + want.get_str());
            }
            ++points;
        }
    }

    // double-congruence counts over every divisor pair
    for (const Ideal& a : divs) {
        std::vector<std::string> ka = residue_keys(rn, a);
        for (const Ideal& b : divs) {
            std::vector<std::string> kb = residue_keys(rn, b);
            std::map<std::pair<std::string, std::string>, Int> got;
            for (long u : rn.unit_classes())
                got[{ka[size_t(u)], kb[size_t(u)]}] += 1;
            Ideal lcm = ideal_lcm(a, b);
            Ideal gcd = ideal_gcd(a, b);
            Int expect_hit = phi_n / euler_phi(lcm);
            std::vector<std::string> kg = residue_keys(rn, gcd);
            for (long x = 0; x < rn.class_count(); ++x) {
                bool cop_a = ideal_gcd_with_elements(a, {rn.rep_of(x)})
                                 .is_unit_ideal();
                for (long y = 0; y < rn.class_count(); ++y) {
                    bool cop_b = ideal_gcd_with_elements(b, {rn.rep_of(y)})
                                     .is_unit_ideal();
                    bool compatible = kg[size_t(x)] == kg[size_t(y)];
                    Int want = (cop_a && cop_b && compatible) ? expect_hit
                                                              : Int(0);
                    Int actual(0);
                    auto it = got.find({ka[size_t(x)], kb[size_t(y)]});
                    if (it != got.end()) actual = it->second;
                    if (actual != want) {
                        log.add(fe.name + " n=" + n.str() + " a=" + a.str() +
                                " b=" + b.str() + ": pair count mismatch");
                        return;
                    }
                    ++points;
                }
            }
        }
    }
}

void check_charsum_lemma(const FieldEntry& fe, const Ideal& n, FailLog& log,
                         long& points) {
    const NumberField* K = fe.field.get();
    ResidueRing rn(K, n);
    auto chars = all_characters(rn);
    std::vector<AlgInt> rs;
    for (long cls : rn.unit_classes()) {
        rs.push_back(AlgInt(K, rn.rep_of(cls)));
        if (rs.size() == 2) break;
    }
    for (const Character& psi : chars) {
        if (!psi.is_primitive()) continue;
        for (const AlgInt& r : rs) {
            for (const Ideal& d : ideal_divisors(n)) {
                CycInt s = char_sum_over_congruence(psi, r, d);
                bool is_full = d == n;
                if (is_full) {
                    if (!cyc_eq(s, psi.eval(r)))
                        log.add(fe.name + " n=" + n.str() +
                                ": full-modulus character sum != psi(r)");
                } else if (!s.is_zero()) {
                    log.add(fe.name + " n=" + n.str() + " d=" + d.str() +
                            ": character sum nonzero below the modulus");
                }
                ++points;
            }
        }
    }
}

// two-argument recursion for all divisors; direct operation calls at small
// norms, shared-count evaluation beyond
void check_two_arg_recursion(const FieldEntry& fe, const Ideal& n,
                             FailLog& log, long& points) {
    const NumberField* K = fe.field.get();
    ResidueRing rn(K, n);
    std::vector<Ideal> divs = ideal_divisors(n);

    if (n.norm() <= 60) {
        for (const Ideal& m : divs) {
            for (unsigned k = 2; k <= 3; ++k) {
                if (phi_k_two_arg(rn, m, k) != phi_k_recursion_rhs(rn, m, k))
                    log.add(fe.name + " n=" + n.str() + " m=" + m.str() +
                            " k=" + std::to_string(k) +
                            ": recursion != count");
                ++points;
            }
        }
        return;
    }

    // amortized route: evaluate the two-argument counts for every divisor
    // from shared convolution counts, then check the recursion identity
    std::vector<std::vector<Int>> counts{
        {}, unit_sum_counts(rn, 1), unit_sum_counts(rn, 2),
        unit_sum_counts(rn, 3)};
    std::map<Vec, std::array<Int, 4>> table;  // divisor key -> phi_k(n, m)
    for (const Ideal& m : divs) {
        std::array<Int, 4> row{Int(0), Int(0), Int(0), Int(0)};
        std::vector<bool> ok(size_t(rn.class_count()));
        for (long x = 0; x < rn.class_count(); ++x)
            ok[size_t(x)] = ideal_gcd_with_elements(m, {rn.rep_of(x)})
                                .is_unit_ideal();
        for (unsigned k = 1; k <= 3; ++k) {
            Int acc(0);
            for (long t = 0; t < rn.class_count(); ++t)
                if (ok[size_t(t)]) acc += counts[k][size_t(t)];
            row[k] = acc;
        }
        table.emplace(m.key(), std::move(row));
    }
    Int phi_n = euler_phi(n);
    for (const Ideal& m : divs) {
        for (unsigned k = 2; k <= 3; ++k) {
            Rat rhs(0);
            for (const Ideal& d : ideal_divisors(m)) {
                Int mu = moebius(d);
                if (mu == 0) continue;
                Rat term(mu * table.at(d.key())[k - 1]);
                term /= Rat(euler_phi(d));
                rhs += term;
            }
            rhs *= Rat(phi_n);
            rhs.canonicalize();
            if (!rat_is_integer(rhs) ||
                rhs.get_num() != table.at(m.key())[k])
                log.add(fe.name + " n=" + n.str() + " m=" + m.str() + " k=" +
                        std::to_string(k) + ": recursion != count (shared)");
            ++points;
        }
    }
}

// constrained tuple counts: recursion and character-weighted closed form
void check_tuple_count_lemmas(const FieldEntry& fe, const Ideal& n,
                              FailLog& log, long& points) {
    const NumberField* K = fe.field.get();
    ResidueRing rn(K, n);
    const long N = rn.class_count();
    AlgInt r = AlgInt::one(K);
    auto chars = all_characters(rn);
    std::vector<Ideal> divs = ideal_divisors(n);
    std::vector<std::vector<Int>> counts{
        {}, unit_sum_counts(rn, 1), unit_sum_counts(rn, 2),
        unit_sum_counts(rn, 3)};

    // count_a1[(e,g,k)][a1-position] = number of unit k-tuples with the
    // given first coordinate, sum = r mod e and sum = 0 mod g
    const auto& units = rn.unit_classes();
    std::map<std::tuple<Vec, Vec, unsigned>, std::vector<Int>> by_first;
    auto first_counts = [&](const Ideal& e, const Ideal& g,
                            unsigned k) -> const std::vector<Int>& {
        auto key = std::make_tuple(e.key(), g.key(), k);
        auto it = by_first.find(key);
        if (it != by_first.end()) return it->second;
        Vec r_res = detail::hnf_reduce(e.hnf(), r.coords());
        Vec zero_res = detail::hnf_reduce(g.hnf(), Vec(K->degree(), Int(0)));
        std::vector<bool> ok(static_cast<size_t>(N));
        for (long t = 0; t < N; ++t)
            ok[size_t(t)] =
                detail::hnf_reduce(e.hnf(), rn.rep_of(t)) == r_res &&
                detail::hnf_reduce(g.hnf(), rn.rep_of(t)) == zero_res;
        std::vector<Int> out(units.size(), Int(0));
        const std::vector<Int>& C = counts[k - 1 == 0 ? 1 : k - 1];
        for (size_t ai = 0; ai < units.size(); ++ai) {
            Int acc(0);
            if (k == 1) {
                if (ok[size_t(units[ai])]) acc = 1;
            } else {
                for (long t = 0; t < N; ++t) {
                    if (C[size_t(t)] == 0) continue;
                    if (ok[size_t(rn.class_add(units[ai], t))])
                        acc += C[size_t(t)];
                }
            }
            out[ai] = std::move(acc);
        }
        return by_first.emplace(key, std::move(out)).first->second;
    };

    // residues of unit first coordinates modulo each conductor d
    std::map<Vec, std::vector<std::string>> rd_keys;
    auto keys_mod = [&](const Ideal& d) -> const std::vector<std::string>& {
        auto it = rd_keys.find(d.key());
        if (it != rd_keys.end()) return it->second;
        return rd_keys.emplace(d.key(), residue_keys(rn, d)).first->second;
    };

    for (const Ideal& e : divs) {
        for (const Ideal& g : divs) {
            if (!ideal_gcd(e, g).is_unit_ideal()) continue;
            for (unsigned k = 2; k <= 3; ++k) {
                const std::vector<Int>& top = first_counts(e, g, k);

                // recursion: phi(n)/(phi(e)phi(g)) sum mu(j) mu(t) N_{k-1}
                for (const Ideal& d : divs) {
                    const auto& dk = keys_mod(d);
                    std::map<std::string, Int> lhs_by_u, rhs_by_u;
                    for (size_t ai = 0; ai < units.size(); ++ai)
                        lhs_by_u[dk[size_t(units[ai])]] += top[ai];
                    for (const Ideal& j : ideal_divisors(e)) {
                        Int mu_j = moebius(j);
                        if (mu_j == 0) continue;
                        for (const Ideal& t : ideal_divisors(g)) {
                            Int mu_t = moebius(t);
                            if (mu_t == 0) continue;
                            const std::vector<Int>& sub =
                                first_counts(j, t, k - 1);
                            Int w = mu_j * mu_t;
                            for (size_t ai = 0; ai < units.size(); ++ai)
                                rhs_by_u[dk[size_t(units[ai])]] +=
                                    w * sub[ai];
                        }
                    }
                    Rat scale(euler_phi(n));
                    scale /= Rat(euler_phi(e) * euler_phi(g));
                    for (const auto& [ukey, lhsv] : lhs_by_u) {
                        Rat rhsv = Rat(rhs_by_u[ukey]) * scale;
                        rhsv.canonicalize();
                        if (!rat_is_integer(rhsv) || rhsv.get_num() != lhsv) {
                            log.add(fe.name + " n=" + n.str() +
                                    " e=" + e.str() + " g=" + g.str() +
                                    " d=" + d.str() + " k=" +
                                    std::to_string(k) +
                                    ": tuple-count recursion mismatch");
                            return;
                        }
                        ++points;
                    }
                }

                // character-weighted sum vs closed form, every character
                for (const Character& chi : chars) {
                    CycInt weighted = CycInt::zero(chi.order_m());
                    Vec coefs(size_t(chi.order_m()), Int(0));
                    for (size_t ai = 0; ai < units.size(); ++ai)
                        coefs[size_t(*chi.zeta_power(units[ai]))] += top[ai];
                    weighted = CycInt::from_coeffs(chi.order_m(),
                                                   std::move(coefs));
                    CycInt closed = nk_charsum_closed(chi, e, g, k, r);
                    if (!cyc_eq(weighted, closed)) {
                        log.add(fe.name + " n=" + n.str() + " e=" + e.str() +
                                " g=" + g.str() + " chi=" +
                                std::to_string(chi.index()) + " k=" +
                                std::to_string(k) +
                                ": weighted count != closed form");
                        return;
                    }
                    ++points;
                }
            }
        }
    }

    // the library operations themselves on the smallest moduli
    if (n.norm() <= 20) {
        IdentityContext ctx(rn);
        for (const Ideal& e : divs) {
            for (const Ideal& g : divs) {
                if (!ideal_gcd(e, g).is_unit_ideal()) continue;
                for (const Ideal& d : divs) {
                    ResidueRing rd(K, d);
                    for (unsigned k = 2; k <= 3; ++k) {
                        auto lhs = nk_counts(rn, rd, e, g, k, r, &ctx);
                        auto rhs = nk_recursion_rhs(rn, rd, e, g, k, r, &ctx);
                        if (lhs != rhs) {
                            log.add(fe.name + " n=" + n.str() +
                                    ": nk_counts != nk_recursion_rhs");
                            return;
                        }
                        ++points;
                        // single-residue enumeration cross-check at k = 2
                        if (k == 2 && d.norm() <= 4) {
                            for (long u : rd.unit_classes()) {
                                AlgInt uu(K, rd.rep_of(u));
                                if (nk_bruteforce(rn, e, g, d, uu, k, r) !=
                                    lhs[size_t(u)]) {
                                    log.add(fe.name + " n=" + n.str() +
                                            ": nk_bruteforce mismatch");
                                    return;
                                }
                                ++points;
                            }
                        }
                    }
                }
            }
        }
    }
}

bool criterion5() {
    FailLog log;
    long points = 0;
    for (const FieldEntry& fe : corpus()) {
        const NumberField* K = fe.field.get();
        std::vector<Ideal> m60 = enumerate_ideals(K, 60);
        std::vector<Ideal> m200 = enumerate_ideals(K, 200);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : points)
#endif
        for (long i = 0; i < long(m60.size()); ++i) {
            const Ideal& n = m60[size_t(i)];
            try {
                long local = 0;
                check_counting_lemmas(fe, n, log, local);
                check_charsum_lemma(fe, n, log, local);
                check_tuple_count_lemmas(fe, n, log, local);
                points += local;
            } catch (const std::exception& e) {
                log.add(fe.name + " n=" + n.str() + ": " + e.what());
            }
        }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : points)
#endif
        for (long i = 0; i < long(m200.size()); ++i) {
            const Ideal& n = m200[size_t(i)];
            try {
                long local = 0;
                check_two_arg_recursion(fe, n, log, local);
                points += local;
            } catch (const std::exception& e) {
                log.add(fe.name + " n=" + n.str() + ": " + e.what());
            }
        }
    }
    return report(5,
                  "counting lemmas (N <= 60), character-sum lemma (N <= 60), "
                  "two-argument recursion (N <= 200), tuple-count recursion "
                  "and closed form (N <= 60)",
                  log, std::to_string(points) + " checks");
}

// ---------------------------------------------------------------------------
// criterion 6: corollary consistency for f = norm
// ---------------------------------------------------------------------------

bool criterion6() {
    FailLog log;
    long points = 0;
    for (const FieldEntry& fe : corpus()) {
        const NumberField* K = fe.field.get();
        std::vector<Ideal> moduli = enumerate_ideals(K, 100);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : points)
#endif
        for (long i = 0; i < long(moduli.size()); ++i) {
            const Ideal& n = moduli[size_t(i)];
            try {
                ResidueRing ring(K, n);
                auto chars = all_characters(ring);
                DivisorTable norm = DivisorTable::tabulate(n, "norm");
                IdentityContext ctx(ring);
                std::vector<AlgInt> rs;
                for (long cls : ring.unit_classes()) {
                    rs.push_back(AlgInt(K, ring.rep_of(cls)));
                    if (rs.size() == 3) break;
                }
                for (const Character& chi : chars) {
                    for (unsigned k = 1; k <= 3; ++k) {
                        for (unsigned s = 0; s <= 2; ++s) {
                            for (const AlgInt& r : rs) {
                                IdentityParams p;
                                p.ring = &ring;
                                p.k = k;
                                p.s = s;
                                p.r = r;
                                p.chi = &chi;
                                p.f = &norm;
                                CycInt a = rhs_closed(p, &ctx);
                                CycInt b = rhs_corollary_norm(p, &ctx);
                                if (!cyc_eq(a, b))
                                    log.add(fe.name + " n=" + n.str() +
                                            ": corollary form != closed form");
                                ++points;
                            }
                        }
                    }
                }
                // r = 1 forces psi(r) = 1
                for (const Character& chi : chars) {
                    if (!cyc_eq(primitive_eval(chi, AlgInt::one(K)),
                                CycInt::integer(1)))
                        log.add(fe.name + " n=" + n.str() +
                                ": psi(1) != 1 for char " +
                                std::to_string(chi.index()));
                    ++points;
                }
            } catch (const std::exception& e) {
                log.add(fe.name + " n=" + n.str() + ": " + e.what());
            }
        }
    }
    return report(6, "norm-function corollary = closed form; psi(1) = 1", log,
                  std::to_string(points) + " checks");
}

// ---------------------------------------------------------------------------
// criterion 7: infrastructure property tests
// ---------------------------------------------------------------------------

bool criterion7() {
    FailLog log;
    auto all = corpus();
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long> coord(-25, 25);
    std::uniform_int_distribution<size_t> pick_field(0, all.size() - 1);

    auto rand_elem = [&](const NumberField* K) {
        for (;;) {
            Vec c(K->degree());
            bool zero = true;
            for (auto& x : c) {
                x = Int(coord(rng));
                if (x != 0) zero = false;
            }
            if (!zero) return AlgInt(K, std::move(c));
        }
    };

    long cases = 0;
    // HNF canonicity round-trips and norm multiplicativity
    for (int it = 0; it < 1200; ++it) {
        const NumberField* K = all[pick_field(rng)].field.get();
        Ideal a = Ideal::principal(rand_elem(K));
        Ideal b = Ideal::principal(rand_elem(K));
        std::vector<AlgInt> basis;
        for (int j = 0; j < K->degree(); ++j) basis.push_back(a.basis_element(j));
        if (!(Ideal::from_generators(K, basis) == a))
            log.add("HNF round-trip failed");
        if (ideal_mul(a, b).norm() != a.norm() * b.norm())
            log.add("norm not multiplicative");
        if (ideal_gcd(a, b).norm() * ideal_lcm(a, b).norm() !=
            a.norm() * b.norm())
            log.add("gcd*lcm norm identity failed");
        ++cases;
    }

    // factor/product round trip
    std::uniform_int_distribution<long> small_coord(-12, 12);
    for (int it = 0; it < 1000; ++it) {
        const NumberField* K = all[pick_field(rng)].field.get();
        Vec c(K->degree());
        bool zero = true;
        for (auto& x : c) {
            x = Int(small_coord(rng));
            if (x != 0) zero = false;
        }
        if (zero) c[0] = 3;
        Ideal a = Ideal::principal(AlgInt(K, c));
        Ideal prod = Ideal::unit_ideal(K);
        for (const auto& [p, e] : ideal_factor(a))
            prod = ideal_mul(prod, ideal_pow(p.ideal(), unsigned(e)));
        if (!(prod == a)) log.add("factor/product round trip failed");
        ++cases;
    }

    // convolution algebra axioms on random tables
    {
        const NumberField* K = all[1].field.get();  // Q(i)
        Ideal n = Ideal::from_int(K, 30);
        std::uniform_int_distribution<long> val(-9, 9);
        size_t nd = ideal_divisors(n).size();
        auto rand_table = [&] {
            std::vector<Int> vals;
            for (size_t i = 0; i < nd; ++i) vals.push_back(Int(val(rng)));
            return DivisorTable(n, std::move(vals), "rand");
        };
        for (int it = 0; it < 350; ++it) {
            DivisorTable f = rand_table(), g = rand_table(), h = rand_table();
            DivisorTable fg = dirichlet_convolve(f, g);
            DivisorTable gf = dirichlet_convolve(g, f);
            DivisorTable ab = dirichlet_convolve(fg, h);
            DivisorTable bc = dirichlet_convolve(f, dirichlet_convolve(g, h));
            for (size_t i = 0; i < nd; ++i) {
                if (fg.value_by_index(i) != gf.value_by_index(i))
                    log.add("convolution not commutative");
                if (ab.value_by_index(i) != bc.value_by_index(i))
                    log.add("convolution not associative");
                ++cases;
            }
        }
    }

    // character orthogonality and conductor divisibility
    {
        std::uniform_int_distribution<long> mod_pick(2, 16);
        for (int it = 0; it < 30; ++it) {
            const NumberField* K = all[pick_field(rng)].field.get();
            Ideal n = Ideal::from_int(K, mod_pick(rng));
            ResidueRing ring(K, n);
            if (ring.size() > 600) continue;
            auto chars = all_characters(ring);
            long one = ring.index_of_reduced(AlgInt::one(K).coords());
            for (long u : ring.unit_classes()) {
                CycInt s = CycInt::zero(ring.exponent());
                for (const auto& chi : chars) s = s + chi.eval_class(u);
                bool want_phi = (u == one);
                if (want_phi != cyc_eq(s, CycInt::integer(ring.unit_count())))
                    log.add("orthogonality sum wrong at u = 1");
                if (!want_phi && !s.is_zero())
                    log.add("orthogonality sum nonzero off 1");
                ++cases;
            }
            for (const auto& chi : chars) {
                if (!ideal_divides(chi.conductor(), n))
                    log.add("conductor does not divide the modulus");
                ++cases;
            }
        }
    }

    return report(7, "infrastructure property tests", log,
                  std::to_string(cases) + " random cases");
}

} // namespace

int main(int argc, char** argv) {
    int criterion = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc)
            criterion = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--data") && i + 1 < argc)
            g_data_dir = argv[++i];
    }

    bool ok = true;
    auto run = [&](int c) {
        switch (c) {
            case 1: ok = criterion1() && ok; break;
            case 2: ok = criterion2() && ok; break;
            case 3: ok = criterion3() && ok; break;
            case 4: ok = criterion4() && ok; break;
            case 5: ok = criterion5() && ok; break;
            case 6: ok = criterion6() && ok; break;
            case 7: ok = criterion7() && ok; break;
            default:
                std::cerr << "unknown criterion " << c << "\n";
                ok = false;
        }
    };
    if (criterion == 0)
        for (int c = 1; c <= 7; ++c) run(c);
    else
        run(criterion);
    return ok ? 0 : 1;
}
