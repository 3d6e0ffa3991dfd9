// Benchmark: serial reference evaluators vs the dynamic-program kernel, and
// a parallel sweep vs the same sweep pinned to one thread.

#include <chrono>
#include <cstdio>

#include "menon/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace menon;
using clock_type = std::chrono::steady_clock;

static double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
        .count();
}

int main(int argc, char** argv) {
    std::string data_dir = argc > 1 ? argv[1] : "data";

    auto Qi = NumberField::make({Int(1), Int(0), Int(1)}, "Q(i)");
    const NumberField* K = Qi.get();

    printf("== evaluator comparison, Z[i], growing modulus, k=2 s=1 ==\n");
    printf("%8s %10s %12s %12s %12s\n", "N(n)", "value", "naive ms",
           "convo ms", "dp ms");
    for (long m : {3L, 5L, 7L, 9L, 13L}) {
        Ideal n = Ideal::from_int(K, m);
        ResidueRing ring(K, n);
        auto chars = all_characters(ring);
        DivisorTable norm = DivisorTable::tabulate(n, "norm");
        IdentityContext ctx(ring);
        IdentityParams p;
        p.ring = &ring;
        p.k = 2;
        p.s = 1;
        p.r = AlgInt::one(K);
        p.chi = &chars[0];
        p.f = &norm;
        EvalBudgets budgets;
        budgets.naive = Int("100000000000");

        auto t0 = clock_type::now();
        CycInt a = lhs_naive(p, budgets, &ctx);
        double t_naive = ms_since(t0);
        t0 = clock_type::now();
        CycInt b = lhs_convolution(p, budgets, &ctx);
        double t_conv = ms_since(t0);
        t0 = clock_type::now();
        CycInt c = lhs_dp(p, budgets, &ctx);
        double t_dp = ms_since(t0);
        if (!cyc_eq(a, b) || !cyc_eq(a, c)) {
            printf("MISMATCH at N=%ld\n", m * m);
            return 1;
        }
        printf("%8ld %10s %12.2f %12.2f %12.2f\n", m * m,
               a.as_integer() ? a.as_integer()->get_str().c_str() : "-",
               t_naive, t_conv, t_dp);
    }

    printf("\n== tuple counting: direct pair loop vs convolution counts ==\n");
    printf("%8s %12s %14s %14s\n", "N(n)", "phi_2", "pairs ms", "counts ms");
    for (long m : {7L, 11L, 13L, 17L}) {
        Ideal n = Ideal::from_int(K, m);
        ResidueRing ring(K, n);
        auto t0 = clock_type::now();
        Int direct = phi_k_two_arg(ring, n, 2);
        double t_direct = ms_since(t0);
        t0 = clock_type::now();
        std::vector<Int> counts = unit_sum_counts(ring, 2);
        Int via_counts(0);
        for (long t = 0; t < ring.class_count(); ++t)
            if (ring.is_unit_class(t)) via_counts += counts[size_t(t)];
        double t_counts = ms_since(t0);
        if (direct != via_counts) {
            printf("MISMATCH at N=%ld\n", m * m);
            return 1;
        }
        printf("%8ld %12s %14.2f %14.2f\n", m * m, direct.get_str().c_str(),
               t_direct, t_counts);
    }

    printf("\n== sweep: one worker vs all workers ==\n");
    SweepConfig cfg;
    cfg.field_path = data_dir + "/fields.json";
    cfg.field_name = "Q(i)";
    cfg.max_norm = 40;
    cfg.ks = {1, 2};
    cfg.ss = {0, 1};
    cfg.chars = "all";
    cfg.r_sel = "first:2";
    cfg.fs = {"norm"};
    cfg.evaluators = {Evaluator::dp};

    cfg.jobs = 1;
    auto t0 = clock_type::now();
    SweepResult serial = run_sweep(cfg);
    double t_serial = ms_since(t0);

    cfg.jobs = 0;
    t0 = clock_type::now();
    SweepResult parallel = run_sweep(cfg);
    double t_parallel = ms_since(t0);

    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    printf("%6s %8s %8s %8s %12s\n", "jobs", "total", "passed", "failed",
           "wall ms");
    printf("%6d %8ld %8ld %8ld %12.1f\n", 1, serial.summary.total,
           serial.summary.passed, serial.summary.failed, t_serial);
    printf("%6d %8ld %8ld %8ld %12.1f\n", max_threads,
           parallel.summary.total, parallel.summary.passed,
           parallel.summary.failed, t_parallel);

    if (serial.records.size() != parallel.records.size()) {
        printf("record sets differ between serial and parallel runs\n");
        return 1;
    }
    for (size_t i = 0; i < serial.records.size(); ++i) {
        if (!(record_json(serial.records[i]) == record_json(parallel.records[i]))) {
            // timing fields differ by construction; compare without them
            auto a = record_json(serial.records[i]);
            auto b = record_json(parallel.records[i]);
            a.erase("ms");
            b.erase("ms");
            if (!(a == b)) {
                printf("record %zu differs between serial and parallel runs\n",
                       i);
                return 1;
            }
        }
    }
    printf("serial and parallel record sets are identical\n");
    return 0;
}
