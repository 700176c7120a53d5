#include <chrono>
#include <iostream>

#include "tcw/census.hpp"
#include "tcw/codes.hpp"
#include "tcw/counting.hpp"
#include "tcw/expsum.hpp"
#include "tcw/field.hpp"
#include "tcw/scheme.hpp"

using namespace tcw;

int main() {
    auto ctx = make_field(3, 5);
    std::cout << "modulus:";
    for (int c : ctx.params().modulus) std::cout << " " << c;
    std::cout << "\norder check: pi^242 = " << ctx.pow(ctx.pi(), 242).code << "\n";
    std::cout << "trace(1) = " << ctx.trace(ctx.one()) << "\n";

    auto cls = classify(ctx, ctx.one(), ctx.zero(), ctx.zero());
    std::cout << "classify(1,0,0): rank=" << cls.rank << " eps=" << cls.eps << "\n";
    auto hist = s_brute(ctx, ctx.one(), ctx.zero(), ctx.zero());
    std::cout << "s_brute(1,0,0) = " << hist.value().str()
              << " vs s_value = " << s_value(cls, 3, 5).str() << "\n";

    auto t0 = std::chrono::steady_clock::now();
    CensusOptions opts;
    opts.workers = 2;
    opts.with_table2 = true;
    auto res = run_census_full(ctx, opts);
    auto t1 = std::chrono::steady_clock::now();
    auto& c = res.census;
    std::cout << "census: " << c.n0 << " " << c.n11 << " " << c.nm11 << " " << c.n2 << " " << c.n13
              << " " << c.nm13 << " " << c.n4 << "\n";
    std::cout << "census time: " << std::chrono::duration<double>(t1 - t0).count() << " s\n";

    auto cf = census_closed_form(3, 5);
    std::cout << "closed == census: " << (cf == c) << "\n";

    for (int k = 1; k <= 5; ++k) {
        auto mc = moment_check(c, k, 3, 5);
        std::cout << "moment " << k << ": lhs=" << mc.lhs << " rhs=" << mc.rhs << " ok=" << mc.ok << "\n";
    }

    auto wd1 = c1_distribution(c, 3, 5);
    for (auto& [w, n] : wd1.entries) std::cout << "A_" << w << " = " << n << "\n";
    auto wd2 = c2_distribution(c, 3, 5);
    for (auto& [w, n] : wd2.entries) std::cout << "C2 A_" << w << " = " << n << "\n";

    auto rep1 = sample_verify(ctx, c1_spec(3, 5), 200, 42);
    auto rep2 = sample_verify(ctx, c2_spec(3, 5), 200, 42);
    std::cout << "verify c1 mismatches: " << rep1.mismatches << ", c2: " << rep2.mismatches << "\n";

    SchemeParams sp{3, 5, 1, SchemeVariant::symmetric};
    auto dd = distance_distribution(sp);
    std::cout << "a: ";
    for (auto& v : dd.a) std::cout << v << " ";
    std::cout << "(sum " << dd.sum() << ")\n";

    std::cout << "M2=" << count_power_system(ctx, 2, true).count
              << " M3=" << count_power_system(ctx, 3, true).count
              << " T3=" << count_power_system(ctx, 3, false).count
              << " T4=" << count_power_system(ctx, 4, false).count
              << " M4=" << count_power_system(ctx, 4, true).count << "\n";

    // table2 exhaustive vs formula rows
    auto rows = table2_rows(c, 3, 5);
    BigInt total = 0;
    for (auto& r : rows) total += r.multiplicity;
    std::cout << "table2 row mass: " << total << " (expect (3^15-1)*3^5 = " << (bpow(3, 15) - 1) * 243
              << ")\n";
    bool t2ok = true;
    for (auto& r : rows) {
        int idx = 5 - r.rank;
        int d = r.delta_sign > 0 ? 0 : 1;
        BigInt emp = r.c < 0 ? res.table2.zero[idx][d] : res.table2.cnum[idx][d][r.c];
        if (emp != r.multiplicity) {
            t2ok = false;
            std::cout << "MISMATCH rank=" << r.rank << " d=" << r.delta_sign << " c=" << r.c
                      << " formula=" << r.multiplicity << " empirical=" << emp << "\n";
        }
    }
    std::cout << "table2 exhaustive == formulas: " << t2ok << "\n";
    return 0;
}
