#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "tcw/common.hpp"
#include "tcw/cyclotomic.hpp"
#include "tcw/expsum.hpp"
#include "tcw/field.hpp"
#include "tcw/quadform.hpp"

namespace tcw {

inline constexpr std::uint64_t kDefaultMaxEnum = 200'000'000;

// The seven counters of the rank census over (alpha, beta, gamma) != 0.
// Odd ranks m, m-2, m-4 appear with both signs of S in equal halves, so n0,
// n2, n4 each count ONE sign class; the even-rank counters n_{eps,1} and
// n_{eps,3} are split by the sign of S (Table-I convention).
struct RankCensus {
    BigInt n0, n11, nm11, n2, n13, nm13, n4;

    BigInt total_nonzero_triples() const { return 2 * (n0 + n2 + n4) + n11 + nm11 + n13 + nm13; }

    friend bool operator==(const RankCensus&, const RankCensus&) = default;
};

// Raw sign-resolved bins: index [m - rank][sign], sign 0 = S positive
// (positive real part for even rank, positive sqrt(-3) part for odd rank).
using CensusBins = std::array<std::array<std::uint64_t, 2>, 5>;

// Exact per-(rank, Legendre(Delta))-class accounting of the shifted sums over
// all delta: how many delta give S' = 0 and how many give each c in {0,1,2}.
struct Table2Census {
    std::array<std::array<BigInt, 2>, 5> zero;                 // [m-rank][delta class]
    std::array<std::array<std::array<BigInt, 3>, 2>, 5> cnum;  // [m-rank][delta class][c]
};

struct CensusOptions {
    int workers = 0;  // 0 = hardware concurrency
    std::uint64_t max_enum = kDefaultMaxEnum;
    bool with_table2 = false;
};

struct CensusResult {
    RankCensus census;
    CensusBins bins{};  // sign-resolved counts, for determinism checks
    bool has_table2 = false;
    Table2Census table2;
};

namespace detail {

inline constexpr std::uint8_t kMod3[7] = {0, 1, 2, 0, 1, 2, 0};
// kAddMul[g-1][a][b] = (a + g*b) mod 3 for g in {1,2}
inline constexpr std::uint8_t kAddMul[2][3][3] = {
    {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}},
    {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}},
};

// p = 3 symmetric congruence elimination; returns rank, fills pivots.
inline int classify3(std::uint8_t* h, int n, std::uint8_t* pivots) {
    int rank = 0;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int j = k; j < n; ++j)
            if (h[j * n + j]) {
                piv = j;
                break;
            }
        if (piv < 0) {
            int oi = -1, oj = -1;
            for (int i = k; i < n && oi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (h[i * n + j]) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi < 0) break;
            for (int t = k; t < n; ++t) h[oi * n + t] = kMod3[h[oi * n + t] + h[oj * n + t]];
            for (int t = k; t < n; ++t) h[t * n + oi] = kMod3[h[t * n + oi] + h[t * n + oj]];
            piv = oi;
        }
        if (piv != k) {
            for (int t = k; t < n; ++t) std::swap(h[k * n + t], h[piv * n + t]);
            for (int t = k; t < n; ++t) std::swap(h[t * n + k], h[t * n + piv]);
        }
        const std::uint8_t d = h[k * n + k];
        pivots[rank++] = d;
        for (int i = k + 1; i < n; ++i) {
            const std::uint8_t t = h[i * n + k];
            if (!t) continue;
            const std::uint8_t f = kMod3[t * d];  // t * d^{-1}, since d^{-1} = d mod 3
            const std::uint8_t g = static_cast<std::uint8_t>(3 - f);
            const auto& tbl = kAddMul[g - 1];
            for (int t2 = k; t2 < n; ++t2) h[i * n + t2] = tbl[h[i * n + t2]][h[k * n + t2]];
            for (int t2 = k; t2 < n; ++t2) h[t2 * n + i] = tbl[h[t2 * n + i]][h[t2 * n + k]];
        }
    }
    return rank;
}

struct ShardAccum {
    std::array<std::array<std::uint64_t, 2>, 5> cnt{};     // [m-rank][Delta class]
    std::array<std::array<std::array<std::uint64_t, 3>, 2>, 5> chist{};
    std::uint64_t out_of_range = 0;  // ranks below m-4; must stay 0
};

// Gram tables: gram(alpha,0,0), gram(0,beta,0), gram(0,0,gamma) for every
// element code; H(alpha,beta,gamma) is their entrywise sum by linearity.
inline std::vector<std::uint8_t> gram_table(const FieldCtx& ctx, int which) {
    const int m = ctx.m();
    const std::size_t mm = static_cast<std::size_t>(m) * m;
    std::vector<std::uint8_t> t(ctx.q() * mm);
    for (std::uint32_t code = 0; code < ctx.q(); ++code) {
        FieldElement e{code};
        FieldElement z{0};
        SymmetricMatrix g = which == 0 ? gram_matrix(ctx, e, z, z)
                          : which == 1 ? gram_matrix(ctx, z, e, z)
                                       : gram_matrix(ctx, z, z, e);
        std::copy(g.e.begin(), g.e.end(), t.begin() + code * mm);
    }
    return t;
}

inline void census_worker(const FieldCtx& ctx, const std::vector<std::uint8_t>& ga,
                          const std::vector<std::uint8_t>& gb, const std::vector<std::uint8_t>& gc,
                          std::uint32_t lo, std::uint32_t hi, bool with_table2, ShardAccum& acc) {
    const int m = ctx.m();
    const int mm = m * m;
    const std::uint32_t q = ctx.q();
    std::uint8_t hab[32 * 32];
    std::uint8_t h[32 * 32];
    std::uint8_t pivots[32];
    for (std::uint32_t a = lo; a < hi; ++a) {
        const std::uint8_t* pa = ga.data() + static_cast<std::size_t>(a) * mm;
        for (std::uint32_t b = 0; b < q; ++b) {
            const std::uint8_t* pb = gb.data() + static_cast<std::size_t>(b) * mm;
            for (int t = 0; t < mm; ++t) hab[t] = kMod3[pa[t] + pb[t]];
            for (std::uint32_t c = 0; c < q; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const std::uint8_t* pc = gc.data() + static_cast<std::size_t>(c) * mm;
                for (int t = 0; t < mm; ++t) h[t] = kMod3[hab[t] + pc[t]];
                const int rank = classify3(h, m, pivots);
                const int idx = m - rank;
                if (idx < 0 || idx > 4) {  // cannot throw from a worker thread
                    ++acc.out_of_range;
                    continue;
                }
                int prod = 1;
                for (int i = 0; i < rank; ++i)
                    if (pivots[i] == 2) prod = -prod;
                const int ds = prod > 0 ? 0 : 1;
                ++acc.cnt[idx][ds];
                if (with_table2) {
                    // #\{y in F_3^rank : sum pivots_i y_i^2 = s\} by convolving
                    // (1 + 2 z^{h_i}); then c = -s.
                    std::uint32_t conv[3] = {1, 0, 0};
                    for (int i = 0; i < rank; ++i) {
                        std::uint32_t c0 = conv[0], c1 = conv[1], c2 = conv[2];
                        if (pivots[i] == 1) {
                            conv[0] = c0 + 2 * c2;
                            conv[1] = c1 + 2 * c0;
                            conv[2] = c2 + 2 * c1;
                        } else {
                            conv[0] = c0 + 2 * c1;
                            conv[1] = c1 + 2 * c2;
                            conv[2] = c2 + 2 * c0;
                        }
                    }
                    acc.chist[idx][ds][0] += conv[0];
                    acc.chist[idx][ds][1] += conv[2];
                    acc.chist[idx][ds][2] += conv[1];
                }
            }
        }
    }
}

}  // namespace detail

// Exhaustive census over all q^3 - 1 nonzero coefficient triples. The alpha
// index range is split into contiguous shards, one private accumulator per
// shard, merged by addition; the result is independent of worker count.
inline CensusResult run_census_full(const FieldCtx& ctx, const CensusOptions& opts = {}) {
    if (ctx.p() != 3) throw BadParams("census requires p = 3");
    const int m = ctx.m();
    if (m <= 1 || m % 2 == 0 || m % 3 == 0)
        throw BadParams("census requires odd m > 1 with 3 not dividing m");
    const std::uint64_t q = ctx.q();
    if (BigInt(q) * q * q > opts.max_enum)
        throw TooLarge("census space q^3 exceeds the enumeration guard; raise --max-enum or use sampling");

    const auto ga = detail::gram_table(ctx, 0);
    const auto gb = detail::gram_table(ctx, 1);
    const auto gc = detail::gram_table(ctx, 2);

    int workers = opts.workers > 0 ? opts.workers
                                   : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::uint64_t>(workers, q));

    std::vector<detail::ShardAccum> accs(workers);
    if (workers == 1) {
        detail::census_worker(ctx, ga, gb, gc, 0, static_cast<std::uint32_t>(q), opts.with_table2, accs[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint32_t step = static_cast<std::uint32_t>((q + workers - 1) / workers);
        for (int w = 0; w < workers; ++w) {
            const std::uint32_t lo = static_cast<std::uint32_t>(w) * step;
            const std::uint32_t hi = static_cast<std::uint32_t>(std::min<std::uint64_t>(q, static_cast<std::uint64_t>(lo) + step));
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi, w] {
                detail::census_worker(ctx, ga, gb, gc, lo, hi, opts.with_table2, accs[w]);
            });
        }
        for (auto& t : pool) t.join();
    }

    detail::ShardAccum total;
    for (const auto& a : accs) {
        total.out_of_range += a.out_of_range;
        for (int i = 0; i < 5; ++i)
            for (int d = 0; d < 2; ++d) {
                total.cnt[i][d] += a.cnt[i][d];
                for (int c = 0; c < 3; ++c) total.chist[i][d][c] += a.chist[i][d][c];
            }
    }
    if (total.out_of_range != 0) throw Error("internal: census rank outside [m-4, m]");

    CensusResult res;
    // Sign of S for Delta class ds at rank r: legendre(Delta) * (-1)^{floor(r/2)}.
    for (int idx = 0; idx < 5; ++idx) {
        const int r = m - idx;
        const bool flip = ((r / 2) % 2) != 0;
        res.bins[idx][0] = total.cnt[idx][flip ? 1 : 0];
        res.bins[idx][1] = total.cnt[idx][flip ? 0 : 1];
    }
    if (res.bins[0][0] != res.bins[0][1] || res.bins[2][0] != res.bins[2][1] ||
        res.bins[4][0] != res.bins[4][1])
        throw Error("internal: odd-rank sign classes are not balanced");
    res.census.n0 = res.bins[0][0];
    res.census.n11 = res.bins[1][0];
    res.census.nm11 = res.bins[1][1];
    res.census.n2 = res.bins[2][0];
    res.census.n13 = res.bins[3][0];
    res.census.nm13 = res.bins[3][1];
    res.census.n4 = res.bins[4][0];

    if (opts.with_table2) {
        res.has_table2 = true;
        for (int idx = 0; idx < 5; ++idx) {
            const int r = m - idx;
            const BigInt pr = bpow(3, static_cast<unsigned>(r));
            for (int d = 0; d < 2; ++d) {
                res.table2.zero[idx][d] = BigInt(total.cnt[idx][d]) * (BigInt(q) - pr);
                BigInt solv = 0;
                for (int c = 0; c < 3; ++c) {
                    res.table2.cnum[idx][d][c] = total.chist[idx][d][c];
                    solv += res.table2.cnum[idx][d][c];
                }
                if (solv != BigInt(total.cnt[idx][d]) * pr)
                    throw Error("internal: shifted-sum accounting does not total p^r per form");
            }
        }
    }
    return res;
}

inline RankCensus run_census(const FieldCtx& ctx, const CensusOptions& opts = {}) {
    return run_census_full(ctx, opts).census;
}

// Seeded random sampling of the classification, for spaces beyond the
// enumeration guard. Counts are raw sample tallies, never exact multiplicities.
struct SampledCensus {
    CensusBins bins{};
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

inline SampledCensus sample_census(const FieldCtx& ctx, std::uint64_t samples, std::uint64_t seed) {
    if (ctx.p() != 3) throw BadParams("census requires p = 3");
    const int m = ctx.m();
    if (m <= 1 || m % 2 == 0 || m % 3 == 0)
        throw BadParams("census requires odd m > 1 with 3 not dividing m");
    SampledCensus out;
    out.samples = samples;
    out.seed = seed;
    Rng rng(seed);
    std::uint8_t buf[32 * 32];
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::uint32_t a, b, c;
        do {
            a = static_cast<std::uint32_t>(rng.below(ctx.q()));
            b = static_cast<std::uint32_t>(rng.below(ctx.q()));
            c = static_cast<std::uint32_t>(rng.below(ctx.q()));
        } while (a == 0 && b == 0 && c == 0);
        SymmetricMatrix h = gram_matrix(ctx, {a}, {b}, {c});
        std::copy(h.e.begin(), h.e.end(), buf);
        ExpSumClass cls = classify_gram_inplace(buf, m, 3);
        const int idx = m - cls.rank;
        if (idx < 0 || idx > 4) throw Error("internal: census rank outside [m-4, m]");
        const int spos = sign_of_s(cls) > 0 ? 0 : 1;
        ++out.bins[idx][spos];
    }
    return out;
}

// a_n, a_{n-1}, a_{n-2} as closed formulas (the same values the scheme module
// produces via the distance distribution).
struct SchemeAValues {
    BigInt a_n, a_n1, a_n2;
};

inline SchemeAValues remark_a_values(int p, int m) {
    if (m <= 1 || m % 2 == 0 || m % 3 == 0) throw BadParams("a-values need odd m > 1, 3 not dividing m");
    const BigInt P = p;
    const BigInt pm = bpow(P, m);
    const BigInt u = exact_div(bpow(P, m + 1) - 1, P * P - 1, "a-values u");
    const BigInt v = exact_div((bpow(P, m + 1) - 1) * (bpow(P, m - 1) - 1),
                               (bpow(P, 4) - 1) * (P * P - 1), "a-values v");
    SchemeAValues a;
    a.a_n = bpow(P, 3 * m) - 1 - u * (bpow(P, 2 * m) - 1) + P * P * v * (pm - 1);
    a.a_n1 = u * (bpow(P, 2 * m) - 1) - (P * P + 1) * v * (pm - 1);
    a.a_n2 = v * (pm - 1);
    return a;
}

// The seven counters from the closed-form pipeline alone (no enumeration).
// Every division must be exact; InexactDivision signals a transcription bug.
inline RankCensus census_closed_form(int p, int m) {
    if (p != 3) throw BadParams("closed-form census is established for p = 3 only");
    if (m <= 1 || m % 2 == 0 || m % 3 == 0)
        throw BadParams("closed-form census requires odd m > 1 with 3 not dividing m");
    const BigInt P = p;
    const SchemeAValues a = remark_a_values(p, m);
    const BigInt pm = bpow(P, m);

    const BigInt A = exact_div(bpow(P, 3 * m + 2) - bpow(P, m - 1) * (pm - 1) - P * P, P + 1, "A") -
                     exact_div(a.a_n * (P * P - P + 1), P, "A") - a.a_n1 * (P - 1);
    const BigInt B =
        exact_div((pm - 1) * (8 * pm - 9) * bpow(P, m - 2) + bpow(P, 4) - bpow(P, 3 * m + 4),
                  P * P - 1, "B") +
        exact_div(a.a_n * (bpow(P, 4) + P * P + 1), P * P, "B") + a.a_n1 * (P * P + 1);

    RankCensus c;
    c.n0 = exact_div(a.a_n, 2, "n0");
    c.n4 = exact_div(B - A, 2 * P * P * (P * P - 1), "n4");
    c.n2 = exact_div(P * P * A - B, 2 * (P * P - 1), "n2");

    const BigInt tail = bpow(P, 3 * m) - 1 - a.a_n - a.a_n1 - 2 * c.n4;
    const BigInt t13 =
        bpow(P, (m - 3) / 2) * exact_div((pm - 1) * (bpow(P, m - 1) - 1), P * P - 1, "t13");
    c.n13 = exact_div(t13 + tail, 2, "n13");
    c.nm13 = exact_div(tail - t13, 2, "nm13");

    const BigInt head = a.a_n1 - 2 * c.n2;
    const BigInt t11 = exact_div(bpow(P, m + 2) - 4 * bpow(P, m - 1) + P * P, P * P - 1, "t11") *
                       bpow(P, (m - 1) / 2) * (pm - 1);
    c.n11 = exact_div(head + t11, 2, "n11");
    c.nm11 = exact_div(head - t11, 2, "nm11");

    for (const BigInt* v : {&c.n0, &c.n11, &c.nm11, &c.n2, &c.n13, &c.nm13, &c.n4})
        if (*v < 0) throw InexactDivision("closed-form census produced a negative counter");
    return c;
}

struct NamedCheck {
    std::string name;
    BigInt lhs, rhs;
    bool ok = false;
};

inline NamedCheck make_check(std::string name, BigInt lhs, BigInt rhs) {
    bool ok = lhs == rhs;
    return {std::move(name), std::move(lhs), std::move(rhs), ok};
}

// Closed-form right-hand sides of the moment identities (k = 1..4).
inline BigInt moment_rhs(int k, int p, int m) {
    if (m < 1 || m % 2 == 0 || m % 3 == 0) throw BadParams("moments need odd m with 3 not dividing m");
    const BigInt P = p;
    const BigInt p3m = bpow(P, 3 * m);
    switch (k) {
        case 1:
        case 2:
            if (p % 4 != 3 || !is_prime(p)) throw BadParams("moments 1-3 need a prime p = 3 mod 4");
            return p3m;
        case 3:
            if (p % 4 != 3 || !is_prime(p)) throw BadParams("moments 1-3 need a prime p = 3 mod 4");
            return ((P + 1) * (bpow(P, m) - 1) + 1) * p3m;
        case 4: {
            if (p != 3) throw BadParams("the fourth moment is established for p = 3 only");
            BigInt qm1 = bpow(P, m) - 1;
            return (8 * qm1 * qm1 + 1) * p3m;
        }
        default:
            throw BadParams("moment_rhs supports k = 1..4");
    }
}

struct MomentCheck {
    BigInt lhs, rhs;
    bool ok = false;
};

// Census-weighted power sum of the exact S values (k = 1..4), or the implied
// M5 solution count for k = 5. Always computed in Z[zeta_3]; a nonrational
// result means the classification is broken.
inline MomentCheck moment_check(const RankCensus& census, int k, int p, int m) {
    if (p != 3) throw BadParams("moment_check requires p = 3");
    if (k < 1 || k > 5) throw BadParams("moment_check supports k = 1..5");
    const std::array<std::array<BigInt, 2>, 5> mult = {{{census.n0, census.n0},
                                                        {census.n11, census.nm11},
                                                        {census.n2, census.n2},
                                                        {census.n13, census.nm13},
                                                        {census.n4, census.n4}}};
    CyclotomicInteger sum(0);
    for (int j = 0; j < 5; ++j) {
        CyclotomicInteger splus =
            (j % 2 == 1) ? CyclotomicInteger::integer(bpow(3, static_cast<unsigned>((m + j) / 2)))
                         : CyclotomicInteger::sqrt_m3(static_cast<unsigned>((m + j - 1) / 2));
        sum = sum + mult[j][0] * splus.pow(static_cast<unsigned>(k));
        sum = sum + mult[j][1] * (-splus).pow(static_cast<unsigned>(k));
    }
    sum = sum + CyclotomicInteger::integer(bpow(3, static_cast<unsigned>(m))).pow(static_cast<unsigned>(k));
    if (!sum.is_rational())
        throw NonRationalMoment("moment " + std::to_string(k) + " is not a rational integer");

    MomentCheck out;
    if (k <= 4) {
        out.lhs = sum.a;
        out.rhs = moment_rhs(k, p, m);
    } else {
        out.lhs = exact_div(sum.a, bpow(3, static_cast<unsigned>(3 * m)), "implied M5");
        BigInt inner = census.n11 - census.nm11 + bpow(3, 5) * (census.n13 - census.nm13);
        if (m <= 5)
            out.rhs = bpow(3, static_cast<unsigned>(2 * m)) + bpow(3, static_cast<unsigned>((5 - m) / 2)) * inner;
        else
            out.rhs = bpow(3, static_cast<unsigned>(2 * m)) +
                      exact_div(inner, bpow(3, static_cast<unsigned>((m - 5) / 2)), "M5 scaling");
        if (out.rhs < 0) throw Error("implied M5 is negative");
    }
    out.ok = out.lhs == out.rhs;
    return out;
}

// The linear identities satisfied by the counters (partition, first three
// moments restated, and the fourth-moment identity).
inline std::vector<NamedCheck> census_identities(const RankCensus& c, int p, int m) {
    const BigInt P = p;
    const BigInt pm = bpow(P, m);
    std::vector<NamedCheck> out;
    out.push_back(make_check("partition", c.total_nonzero_triples(), bpow(P, 3 * m) - 1));
    out.push_back(make_check("moment1_linear", (c.n11 - c.nm11) + P * (c.n13 - c.nm13),
                             bpow(P, (m - 1) / 2) * (bpow(P, 2 * m) - 1)));
    out.push_back(make_check("moment2_linear",
                             -2 * (c.n0 + P * P * c.n2 + bpow(P, 4) * c.n4) + P * (c.n11 + c.nm11) +
                                 bpow(P, 3) * (c.n13 + c.nm13),
                             pm * (pm - 1)));
    out.push_back(make_check("moment3_linear", (c.n11 - c.nm11) + bpow(P, 3) * (c.n13 - c.nm13),
                             (P + 1) * bpow(P, 3 * (m - 1) / 2) * (pm - 1)));
    out.push_back(make_check("moment4_linear",
                             2 * c.n0 + P * P * (c.n11 + c.nm11) + bpow(P, 4) * 2 * c.n2 +
                                 bpow(P, 6) * (c.n13 + c.nm13) + bpow(P, 8) * 2 * c.n4,
                             (8 * (pm - 1) * (pm - 1) - pm + 1) * pm));
    return out;
}

}  // namespace tcw
