#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcw/census.hpp"
#include "tcw/common.hpp"
#include "tcw/cyclotomic.hpp"
#include "tcw/expsum.hpp"
#include "tcw/field.hpp"
#include "tcw/quadform.hpp"

namespace tcw {

// Cyclic code of length p^m - 1 given by the exponents s of its non-conjugate
// nonzeros pi^{-s}; codewords are c_i = sum_lambda Tr(coeff_lambda pi^{i s_lambda}).
struct CodeSpec {
    int p = 3;
    int m = 0;
    std::vector<std::uint64_t> exponents;
    std::uint64_t length = 0;

    int iota() const { return static_cast<int>(exponents.size()); }
};

inline CodeSpec c1_spec(int p, int m) {
    CodeSpec s;
    s.p = p;
    s.m = m;
    const std::uint64_t pp = static_cast<std::uint64_t>(p);
    s.exponents = {2, pp + 1, pp * pp + 1};
    s.length = upow(pp, static_cast<unsigned>(m)) - 1;
    return s;
}

inline CodeSpec c2_spec(int p, int m) {
    CodeSpec s = c1_spec(p, m);
    s.exponents.insert(s.exponents.begin(), 1);
    return s;
}

// Orbit of s under multiplication by p modulo p^m - 1, in orbit order.
inline std::vector<std::uint64_t> cyclotomic_coset(int p, int m, std::uint64_t s) {
    const std::uint64_t n = upow(static_cast<std::uint64_t>(p), static_cast<unsigned>(m)) - 1;
    if (s >= n) throw BadParams("coset representative must satisfy 0 <= s < p^m - 1");
    std::vector<std::uint64_t> orbit{s};
    std::uint64_t v = s * p % n;
    while (v != s) {
        orbit.push_back(v);
        v = v * p % n;
    }
    return orbit;
}

// The nonzeros are non-conjugate iff the cosets of the exponents are disjoint.
inline bool nonconjugate_nonzeros(const CodeSpec& spec) {
    std::vector<std::vector<std::uint64_t>> cosets;
    for (std::uint64_t s : spec.exponents) cosets.push_back(cyclotomic_coset(spec.p, spec.m, s));
    for (std::size_t i = 0; i < cosets.size(); ++i)
        for (std::size_t j = i + 1; j < cosets.size(); ++j)
            for (std::uint64_t a : cosets[i])
                for (std::uint64_t b : cosets[j])
                    if (a == b) return false;
    return true;
}

struct WeightDistribution {
    CodeSpec code;
    bool includes_zero_word = false;
    std::map<std::uint64_t, BigInt> entries;  // weight -> multiplicity

    BigInt total_words() const {
        BigInt s = 0;
        for (const auto& [w, n] : entries) s += n;
        return s;
    }
};

namespace detail {

inline void require_c1_params(int p, int m) {
    if (p != 3) throw BadParams("weight distributions are established for p = 3");
    if (m <= 1 || m % 2 == 0) throw BadParams("m must be an odd integer > 1");
    if (m % 3 == 0) throw BadParams("m must not be divisible by 3");
}

inline void require_c2_params(int p, int m) {
    require_c1_params(p, m);
    if (m % 4 != 1) throw BadParams("m must be = 1 mod 4 for code c2");
}

inline void add_row(WeightDistribution& wd, const BigInt& w, const BigInt& mult) {
    if (mult == 0) return;  // zero-multiplicity rows are dropped from output
    if (mult < 0) throw Error("internal: negative multiplicity");
    if (w < 0 || w > BigInt(wd.code.length)) throw Error("internal: weight outside [0, length]");
    wd.entries[w.convert_to<std::uint64_t>()] += mult;
}

}  // namespace detail

// Upfront validation of the (code, p, m) combination, for callers that want
// to fail before any enumeration starts.
inline void validate_code_params(bool is_c2, int p, int m) {
    if (is_c2)
        detail::require_c2_params(p, m);
    else
        detail::require_c1_params(p, m);
}

// Five-weight distribution of the code with nonzeros pi^{-2}, pi^{-(p+1)},
// pi^{-(p^2+1)}, from the census counters.
inline WeightDistribution c1_distribution(const RankCensus& c, int p, int m, bool include_zero = false) {
    detail::require_c1_params(p, m);
    WeightDistribution wd;
    wd.code = c1_spec(p, m);
    wd.includes_zero_word = include_zero;
    const BigInt P = p;
    const BigInt w0 = bpow(P, m - 1) * (p - 1);
    const BigInt off1 = (P - 1) * bpow(P, (m - 1) / 2);
    const BigInt off3 = (P - 1) * bpow(P, (m + 1) / 2);
    detail::add_row(wd, w0, 2 * (c.n0 + c.n2 + c.n4));
    detail::add_row(wd, w0 - off1, c.n11);
    detail::add_row(wd, w0 + off1, c.nm11);
    detail::add_row(wd, w0 - off3, c.n13);
    detail::add_row(wd, w0 + off3, c.nm13);
    if (include_zero) wd.entries[0] += 1;
    return wd;
}

// Eleven-row distribution of the code with nonzeros pi^{-1}, pi^{-2},
// pi^{-(p+1)}, pi^{-(p^2+1)}; rows that vanish are omitted from the output.
inline WeightDistribution c2_distribution(const RankCensus& c, int p, int m, bool include_zero = false) {
    detail::require_c2_params(p, m);
    WeightDistribution wd;
    wd.code = c2_spec(p, m);
    wd.includes_zero_word = include_zero;
    const BigInt P = p;
    const BigInt pm = bpow(P, m);
    const BigInt w0 = bpow(P, m - 1) * (p - 1);
    const auto pk = [&](int k) { return bpow(P, k); };

    // R' = 0
    detail::add_row(wd, w0,
                    2 * c.n0 * pk(m - 1) + (c.n11 + c.nm11) * (pm - pk(m - 1)) +
                        2 * c.n2 * (pm - 2 * pk(m - 3)) + (c.n13 + c.nm13) * (pm - pk(m - 3)) +
                        2 * c.n4 * (pm - 2 * pk(m - 5)) + pm - 1);
    // R' = -p^{(m+1)/2} and +p^{(m+1)/2}
    detail::add_row(wd, w0 + pk((m - 1) / 2),
                    2 * c.n0 * (pk(m - 1) - pk((m - 1) / 2)) + 2 * c.n11 * (pk(m - 2) - pk((m - 3) / 2)));
    detail::add_row(wd, w0 - pk((m - 1) / 2),
                    2 * c.n0 * (pk(m - 1) + pk((m - 1) / 2)) + 2 * c.nm11 * (pk(m - 2) + pk((m - 3) / 2)));
    // R' = +-p^{(m+3)/2}
    detail::add_row(wd, w0 - pk((m + 1) / 2),
                    2 * c.n2 * (pk(m - 3) + pk((m - 3) / 2)) + 2 * c.nm13 * (pk(m - 4) + pk((m - 5) / 2)));
    detail::add_row(wd, w0 + pk((m + 1) / 2),
                    2 * c.n2 * (pk(m - 3) - pk((m - 3) / 2)) + 2 * c.n13 * (pk(m - 4) - pk((m - 5) / 2)));
    // R' = +-(p-1)p^{(m+1)/2}
    detail::add_row(wd, w0 - (P - 1) * pk((m - 1) / 2), c.n11 * (pk(m - 2) + (P - 1) * pk((m - 3) / 2)));
    detail::add_row(wd, w0 + (P - 1) * pk((m - 1) / 2), c.nm11 * (pk(m - 2) - (P - 1) * pk((m - 3) / 2)));
    // R' = +-(p-1)p^{(m+3)/2}
    detail::add_row(wd, w0 - (P - 1) * pk((m + 1) / 2), c.n13 * (pk(m - 4) + (P - 1) * pk((m - 5) / 2)));
    detail::add_row(wd, w0 + (P - 1) * pk((m + 1) / 2), c.nm13 * (pk(m - 4) - (P - 1) * pk((m - 5) / 2)));
    // R' = -+p^{(m+5)/2}
    detail::add_row(wd, w0 + pk((m + 3) / 2), 2 * c.n4 * (pk(m - 5) - pk((m - 5) / 2)));
    detail::add_row(wd, w0 - pk((m + 3) / 2), 2 * c.n4 * (pk(m - 5) + pk((m - 5) / 2)));

    if (include_zero) wd.entries[0] += 1;
    return wd;
}

// Number of nonzero (alpha, beta, gamma) whose form has the given rank and
// Legendre class of Delta. For odd ranks both classes hold n_j forms; for
// even ranks the Delta class maps to the sign of S through (-1)^{floor(r/2)}.
inline BigInt table2_group_count(const RankCensus& cen, int rank, int delta_sign, int m) {
    const int idx = m - rank;
    if (idx == 0) return cen.n0;
    if (idx == 2) return cen.n2;
    if (idx == 4) return cen.n4;
    const bool flip = ((rank / 2) % 2) != 0;
    const int s_sign = flip ? -delta_sign : delta_sign;
    if (idx == 1) return s_sign > 0 ? cen.n11 : cen.nm11;
    if (idx == 3) return s_sign > 0 ? cen.n13 : cen.nm13;
    throw BadRank("rank outside [m-4, m]");
}

// One row of the shifted-sum table: the value class of S' and how many
// (alpha, beta, gamma, delta) tuples attain it. c = -1 marks the S' = 0 row.
struct Table2Row {
    int rank = 0;
    int delta_sign = +1;  // legendre(Delta)
    int c = -1;
    CyclotomicInteger sprime;
    BigInt multiplicity;
};

// The twenty (rank, Delta)-groups of four rows each, from the census
// counters, for nonzero (alpha, beta, gamma) and all delta.
inline std::vector<Table2Row> table2_rows(const RankCensus& cen, int p, int m) {
    detail::require_c2_params(p, m);
    const BigInt pm = bpow(p, static_cast<unsigned>(m));
    std::vector<Table2Row> rows;
    for (int idx = 0; idx <= 4; ++idx) {
        const int r = m - idx;
        for (int dsgn : {+1, -1}) {
            const BigInt group = table2_group_count(cen, r, dsgn, m);
            const ExpSumClass cls{r, dsgn};
            const BigInt pr1 = bpow(p, static_cast<unsigned>(r - 1));

            rows.push_back({r, dsgn, -1, CyclotomicInteger(0), group * (pm - bpow(p, static_cast<unsigned>(r)))});
            if (r % 2 == 0) {
                const int e = ((r / 2) % 2 == 0 ? +1 : -1) * dsgn;  // eta((-1)^{r/2} Delta)
                const BigInt half = bpow(p, static_cast<unsigned>((r - 2) / 2));
                for (int c = 0; c < 3; ++c) {
                    BigInt mult = c == 0 ? BigInt(pr1 + (p - 1) * e * half) : BigInt(pr1 - e * half);
                    rows.push_back({r, dsgn, c, s_value(cls, p, m).times_zeta_pow(c), group * mult});
                }
            } else {
                const int e = (((r - 1) / 2) % 2 == 0 ? +1 : -1) * dsgn;  // eta((-1)^{(r-1)/2} Delta)
                const BigInt half = bpow(p, static_cast<unsigned>((r - 1) / 2));
                for (int c = 0; c < 3; ++c) {
                    BigInt mult = c == 0 ? pr1 : (c == 1 ? BigInt(pr1 - e * half) : BigInt(pr1 + e * half));
                    rows.push_back({r, dsgn, c, s_value(cls, p, m).times_zeta_pow(c), group * mult});
                }
            }
        }
    }
    return rows;
}

// Hamming weight of one codeword by direct evaluation over all positions.
inline std::uint64_t codeword_weight(const FieldCtx& ctx, const CodeSpec& spec,
                                     const std::vector<FieldElement>& coeffs) {
    if (static_cast<int>(coeffs.size()) != spec.iota())
        throw ArityMismatch("codeword_weight: expected " + std::to_string(spec.iota()) + " coefficients");
    const std::uint64_t n = ctx.order();
    const int p = ctx.p();
    std::uint64_t w = 0;
    for (std::uint64_t i = 0; i < spec.length; ++i) {
        int t = 0;
        for (int lam = 0; lam < spec.iota(); ++lam) {
            if (coeffs[lam].code == 0) continue;
            t += ctx.trace(ctx.mul(coeffs[lam], ctx.antilog(i * spec.exponents[lam] % n)));
        }
        if (t % p != 0) ++w;
    }
    return w;
}

namespace detail {

inline std::uint64_t weight_from_r(const BigInt& rsum, int p, int m, std::uint64_t length) {
    const BigInt w = bpow(p, static_cast<unsigned>(m - 1)) * (p - 1) - exact_div(rsum, p, "weight");
    if (w < 0 || w > BigInt(length)) throw Error("internal: predicted weight out of range");
    return w.convert_to<std::uint64_t>();
}

}  // namespace detail

// Closed-form weight prediction for a c1 coefficient triple.
inline std::uint64_t predicted_weight_c1(const FieldCtx& ctx, FieldElement alpha, FieldElement beta,
                                         FieldElement gamma) {
    const ExpSumClass cls = classify(ctx, alpha, beta, gamma);
    return detail::weight_from_r(r_value(cls, ctx.p(), ctx.m()), ctx.p(), ctx.m(), ctx.order());
}

// Closed-form weight prediction for a c2 tuple (delta, alpha, beta, gamma).
inline std::uint64_t predicted_weight_c2(const FieldCtx& ctx, FieldElement delta, FieldElement alpha,
                                         FieldElement beta, FieldElement gamma) {
    const Diagonalization d = diagonalize(gram_matrix(ctx, alpha, beta, gamma), ctx.p());
    const ExpSumClass cls = class_of(d, ctx.p());
    const ShiftResult shift = linear_shift(d, delta_vector(ctx, delta), ctx.p());
    return detail::weight_from_r(rprime_value(cls, shift, ctx.p(), ctx.m()), ctx.p(), ctx.m(),
                                 ctx.order());
}

struct Mismatch {
    std::vector<std::uint32_t> coeff_codes;
    std::uint64_t predicted = 0;
    std::uint64_t observed = 0;
};

struct VerifyReport {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t mismatches = 0;
    std::vector<Mismatch> first_mismatches;  // at most 5 kept
};

// Seeded comparison of direct codeword evaluation against the closed-form
// prediction; the theorem says the mismatch count is zero.
inline VerifyReport sample_verify(const FieldCtx& ctx, const CodeSpec& spec, std::uint64_t samples,
                                  std::uint64_t seed) {
    const bool is_c2 = spec.exponents == c2_spec(spec.p, spec.m).exponents;
    if (!is_c2 && spec.exponents != c1_spec(spec.p, spec.m).exponents)
        throw BadParams("sample_verify supports the c1/c2 nonzero sets only");
    VerifyReport rep;
    rep.samples = samples;
    rep.seed = seed;
    Rng rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::vector<FieldElement> coeffs(spec.iota());
        for (auto& e : coeffs) e = FieldElement{static_cast<std::uint32_t>(rng.below(ctx.q()))};
        const std::uint64_t observed = codeword_weight(ctx, spec, coeffs);
        const std::uint64_t predicted =
            is_c2 ? predicted_weight_c2(ctx, coeffs[0], coeffs[1], coeffs[2], coeffs[3])
                  : predicted_weight_c1(ctx, coeffs[0], coeffs[1], coeffs[2]);
        if (observed != predicted) {
            ++rep.mismatches;
            if (rep.first_mismatches.size() < 5) {
                Mismatch mm;
                for (auto e : coeffs) mm.coeff_codes.push_back(e.code);
                mm.predicted = predicted;
                mm.observed = observed;
                rep.first_mismatches.push_back(mm);
            }
        }
    }
    return rep;
}

// How many delta give S' = 0 and each c in {0,1,2} for one fixed form,
// counted by running the shift system over every delta in F_q.
inline std::array<BigInt, 4> delta_histogram(const FieldCtx& ctx, const Diagonalization& d) {
    std::array<BigInt, 4> hist{0, 0, 0, 0};
    for (std::uint32_t code = 0; code < ctx.q(); ++code) {
        const ShiftResult s = linear_shift(d, delta_vector(ctx, FieldElement{code}), ctx.p());
        if (!s.solvable)
            ++hist[0];
        else
            ++hist[1 + s.c];
    }
    return hist;
}

// Structural checks on a produced distribution: total mass and the exact
// balance identity p * sum w A_w = length * (p-1) * q^iota over all words.
inline std::vector<NamedCheck> distribution_checks(const WeightDistribution& wd) {
    const BigInt words = bpow(wd.code.p, static_cast<unsigned>(wd.code.iota() * wd.code.m));
    BigInt nonzero_mass = 0, weighted = 0;
    for (const auto& [w, n] : wd.entries) {
        if (w > 0) nonzero_mass += n;
        weighted += BigInt(w) * n;
    }
    std::vector<NamedCheck> out;
    out.push_back(make_check("mass_nonzero_words", nonzero_mass, words - 1));
    out.push_back(make_check("mean_weight_balance", BigInt(wd.code.p) * weighted,
                             BigInt(wd.code.length) * (wd.code.p - 1) * words));
    return out;
}

}  // namespace tcw
