#pragma once

#include <array>
#include <cstdint>

#include "tcw/common.hpp"
#include "tcw/cyclotomic.hpp"
#include "tcw/field.hpp"
#include "tcw/quadform.hpp"

namespace tcw {

// Counts of x in F_q with Tr(f(x) + delta x) = 0, 1, 2. The exponential sum
// follows as S = N0 + N1 zeta + N2 zeta^2 = (N0 - N2) + (N1 - N2) zeta.
struct TraceHistogram {
    std::array<std::uint64_t, 3> counts{0, 0, 0};

    CyclotomicInteger value() const {
        BigInt n0(counts[0]), n1(counts[1]), n2(counts[2]);
        return {n0 - n2, n1 - n2};
    }
};

namespace detail {

inline void require_ternary(int p, const char* where) {
    if (p != 3) throw BadParams(std::string(where) + ": exact Z[zeta_3] values require p = 3");
}

inline void require_rank(int r, int m) {
    if (r < 0 || r > m) throw BadRank("rank must lie in [0, m]");
}

}  // namespace detail

// Sign of S relative to its magnitude: S = sign * p^{m-r/2} for even rank and
// S = sign * sqrt(-3) * p^{m-(r+1)/2} for odd rank. The i^r factor of the
// closed form folds into (-1)^{floor(r/2)} on top of legendre(Delta).
inline int sign_of_s(const ExpSumClass& cls) {
    return ((cls.rank / 2) % 2 == 0) ? cls.eps : -cls.eps;
}

// Exact value of S(alpha, beta, gamma) from its classification.
inline CyclotomicInteger s_value(const ExpSumClass& cls, int p, int m) {
    detail::require_ternary(p, "s_value");
    detail::require_rank(cls.rank, m);
    const int sgn = sign_of_s(cls);
    if (cls.rank % 2 == 0) {
        BigInt mag = bpow(p, static_cast<unsigned>(m - cls.rank / 2));
        return CyclotomicInteger::integer(sgn < 0 ? -mag : mag);
    }
    const unsigned k = static_cast<unsigned>(m - (cls.rank + 1) / 2);
    CyclotomicInteger v = CyclotomicInteger::sqrt_m3(k);
    return sgn < 0 ? -v : v;
}

// S'(alpha,...,delta) = zeta^c S when 2YH + A = 0 is solvable, else 0.
inline CyclotomicInteger sprime_value(const ExpSumClass& cls, const ShiftResult& shift, int p, int m) {
    if (!shift.solvable) return CyclotomicInteger(0);
    return s_value(cls, p, m).times_zeta_pow(shift.c);
}

// R = sum over a in F_p* of S(a alpha, a beta, a gamma): even rank gives
// eps_S (p-1) p^{m-r/2}, odd rank cancels to 0.
inline BigInt r_value(const ExpSumClass& cls, int p, int m) {
    detail::require_ternary(p, "r_value");
    detail::require_rank(cls.rank, m);
    if (cls.rank % 2 != 0) return 0;
    BigInt mag = (p - 1) * bpow(p, static_cast<unsigned>(m - cls.rank / 2));
    return sign_of_s(cls) < 0 ? -mag : mag;
}

// R' by the four-case rule. r' = m - ceil(r/2) matches the magnitudes of the
// shifted sums; verified against brute-force summation in the tests.
inline BigInt rprime_value(const ExpSumClass& cls, const ShiftResult& shift, int p, int m) {
    detail::require_ternary(p, "rprime_value");
    detail::require_rank(cls.rank, m);
    if (!shift.solvable) return 0;  // S' = 0
    const int sgn = sign_of_s(cls);
    if (cls.rank % 2 == 0) {
        const unsigned rp = static_cast<unsigned>(m - cls.rank / 2);
        if (shift.c == 0) {
            BigInt mag = (p - 1) * bpow(p, rp);
            return sgn < 0 ? -mag : mag;
        }
        BigInt mag = bpow(p, rp);
        return sgn < 0 ? mag : -mag;
    }
    if (shift.c == 0) return 0;
    const unsigned rp = static_cast<unsigned>(m - (cls.rank + 1) / 2);
    BigInt mag = bpow(p, rp + 1);
    return sgn * legendre(-shift.c, p) < 0 ? -mag : mag;
}

// Exhaustive trace histogram of f(x) + delta x over all of F_q.
inline TraceHistogram s_brute(const FieldCtx& ctx, FieldElement alpha, FieldElement beta,
                              FieldElement gamma, FieldElement delta = {0}) {
    detail::require_ternary(ctx.p(), "s_brute");
    TraceHistogram h;
    const std::uint32_t q = ctx.q();
    for (std::uint32_t code = 0; code < q; ++code) {
        FieldElement x{code};
        FieldElement v = eval_form(ctx, alpha, beta, gamma, x);
        v = ctx.add(v, ctx.mul(delta, x));
        ++h.counts[ctx.trace(v)];
    }
    return h;
}

}  // namespace tcw
