#pragma once

#include <cstdint>
#include <vector>

#include "tcw/common.hpp"
#include "tcw/census.hpp"
#include "tcw/field.hpp"
#include "tcw/quadform.hpp"

namespace tcw {

struct PowerSystemCount {
    int nvars = 0;
    bool homogeneous = true;
    BigInt count;
};

namespace detail {

// Per-element values of the three monomials x^2, x^{p+1}, x^{p^2+1}.
struct PowerSigs {
    std::vector<std::uint32_t> s2, s4, s10, neg;
};

inline PowerSigs power_sigs(const FieldCtx& ctx) {
    const std::uint64_t p = static_cast<std::uint64_t>(ctx.p());
    PowerSigs sig;
    const std::uint32_t q = ctx.q();
    sig.s2.resize(q);
    sig.s4.resize(q);
    sig.s10.resize(q);
    sig.neg.resize(q);
    for (std::uint32_t x = 0; x < q; ++x) {
        sig.s2[x] = ctx.pow({x}, 2).code;
        sig.s4[x] = ctx.pow({x}, p + 1).code;
        sig.s10[x] = ctx.pow({x}, p * p + 1).code;
        sig.neg[x] = ctx.neg({x}).code;
    }
    return sig;
}

inline void check_enum(std::uint64_t loop, std::uint64_t max_enum, const char* what) {
    if (loop > max_enum)
        throw TooLarge(std::string(what) + " needs a loop of " + std::to_string(loop) +
                       " iterations, above the enumeration guard");
}

// Solutions over pairs (x, y) of the simultaneous system with a fixed tail
// element t (t = 0 gives the homogeneous 2-variable system, t = 1 the
// "+1" inhomogeneous one).
inline BigInt count_pairs(const FieldCtx& ctx, const PowerSigs& sig, std::uint32_t t) {
    const std::uint32_t q = ctx.q();
    BigInt count = 0;
    for (std::uint32_t x = 0; x < q; ++x) {
        const FieldElement t2{sig.neg[ctx.add({sig.s2[x]}, {sig.s2[t]}).code]};
        const FieldElement t4{sig.neg[ctx.add({sig.s4[x]}, {sig.s4[t]}).code]};
        const FieldElement t10{sig.neg[ctx.add({sig.s10[x]}, {sig.s10[t]}).code]};
        for (std::uint32_t y = 0; y < q; ++y)
            if (sig.s2[y] == t2.code && sig.s4[y] == t4.code && sig.s10[y] == t10.code) ++count;
    }
    return count;
}

// Same with triples (x, y, z) and fixed tail t.
inline BigInt count_triples(const FieldCtx& ctx, const PowerSigs& sig, std::uint32_t t) {
    const std::uint32_t q = ctx.q();
    BigInt count = 0;
    for (std::uint32_t x = 0; x < q; ++x) {
        const std::uint32_t x2 = ctx.add({sig.s2[x]}, {sig.s2[t]}).code;
        const std::uint32_t x4 = ctx.add({sig.s4[x]}, {sig.s4[t]}).code;
        const std::uint32_t x10 = ctx.add({sig.s10[x]}, {sig.s10[t]}).code;
        for (std::uint32_t y = 0; y < q; ++y) {
            const std::uint32_t t2 = sig.neg[ctx.add({x2}, {sig.s2[y]}).code];
            const std::uint32_t t4 = sig.neg[ctx.add({x4}, {sig.s4[y]}).code];
            const std::uint32_t t10 = sig.neg[ctx.add({x10}, {sig.s10[y]}).code];
            for (std::uint32_t z = 0; z < q; ++z)
                if (sig.s2[z] == t2 && sig.s4[z] == t4 && sig.s10[z] == t10) ++count;
        }
    }
    return count;
}

}  // namespace detail

// Exact solution counts of the simultaneous power-sum systems
//   sum x_i^2 = sum x_i^{p+1} = sum x_i^{p^2+1} = 0   (homogeneous)
// or the same with a trailing +1 in each equation (inhomogeneous, one fewer
// free variable). The homogeneous 4-variable count splits over the last
// variable (w = 0, or w != 0 scaled to w = 1), so its loops stay at q^3.
inline PowerSystemCount count_power_system(const FieldCtx& ctx, int nvars, bool homogeneous,
                                           std::uint64_t max_enum = kDefaultMaxEnum) {
    if (ctx.p() != 3) throw BadParams("power-sum systems are counted for p = 3");
    if (nvars < 2 || nvars > 4) throw BadParams("count_power_system supports nvars in 2..4");
    if (!homogeneous && nvars == 2) throw BadParams("inhomogeneous count needs nvars >= 3");
    const std::uint64_t q = ctx.q();
    const auto sig = detail::power_sigs(ctx);

    PowerSystemCount out;
    out.nvars = nvars;
    out.homogeneous = homogeneous;
    if (homogeneous) {
        if (nvars == 2) {
            detail::check_enum(q * q, max_enum, "M2");
            out.count = detail::count_pairs(ctx, sig, 0);
        } else if (nvars == 3) {
            detail::check_enum(q * q * q, max_enum, "M3");
            out.count = detail::count_triples(ctx, sig, 0);
        } else {
            detail::check_enum(q * q * q, max_enum, "M4");
            out.count = (BigInt(q) - 1) * detail::count_triples(ctx, sig, 1) +
                        detail::count_triples(ctx, sig, 0);
        }
    } else {
        if (nvars == 3) {
            detail::check_enum(q * q, max_enum, "T3");
            out.count = detail::count_pairs(ctx, sig, 1);
        } else {
            detail::check_enum(q * q * q, max_enum, "T4");
            out.count = detail::count_triples(ctx, sig, 1);
        }
    }
    return out;
}

// Closed-form solution counts of diagonal quadratic equations over the prime
// field F_p: sum coeffs_i x_i^2 = b, all coefficients nonzero.
inline BigInt quad_solution_count(const std::vector<int>& coeffs, int b, int p) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) throw BadParams("quad_solution_count needs odd prime p");
    const int n = static_cast<int>(coeffs.size());
    if (n < 1) throw BadParams("quad_solution_count needs at least one coefficient");
    long long delta = 1;
    for (int cf : coeffs) {
        int v = cf % p;
        if (v < 0) v += p;
        if (v == 0) throw ZeroCoefficient("diagonal coefficient vanishes mod p");
        delta = delta * v % p;
    }
    int bb = b % p;
    if (bb < 0) bb += p;
    const int upsilon = bb == 0 ? p - 1 : -1;
    if (n % 2 == 0) {
        const int eta = legendre((n / 2) % 2 == 0 ? delta : -delta, p);
        return bpow(p, static_cast<unsigned>(n - 1)) +
               upsilon * eta * bpow(p, static_cast<unsigned>((n - 2) / 2));
    }
    const long long arg = ((n - 1) / 2) % 2 == 0 ? static_cast<long long>(bb) * delta
                                                 : -static_cast<long long>(bb) * delta;
    return bpow(p, static_cast<unsigned>(n - 1)) +
           legendre(arg, p) * bpow(p, static_cast<unsigned>((n - 1) / 2));
}

}  // namespace tcw
