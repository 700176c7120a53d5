#pragma once

#include <vector>

#include "tcw/common.hpp"

namespace tcw {

enum class SchemeVariant { symmetric, skew };

// Parameters of the rank-metric association scheme on (skew-)symmetric
// matrices of order m over F_p: b = p^2 and c = p^{m(m+1)/(2n)} with
// n = floor((m+1)/2) for the symmetric scheme, c = p^{m(m-1)/(2n)} with
// n = floor(m/2) for the skew one.
struct SchemeParams {
    int p = 3;
    int m = 0;
    int d = 1;
    SchemeVariant variant = SchemeVariant::symmetric;

    int n() const { return variant == SchemeVariant::symmetric ? (m + 1) / 2 : m / 2; }

    BigInt b() const { return BigInt(p) * p; }

    BigInt c() const {
        const long long num = variant == SchemeVariant::symmetric
                                  ? static_cast<long long>(m) * (m + 1)
                                  : static_cast<long long>(m) * (m - 1);
        const long long den = 2LL * n();
        if (den == 0 || num % den != 0) throw BadParams("scheme exponent m(m+-1)/(2n) is not integral");
        return bpow(p, static_cast<unsigned>(num / den));
    }
};

// Gaussian binomial [x over k] with basis b, by the product formula; integral
// for integer x >= 0 and checked as such.
inline BigInt gauss_binom(int x, int k, const BigInt& b) {
    if (b < 2) throw BadParams("gauss_binom requires b >= 2");
    if (x < 0 || k < 0) throw BadParams("gauss_binom requires x, k >= 0");
    if (k == 0) return 1;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= bpow(b, static_cast<unsigned>(x)) - bpow(b, static_cast<unsigned>(i));
        den *= bpow(b, static_cast<unsigned>(k)) - bpow(b, static_cast<unsigned>(i));
    }
    return exact_div(num, den, "gauss_binom");
}

// Distance distribution a_0..a_n of an (m,d)-set meeting the Singleton bound
// (|Y| = c^{n-d+1}); the caller asserts the bound is met.
struct DistanceDistribution {
    std::vector<BigInt> a;

    BigInt sum() const {
        BigInt s = 0;
        for (const BigInt& v : a) s += v;
        return s;
    }
};

inline DistanceDistribution distance_distribution(const SchemeParams& sp) {
    const int n = sp.n();
    if (sp.d < 1 || sp.d > n) throw BadParams("scheme requires 1 <= d <= n");
    const BigInt b = sp.b();
    const BigInt c = sp.c();
    DistanceDistribution dist;
    dist.a.assign(n + 1, 0);
    dist.a[0] = 1;
    for (int i = 0; i <= n - sp.d; ++i) {
        BigInt acc = 0;
        for (int j = i; j <= n - sp.d; ++j) {
            const int t = j - i;
            BigInt term = bpow(b, static_cast<unsigned>(t * (t - 1) / 2)) * gauss_binom(j, i, b) *
                          gauss_binom(n, j, b) * (bpow(c, static_cast<unsigned>(n - sp.d + 1 - j)) - 1);
            acc += (t % 2 == 0) ? term : -term;
        }
        dist.a[n - i] = acc;
    }
    return dist;
}

}  // namespace tcw
