#pragma once

#include <cstdint>
#include <vector>

#include "tcw/common.hpp"
#include "tcw/field.hpp"

namespace tcw {

// Symmetric m x m matrix over F_p.
struct SymmetricMatrix {
    int n = 0;
    std::vector<std::uint8_t> e;  // row-major, n*n

    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int order) : n(order), e(static_cast<std::size_t>(order) * order, 0) {}

    std::uint8_t& at(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
    std::uint8_t at(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }

    bool symmetric() const {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }
};

// Congruence diagonalization M H M^T = diag(d_0..d_{r-1}, 0, ..., 0).
struct Diagonalization {
    int n = 0;
    int rank = 0;
    std::vector<std::uint8_t> transform;  // M, row-major n*n, invertible
    std::vector<std::uint8_t> diag;       // length n, nonzero entries first
};

// (rank, Legendre class of the diagonal product Delta). eps is the Legendre
// symbol of Delta, with the empty product Delta = 1 for rank 0. The sign of
// the exponential sum S itself carries the extra i^rank factor; see expsum.
struct ExpSumClass {
    int rank = 0;
    int eps = +1;  // legendre(Delta) in {+1, -1}
};

// Outcome of the linear-shift system 2YH + A = 0.
struct ShiftResult {
    bool solvable = false;
    int c = 0;  // defined only when solvable
};

inline int legendre(long long a, int p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    // Euler's criterion a^{(p-1)/2} mod p.
    long long r = 1, b = a;
    int e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? +1 : -1;
}

inline int inv_mod(int a, int p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw BadParams("inv_mod(0)");
    for (int x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw BadParams("inv_mod: p not prime?");
}

// f(x) = alpha x^2 + beta x^{p+1} + gamma x^{p^2+1}
inline FieldElement eval_form(const FieldCtx& ctx, FieldElement alpha, FieldElement beta,
                              FieldElement gamma, FieldElement x) {
    const std::uint64_t p = static_cast<std::uint64_t>(ctx.p());
    FieldElement r = ctx.mul(alpha, ctx.pow(x, 2));
    r = ctx.add(r, ctx.mul(beta, ctx.pow(x, p + 1)));
    r = ctx.add(r, ctx.mul(gamma, ctx.pow(x, p * p + 1)));
    return r;
}

// Gram matrix of X -> Tr(f(x)) in the polynomial basis, via polarization:
// H[i][i] = Tr(f(b_i)), H[i][j] = (Tr(f(b_i+b_j)) - Tr(f(b_i)) - Tr(f(b_j))) / 2.
inline SymmetricMatrix gram_matrix(const FieldCtx& ctx, FieldElement alpha, FieldElement beta,
                                   FieldElement gamma) {
    const int m = ctx.m();
    const int p = ctx.p();
    const int inv2 = inv_mod(2, p);
    SymmetricMatrix h(m);
    std::vector<int> fdiag(m);
    std::vector<FieldElement> basis(m);
    for (int i = 0; i < m; ++i) {
        basis[i] = ctx.antilog(static_cast<std::uint64_t>(i));
        fdiag[i] = ctx.trace(eval_form(ctx, alpha, beta, gamma, basis[i]));
        h.at(i, i) = static_cast<std::uint8_t>(fdiag[i]);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int fij = ctx.trace(eval_form(ctx, alpha, beta, gamma, ctx.add(basis[i], basis[j])));
            int v = (fij - fdiag[i] - fdiag[j]) % p;
            if (v < 0) v += p;
            v = v * inv2 % p;
            h.at(i, j) = h.at(j, i) = static_cast<std::uint8_t>(v);
        }
    return h;
}

namespace detail {

// In-place symmetric congruence elimination. Appends the chosen pivots to
// `pivots` and returns the rank. Pivoting rule: prefer the first nonzero
// later diagonal entry (symmetric swap); if the whole remaining diagonal is
// zero, add row+column j into i for the first nonzero off-diagonal (i,j),
// which creates the nonzero diagonal entry 2*H[i][j] (p odd).
template <typename RowSwap, typename RowAdd, typename RowSub>
inline int eliminate_symmetric(std::uint8_t* h, int n, int p, std::uint8_t* pivots, RowSwap row_swap,
                               RowAdd row_add, RowSub row_sub) {
    auto H = [&](int i, int j) -> std::uint8_t& { return h[i * n + j]; };
    int rank = 0;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int j = k; j < n; ++j)
            if (H(j, j) != 0) {
                piv = j;
                break;
            }
        if (piv < 0) {
            int oi = -1, oj = -1;
            for (int i = k; i < n && oi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (H(i, j) != 0) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi < 0) break;  // remainder is zero
            for (int t = 0; t < n; ++t) H(oi, t) = static_cast<std::uint8_t>((H(oi, t) + H(oj, t)) % p);
            for (int t = 0; t < n; ++t) H(t, oi) = static_cast<std::uint8_t>((H(t, oi) + H(t, oj)) % p);
            row_add(oi, oj);
            piv = oi;
        }
        if (piv != k) {
            for (int t = 0; t < n; ++t) std::swap(H(k, t), H(piv, t));
            for (int t = 0; t < n; ++t) std::swap(H(t, k), H(t, piv));
            row_swap(k, piv);
        }
        const int d = H(k, k);
        const int dinv = inv_mod(d, p);
        for (int i = k + 1; i < n; ++i) {
            const int t = H(i, k);
            if (t == 0) continue;
            const int f = t * dinv % p;
            for (int t2 = k; t2 < n; ++t2)
                H(i, t2) = static_cast<std::uint8_t>((H(i, t2) + (p - f) * H(k, t2)) % p);
            for (int t2 = k; t2 < n; ++t2)
                H(t2, i) = static_cast<std::uint8_t>((H(t2, i) + (p - f) * H(t2, k)) % p);
            row_sub(i, k, f);
        }
        pivots[rank++] = static_cast<std::uint8_t>(d);
    }
    return rank;
}

}  // namespace detail

inline Diagonalization diagonalize(const SymmetricMatrix& hin, int p) {
    if (!hin.symmetric()) throw NotSymmetric("diagonalize requires a symmetric matrix");
    if (p < 3 || p % 2 == 0) throw BadParams("diagonalize requires odd p");
    const int n = hin.n;
    Diagonalization d;
    d.n = n;
    d.transform.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) d.transform[static_cast<std::size_t>(i) * n + i] = 1;
    std::vector<std::uint8_t> h = hin.e;
    std::vector<std::uint8_t> pivots(n, 0);
    auto M = [&](int i, int j) -> std::uint8_t& { return d.transform[static_cast<std::size_t>(i) * n + j]; };
    auto row_swap = [&](int a, int b) {
        for (int t = 0; t < n; ++t) std::swap(M(a, t), M(b, t));
    };
    auto row_add = [&](int a, int b) {
        for (int t = 0; t < n; ++t) M(a, t) = static_cast<std::uint8_t>((M(a, t) + M(b, t)) % p);
    };
    auto row_sub = [&](int a, int b, int f) {
        for (int t = 0; t < n; ++t) M(a, t) = static_cast<std::uint8_t>((M(a, t) + (p - f) * M(b, t)) % p);
    };
    d.rank = detail::eliminate_symmetric(h.data(), n, p, pivots.data(), row_swap, row_add, row_sub);
    d.diag.assign(n, 0);
    for (int i = 0; i < d.rank; ++i) d.diag[i] = pivots[i];
    return d;
}

inline ExpSumClass class_of(const Diagonalization& d, int p) {
    int prod = 1;
    for (int i = 0; i < d.rank; ++i) prod = prod * d.diag[i] % p;
    return {d.rank, d.rank == 0 ? +1 : legendre(prod, p)};
}

// Rank and Legendre class without accumulating the transform; h is clobbered.
inline ExpSumClass classify_gram_inplace(std::uint8_t* h, int n, int p) {
    if (n > 32) throw TooLarge("classify_gram_inplace supports order <= 32");
    std::uint8_t pivots[32];
    auto nop2 = [](int, int) {};
    auto nop3 = [](int, int, int) {};
    const int rank = detail::eliminate_symmetric(h, n, p, pivots, nop2, nop2, nop3);
    int prod = 1;
    for (int i = 0; i < rank; ++i) prod = prod * pivots[i] % p;
    return {rank, rank == 0 ? +1 : legendre(prod, p)};
}

inline ExpSumClass classify(const FieldCtx& ctx, FieldElement alpha, FieldElement beta,
                            FieldElement gamma) {
    SymmetricMatrix h = gram_matrix(ctx, alpha, beta, gamma);
    std::vector<std::uint8_t> buf = h.e;
    return classify_gram_inplace(buf.data(), h.n, ctx.p());
}

// Solve 2YH + A = 0 through the diagonalized form: A' = -A M^T is solvable
// iff its last n - rank coordinates vanish, and then c = -sum a'_i^2 / d_i.
inline ShiftResult linear_shift(const Diagonalization& d, const std::vector<int>& a, int p) {
    const int n = d.n;
    if (static_cast<int>(a.size()) != n) throw BadParams("linear_shift: vector length != matrix order");
    std::vector<int> ap(n, 0);
    for (int i = 0; i < n; ++i) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += static_cast<long long>(a[j]) * d.transform[static_cast<std::size_t>(i) * n + j];
        int v = static_cast<int>(s % p);
        ap[i] = (p - v) % p;  // A' = -A M^T
    }
    for (int i = d.rank; i < n; ++i)
        if (ap[i] != 0) return {false, 0};
    int c = 0;
    for (int i = 0; i < d.rank; ++i)
        c = (c + ap[i] * ap[i] % p * inv_mod(d.diag[i], p)) % p;
    return {true, (p - c) % p};
}

// Coordinates of the linear functional X -> Tr(delta * x) in the polynomial
// basis, i.e. A with Tr(delta x) = A X^T.
inline std::vector<int> delta_vector(const FieldCtx& ctx, FieldElement delta) {
    std::vector<int> a(ctx.m());
    for (int i = 0; i < ctx.m(); ++i)
        a[i] = ctx.trace(ctx.mul(delta, ctx.antilog(static_cast<std::uint64_t>(i))));
    return a;
}

}  // namespace tcw
