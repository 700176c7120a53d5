#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcw/common.hpp"

namespace tcw {

// Element of GF(p^m) in polynomial-basis coordinates, packed little-endian
// base p: code = sum coords[i] * p^i. Equality of codes is coordinate-wise
// equality, so the representation is canonical.
struct FieldElement {
    std::uint32_t code = 0;
    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

struct FieldParams {
    int p = 3;
    int m = 1;
    // Monic modulus, coefficients low-to-high, size m+1, modulus[m] == 1.
    std::vector<int> modulus;
};

inline constexpr std::size_t kDefaultFieldGuard = 2'000'000;  // table entries (3^13 fits)

// GF(p^m) with precomputed log/antilog/trace/digit tables. Immutable after
// construction; all accessors are safe for shared concurrent reads.
class FieldCtx {
  public:
    int p() const { return params_.p; }
    int m() const { return params_.m; }
    std::uint32_t q() const { return q_; }
    std::uint32_t order() const { return q_ - 1; }  // |F_q*|
    const FieldParams& params() const { return params_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    // pi = class of x, a primitive element by the modulus invariant.
    FieldElement pi() const { return {antilog_[1]}; }

    FieldElement from_code(std::uint64_t code) const {
        if (code >= q_) throw BadParams("element code out of range");
        return {static_cast<std::uint32_t>(code)};
    }

    FieldElement from_coords(const std::vector<int>& coords) const {
        if (static_cast<int>(coords.size()) != params_.m)
            throw BadParams("coordinate vector must have length m");
        std::uint64_t code = 0, w = 1;
        for (int i = 0; i < params_.m; ++i) {
            int c = coords[i] % params_.p;
            if (c < 0) c += params_.p;
            code += static_cast<std::uint64_t>(c) * w;
            w *= params_.p;
        }
        return {static_cast<std::uint32_t>(code)};
    }

    std::vector<int> coords(FieldElement x) const {
        std::vector<int> out(params_.m);
        for (int i = 0; i < params_.m; ++i) out[i] = digit(x.code, i);
        return out;
    }

    int digit(std::uint32_t code, int i) const { return digits_[static_cast<std::size_t>(code) * params_.m + i]; }

    FieldElement add(FieldElement a, FieldElement b) const {
        std::uint32_t code = 0;
        std::uint32_t w = 1;
        for (int i = 0; i < params_.m; ++i) {
            int s = digit(a.code, i) + digit(b.code, i);
            if (s >= params_.p) s -= params_.p;
            code += static_cast<std::uint32_t>(s) * w;
            w *= params_.p;
        }
        return {code};
    }

    FieldElement neg(FieldElement a) const {
        std::uint32_t code = 0;
        std::uint32_t w = 1;
        for (int i = 0; i < params_.m; ++i) {
            int s = digit(a.code, i) == 0 ? 0 : params_.p - digit(a.code, i);
            code += static_cast<std::uint32_t>(s) * w;
            w *= params_.p;
        }
        return {code};
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.code == 0 || b.code == 0) return {0};
        std::uint64_t k = static_cast<std::uint64_t>(log_[a.code]) + log_[b.code];
        if (k >= order()) k -= order();
        return {antilog_[k]};
    }

    FieldElement scalar_mul(int a, FieldElement x) const {
        a %= params_.p;
        if (a < 0) a += params_.p;
        FieldElement r{0};
        for (int i = 0; i < a; ++i) r = add(r, x);
        return r;
    }

    FieldElement inv(FieldElement a) const {
        if (a.code == 0) throw BadParams("inverse of zero");
        std::uint32_t k = log_[a.code];
        return {antilog_[(order() - k) % order()]};
    }

    // x^e with 0^e = 0 for e >= 1 and x^0 = 1.
    FieldElement pow(FieldElement x, std::uint64_t e) const {
        if (e == 0) return one();
        if (x.code == 0) return zero();
        std::uint64_t k = (static_cast<std::uint64_t>(log_[x.code]) * (e % order())) % order();
        return {antilog_[k]};
    }

    // pi^k for any k >= 0.
    FieldElement antilog(std::uint64_t k) const { return {antilog_[k % order()]}; }

    // discrete log base pi; element must be nonzero.
    std::uint32_t log(FieldElement x) const {
        if (x.code == 0) throw BadParams("log of zero");
        return log_[x.code];
    }

    int trace(FieldElement x) const { return trace_[x.code]; }

    friend FieldCtx make_field(int p, int m, const std::optional<std::vector<int>>& modulus,
                               std::size_t max_table);

  private:
    FieldParams params_;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> antilog_;  // k -> code of pi^k, k in [0, q-1)
    std::vector<std::uint32_t> log_;      // code -> k, log_[0] unused
    std::vector<std::uint8_t> trace_;     // code -> Tr in [0, p)
    std::vector<std::uint8_t> digits_;    // code*m + i -> i-th base-p digit
};

namespace detail {

// Multiply the polynomial held in `c` (length m, low-to-high) by x modulo the
// monic modulus `mod` (length m+1).
inline void mul_by_x(std::vector<int>& c, const std::vector<int>& mod, int p) {
    const int m = static_cast<int>(c.size());
    int top = c[m - 1];
    for (int i = m - 1; i > 0; --i) c[i] = c[i - 1];
    c[0] = 0;
    if (top != 0) {
        for (int i = 0; i < m; ++i) {
            c[i] = (c[i] - top * mod[i]) % p;
            if (c[i] < 0) c[i] += p;
        }
    }
}

inline std::uint32_t pack(const std::vector<int>& c, int p) {
    std::uint64_t code = 0, w = 1;
    for (int v : c) {
        code += static_cast<std::uint64_t>(v) * w;
        w *= p;
    }
    return static_cast<std::uint32_t>(code);
}

// Attempt to build the antilog table for a candidate monic modulus. Succeeds
// iff x generates the full multiplicative group of order q-1, which also
// forces the modulus to be irreducible.
inline bool build_antilog(const std::vector<int>& mod, int p, int m, std::uint32_t q,
                          std::vector<std::uint32_t>& antilog) {
    if (mod[0] == 0) return false;  // x not invertible
    const std::uint32_t n = q - 1;
    antilog.assign(n, 0);
    std::vector<int> cur(m, 0);
    cur[0] = 1;
    antilog[0] = 1;
    for (std::uint32_t k = 1; k < n; ++k) {
        mul_by_x(cur, mod, p);
        std::uint32_t code = pack(cur, p);
        if (code == 1) return false;  // ord(x) = k < q-1
        antilog[k] = code;
    }
    mul_by_x(cur, mod, p);
    return pack(cur, p) == 1;  // x^{q-1} must close the cycle
}

}  // namespace detail

// Construct GF(p^m). With no modulus given, selects the lexicographically
// smallest primitive monic polynomial (coefficients compared low-to-high),
// which makes every derived table reproducible.
inline FieldCtx make_field(int p, int m, const std::optional<std::vector<int>>& modulus = std::nullopt,
                           std::size_t max_table = kDefaultFieldGuard) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw NonPrimeP("p must be an odd prime, got " + std::to_string(p));
    if (m < 1) throw BadParams("m must be >= 1");

    std::uint64_t q64 = 1;
    for (int i = 0; i < m; ++i) {
        q64 *= static_cast<std::uint64_t>(p);
        if (q64 > max_table)
            throw TooLarge("p^m = exceeds the field table guard (" + std::to_string(max_table) + " entries)");
    }
    const std::uint32_t q = static_cast<std::uint32_t>(q64);

    FieldCtx ctx;
    ctx.params_.p = p;
    ctx.params_.m = m;
    ctx.q_ = q;

    std::vector<int> mod;
    if (modulus) {
        mod = *modulus;
        if (static_cast<int>(mod.size()) != m + 1)
            throw BadParams("modulus must have m+1 coefficients (low-to-high)");
        for (int& c : mod) {
            c %= p;
            if (c < 0) c += p;
        }
        if (mod[m] != 1) throw BadParams("modulus must be monic");
        if (!detail::build_antilog(mod, p, m, q, ctx.antilog_))
            throw NonPrimitiveModulus("supplied modulus is not primitive over F_p");
    } else {
        // Lexicographic scan over (c_0, ..., c_{m-1}).
        std::vector<int> c(m, 0);
        bool found = false;
        while (true) {
            mod = c;
            mod.push_back(1);
            if (detail::build_antilog(mod, p, m, q, ctx.antilog_)) {
                found = true;
                break;
            }
            int i = m - 1;
            while (i >= 0 && c[i] == p - 1) c[i--] = 0;
            if (i < 0) break;
            ++c[i];
        }
        if (!found) throw NonPrimitiveModulus("no primitive polynomial found (internal)");
    }
    ctx.params_.modulus = mod;

    ctx.log_.assign(q, 0);
    for (std::uint32_t k = 0; k + 1 < q; ++k) ctx.log_[ctx.antilog_[k]] = k;

    ctx.digits_.assign(static_cast<std::size_t>(q) * m, 0);
    for (std::uint32_t code = 0; code < q; ++code) {
        std::uint32_t v = code;
        for (int i = 0; i < m; ++i) {
            ctx.digits_[static_cast<std::size_t>(code) * m + i] = static_cast<std::uint8_t>(v % p);
            v /= static_cast<std::uint32_t>(p);
        }
    }

    // Tr(b_i) for the basis b_i = pi^i, via Frobenius powers; the trace of any
    // element then follows by linearity over its digits.
    std::vector<int> basis_trace(m, 0);
    const std::uint32_t n = q - 1;
    for (int i = 0; i < m; ++i) {
        FieldElement acc{0};
        std::uint64_t e = i % n;
        for (int j = 0; j < m; ++j) {
            acc = ctx.add(acc, FieldElement{ctx.antilog_[e]});
            e = (e * static_cast<std::uint64_t>(p)) % n;
        }
        for (int d = 1; d < m; ++d)
            if (ctx.digit(acc.code, d) != 0) throw Error("internal: trace left the prime subfield");
        basis_trace[i] = ctx.digit(acc.code, 0);
    }

    ctx.trace_.assign(q, 0);
    for (std::uint32_t code = 0; code < q; ++code) {
        int t = 0;
        for (int i = 0; i < m; ++i) t += ctx.digit(code, i) * basis_trace[i];
        ctx.trace_[code] = static_cast<std::uint8_t>(t % p);
    }

    return ctx;
}

// Spec-level operation aliases.
inline int trace(const FieldCtx& ctx, FieldElement x) { return ctx.trace(x); }
inline FieldElement power_map(const FieldCtx& ctx, FieldElement x, std::uint64_t e) { return ctx.pow(x, e); }
inline std::vector<int> coordinates(const FieldCtx& ctx, FieldElement x) { return ctx.coords(x); }

}  // namespace tcw
