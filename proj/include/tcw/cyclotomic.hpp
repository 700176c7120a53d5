#pragma once

#include <string>

#include "tcw/common.hpp"

namespace tcw {

// Element a + b*zeta of Z[zeta_3], reduced by 1 + zeta + zeta^2 = 0.
// Every exponential sum value in this project lives here exactly:
// the rational integer n is (n, 0) and sqrt(-3) = zeta - zeta^2 = (1, 2).
struct CyclotomicInteger {
    BigInt a;
    BigInt b;

    CyclotomicInteger() : a(0), b(0) {}
    CyclotomicInteger(BigInt ra, BigInt rb) : a(std::move(ra)), b(std::move(rb)) {}
    explicit CyclotomicInteger(long long n) : a(n), b(0) {}

    static CyclotomicInteger integer(const BigInt& n) { return {n, 0}; }
    // sqrt(-3) * 3^k
    static CyclotomicInteger sqrt_m3(unsigned k = 0) {
        BigInt t = bpow(3, k);
        return {t, 2 * t};
    }

    bool is_rational() const { return b == 0; }
    bool is_zero() const { return a == 0 && b == 0; }

    friend CyclotomicInteger operator+(const CyclotomicInteger& x, const CyclotomicInteger& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend CyclotomicInteger operator-(const CyclotomicInteger& x, const CyclotomicInteger& y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend CyclotomicInteger operator-(const CyclotomicInteger& x) { return {-x.a, -x.b}; }
    // (a + b z)(c + d z) = ac - bd + (ad + bc - bd) z   [z^2 = -1 - z]
    friend CyclotomicInteger operator*(const CyclotomicInteger& x, const CyclotomicInteger& y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    friend CyclotomicInteger operator*(const BigInt& s, const CyclotomicInteger& x) {
        return {s * x.a, s * x.b};
    }
    friend bool operator==(const CyclotomicInteger& x, const CyclotomicInteger& y) {
        return x.a == y.a && x.b == y.b;
    }

    // multiply by zeta^c, c in {0, 1, 2}
    CyclotomicInteger times_zeta_pow(int c) const {
        c %= 3;
        if (c < 0) c += 3;
        if (c == 0) return *this;
        if (c == 1) return {-b, a - b};        // (a + b z) z = -b + (a-b) z
        return {b - a, -a};                    // times z^2
    }

    CyclotomicInteger pow(unsigned k) const {
        CyclotomicInteger r(1);
        CyclotomicInteger base = *this;
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    std::string str() const {
        if (b == 0) return a.str();
        std::string s;
        if (a != 0) s += a.str();
        if (b > 0 && a != 0) s += "+";
        if (b == -1)
            s += "-";
        else if (b != 1)
            s += b.str() + "*";
        s += "zeta3";
        return s;
    }
};

}  // namespace tcw
