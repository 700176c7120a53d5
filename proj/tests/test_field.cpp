#include <catch2/catch_amalgamated.hpp>

#include "tcw/common.hpp"
#include "tcw/field.hpp"

using namespace tcw;

namespace {

// Independent order-of-x oracle: plain polynomial arithmetic on coefficient
// vectors, no field tables involved.
int order_of_x(const std::vector<int>& modulus, int p, int m) {
    std::vector<int> cur(m, 0);
    cur[0] = 1;
    const int q = static_cast<int>(upow(p, m));
    for (int k = 1; k <= q; ++k) {
        int top = cur[m - 1];
        for (int i = m - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (int i = 0; i < m && top; ++i) cur[i] = ((cur[i] - top * modulus[i]) % p + p) % p;
        bool is_one = cur[0] == 1;
        for (int i = 1; i < m; ++i) is_one = is_one && cur[i] == 0;
        if (is_one) return k;
    }
    return -1;
}

FieldElement pow_oracle(const FieldCtx& ctx, FieldElement x, std::uint64_t e) {
    FieldElement r = ctx.one(), b = x;
    while (e) {
        if (e & 1) r = ctx.mul(r, b);
        b = ctx.mul(b, b);
        e >>= 1;
    }
    return r;
}

}  // namespace

TEST_CASE("prime field GF(3) has pi = 2", "[field]") {
    auto ctx = make_field(3, 1);
    CHECK(ctx.q() == 3);
    CHECK(ctx.pi().code == 2);
    CHECK(ctx.mul(ctx.pi(), ctx.pi()).code == 1);
}

TEST_CASE("default modulus for GF(3^5) is primitive with order 242", "[field]") {
    auto ctx = make_field(3, 5);
    CHECK(order_of_x(ctx.params().modulus, 3, 5) == 242);
    CHECK(ctx.pow(ctx.pi(), 242) == ctx.one());
    for (std::uint32_t k = 1; k < 242; ++k) CHECK(ctx.antilog(k) != ctx.one());
}

TEST_CASE("reducible or non-primitive moduli are rejected", "[field]") {
    // x^5 + x + 1 has the root 1 over F_3
    CHECK_THROWS_AS(make_field(3, 5, std::vector<int>{1, 1, 0, 0, 0, 1}), NonPrimitiveModulus);
    // x^5 + 1 is divisible by x + 1
    CHECK_THROWS_AS(make_field(3, 5, std::vector<int>{1, 0, 0, 0, 0, 1}), NonPrimitiveModulus);
    // x^5 (constant term 0)
    CHECK_THROWS_AS(make_field(3, 5, std::vector<int>{0, 0, 0, 0, 0, 1}), NonPrimitiveModulus);
    CHECK_THROWS_AS(make_field(3, 5, std::vector<int>{1, 0, 0, 0, 2}), BadParams);  // not m+1 coeffs
}

TEST_CASE("parameter validation", "[field]") {
    CHECK_THROWS_AS(make_field(4, 2), NonPrimeP);
    CHECK_THROWS_AS(make_field(2, 3), NonPrimeP);
    CHECK_THROWS_AS(make_field(9, 1), NonPrimeP);
    CHECK_THROWS_AS(make_field(3, 0), BadParams);
    CHECK_THROWS_AS(make_field(3, 14), TooLarge);  // 3^14 over the table guard
}

TEST_CASE("explicitly supplied primitive modulus works", "[field]") {
    auto ctx = make_field(3, 5, std::vector<int>{1, 2, 0, 0, 0, 1});  // x^5 + 2x + 1
    CHECK(order_of_x(ctx.params().modulus, 3, 5) == 242);
    CHECK(ctx.trace(ctx.one()) == 2);
}

TEST_CASE("trace values and additivity", "[field]") {
    auto ctx = make_field(3, 5);
    CHECK(ctx.trace(ctx.zero()) == 0);
    CHECK(ctx.trace(ctx.one()) == 2);  // m mod p

    // Frobenius-power summation oracle for trace(pi)
    FieldElement acc = ctx.zero();
    std::uint64_t e = 1;
    for (int i = 0; i < 5; ++i) {
        acc = ctx.add(acc, ctx.pow(ctx.pi(), e));
        e *= 3;
    }
    CHECK(acc.code < 3u);  // lands in the prime subfield
    CHECK(static_cast<int>(acc.code) == ctx.trace(ctx.pi()));

    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        FieldElement a{static_cast<std::uint32_t>(rng.below(ctx.q()))};
        FieldElement b{static_cast<std::uint32_t>(rng.below(ctx.q()))};
        CHECK(ctx.trace(ctx.add(a, b)) == (ctx.trace(a) + ctx.trace(b)) % 3);
    }
}

TEST_CASE("trace is balanced over the field", "[field]") {
    auto ctx = make_field(3, 5);
    std::array<int, 3> counts{0, 0, 0};
    for (std::uint32_t c = 0; c < ctx.q(); ++c) ++counts[ctx.trace(FieldElement{c})];
    CHECK(counts[0] == 81);
    CHECK(counts[1] == 81);
    CHECK(counts[2] == 81);
}

TEST_CASE("power map conventions and table consistency", "[field]") {
    auto ctx = make_field(3, 5);
    CHECK(ctx.pow(ctx.zero(), 4) == ctx.zero());
    CHECK(ctx.pow(ctx.zero(), 0) == ctx.one());
    CHECK(ctx.pow(ctx.pi(), 242) == ctx.one());
    CHECK(ctx.pow(ctx.pi(), 10) == ctx.antilog(10));

    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        FieldElement x{static_cast<std::uint32_t>(rng.below(ctx.q()))};
        std::uint64_t e = rng.below(1000);
        CHECK(ctx.pow(x, e) == pow_oracle(ctx, x, e));
    }
}

TEST_CASE("coordinates form the polynomial basis", "[field]") {
    auto ctx = make_field(3, 5);
    CHECK(ctx.coords(ctx.zero()) == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(ctx.coords(ctx.one()) == std::vector<int>{1, 0, 0, 0, 0});
    FieldElement x = ctx.add(ctx.pi(), ctx.scalar_mul(2, ctx.pow(ctx.pi(), 3)));
    CHECK(ctx.coords(x) == std::vector<int>{0, 1, 0, 2, 0});
    CHECK(ctx.from_coords({0, 1, 0, 2, 0}) == x);
}

TEST_CASE("antilog and log are mutually inverse", "[field]") {
    auto ctx = make_field(3, 5);
    for (std::uint32_t k = 0; k < ctx.order(); ++k) CHECK(ctx.log(ctx.antilog(k)) == k);
    for (std::uint32_t c = 1; c < ctx.q(); ++c) CHECK(ctx.antilog(ctx.log(FieldElement{c})).code == c);
}

TEST_CASE("field axioms on random triples", "[field]") {
    auto ctx = make_field(3, 5);
    Rng rng(99);
    for (int i = 0; i < 300; ++i) {
        FieldElement a{static_cast<std::uint32_t>(rng.below(ctx.q()))};
        FieldElement b{static_cast<std::uint32_t>(rng.below(ctx.q()))};
        FieldElement c{static_cast<std::uint32_t>(rng.below(ctx.q()))};
        CHECK(ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c)));
        CHECK(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
        CHECK(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        CHECK(ctx.add(a, b) == ctx.add(b, a));
        CHECK(ctx.mul(a, b) == ctx.mul(b, a));
        if (a.code != 0) CHECK(ctx.mul(a, ctx.inv(a)) == ctx.one());
        CHECK(ctx.add(a, ctx.neg(a)) == ctx.zero());
    }
}
