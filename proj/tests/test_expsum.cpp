#include <catch2/catch_amalgamated.hpp>

#include "tcw/cyclotomic.hpp"
#include "tcw/expsum.hpp"
#include "tcw/field.hpp"
#include "tcw/quadform.hpp"

using namespace tcw;

namespace {

FieldElement rand_elem(const FieldCtx& ctx, Rng& rng) {
    return {static_cast<std::uint32_t>(rng.below(ctx.q()))};
}

}  // namespace

TEST_CASE("cyclotomic integer ring identities", "[expsum]") {
    const CyclotomicInteger z(0, 1);
    CHECK(z.pow(3) == CyclotomicInteger(1));
    CHECK(CyclotomicInteger(1) + z + z * z == CyclotomicInteger(0));

    // sqrt(-3) = 1 + 2 zeta squares to -3
    CHECK(CyclotomicInteger::sqrt_m3().pow(2) == CyclotomicInteger(-3));
    // 9 sqrt(-3) = (9, 18); its square is -243
    CyclotomicInteger v = CyclotomicInteger::sqrt_m3(2);
    CHECK(v == CyclotomicInteger(BigInt(9), BigInt(18)));
    CHECK(v * v == CyclotomicInteger(-243));

    CyclotomicInteger x(BigInt(5), BigInt(-7));
    CHECK(x.times_zeta_pow(1).times_zeta_pow(1).times_zeta_pow(1) == x);
    CHECK(x.times_zeta_pow(2) == x.times_zeta_pow(1).times_zeta_pow(1));
    CHECK(x * z == x.times_zeta_pow(1));

    CHECK(CyclotomicInteger(BigInt(243), BigInt(0)).str() == "243");
    CHECK(v.str() == "9+18*zeta3");
}

TEST_CASE("s_value magnitudes and signs over the rank table", "[expsum]") {
    CHECK(s_value({0, +1}, 3, 5) == CyclotomicInteger(243));
    CHECK(s_value({4, +1}, 3, 5) == CyclotomicInteger(27));
    CHECK(s_value({4, -1}, 3, 5) == CyclotomicInteger(-27));
    CHECK(s_value({5, +1}, 3, 5) == CyclotomicInteger(BigInt(9), BigInt(18)));
    CHECK(s_value({5, -1}, 3, 5) == CyclotomicInteger(BigInt(-9), BigInt(-18)));
    // i^2 = -1 flips the sign at rank 2; magnitude p^{m-1}
    CHECK(s_value({2, +1}, 3, 5) == CyclotomicInteger(-81));
    CHECK(s_value({2, -1}, 3, 5) == CyclotomicInteger(81));
    // rank 3: -sqrt(-3) * 27
    CHECK(s_value({3, +1}, 3, 5) == CyclotomicInteger(BigInt(-27), BigInt(-54)));
    CHECK(s_value({1, +1}, 3, 5) == CyclotomicInteger(BigInt(81), BigInt(162)));

    CHECK_THROWS_AS(s_value({6, +1}, 3, 5), BadRank);
    CHECK_THROWS_AS(s_value({-1, +1}, 3, 5), BadRank);
    CHECK_THROWS_AS(s_value({2, +1}, 7, 5), BadParams);
}

TEST_CASE("brute-force histograms match classified values", "[expsum]") {
    auto ctx = make_field(3, 5);

    TraceHistogram all_zero = s_brute(ctx, ctx.zero(), ctx.zero(), ctx.zero());
    CHECK(all_zero.counts[0] == 243);
    CHECK(all_zero.value() == CyclotomicInteger(243));

    Rng rng(1234);
    for (int t = 0; t < 2000; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
        ExpSumClass cls = classify(ctx, a, b, g);
        CHECK(s_brute(ctx, a, b, g).value() == s_value(cls, 3, 5));
    }
}

TEST_CASE("shifted sums match the zeta^c closed form", "[expsum]") {
    auto ctx = make_field(3, 5);
    Rng rng(777);
    int unsolvable_seen = 0;
    for (int t = 0; t < 400; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
        FieldElement delta = rand_elem(ctx, rng);
        Diagonalization d = diagonalize(gram_matrix(ctx, a, b, g), 3);
        ExpSumClass cls = class_of(d, 3);
        ShiftResult shift = linear_shift(d, delta_vector(ctx, delta), 3);
        CyclotomicInteger expect = sprime_value(cls, shift, 3, 5);
        CHECK(s_brute(ctx, a, b, g, delta).value() == expect);
        if (!shift.solvable) {
            ++unsolvable_seen;
            CHECK(expect.is_zero());
        }
    }
    CHECK(unsolvable_seen > 0);
}

TEST_CASE("r_value closed form", "[expsum]") {
    CHECK(r_value({4, +1}, 3, 5) == 54);
    CHECK(r_value({4, -1}, 3, 5) == -54);
    CHECK(r_value({5, +1}, 3, 5) == 0);
    CHECK(r_value({5, -1}, 3, 5) == 0);
    // at rank 2 the sign of S is -eps, so eps = +1 gives R = -162
    CHECK(r_value({2, +1}, 3, 5) == -162);
    CHECK(r_value({2, -1}, 3, 5) == 162);
    CHECK(r_value({0, +1}, 3, 5) == 486);  // the zero form: 2 * 3^5
}

TEST_CASE("R equals the scalar-sum of S values", "[expsum]") {
    auto ctx = make_field(3, 5);
    Rng rng(555);
    const FieldElement two{2};
    for (int t = 0; t < 300; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
        ExpSumClass cls = classify(ctx, a, b, g);
        CyclotomicInteger sum = s_value(cls, 3, 5) +
                                s_value(classify(ctx, ctx.mul(two, a), ctx.mul(two, b), ctx.mul(two, g)), 3, 5);
        REQUIRE(sum.is_rational());
        CHECK(sum.a == r_value(cls, 3, 5));
    }
}

TEST_CASE("rprime_value cases", "[expsum]") {
    const ShiftResult unsolvable{false, 0};
    const ShiftResult c0{true, 0}, c1{true, 1}, c2{true, 2};
    CHECK(rprime_value({4, +1}, unsolvable, 3, 5) == 0);
    CHECK(rprime_value({4, +1}, c0, 3, 5) == 54);
    CHECK(rprime_value({4, +1}, c1, 3, 5) == -27);
    CHECK(rprime_value({4, +1}, c2, 3, 5) == -27);
    CHECK(rprime_value({5, +1}, c0, 3, 5) == 0);
    CHECK(rprime_value({5, +1}, c1, 3, 5) == -27);  // legendre(-1) = -1
    CHECK(rprime_value({5, +1}, c2, 3, 5) == 27);
    CHECK(rprime_value({3, +1}, c1, 3, 5) == 81);   // sign of S is -eps at rank 3
    CHECK(rprime_value({3, +1}, c2, 3, 5) == -81);
}

TEST_CASE("R' equals the scalar-sum of shifted brute-force sums", "[expsum]") {
    auto ctx = make_field(3, 5);
    Rng rng(31337);
    const FieldElement two{2};
    for (int t = 0; t < 250; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
        FieldElement delta = rand_elem(ctx, rng);
        Diagonalization d = diagonalize(gram_matrix(ctx, a, b, g), 3);
        ExpSumClass cls = class_of(d, 3);
        ShiftResult shift = linear_shift(d, delta_vector(ctx, delta), 3);
        CyclotomicInteger sum =
            s_brute(ctx, a, b, g, delta).value() +
            s_brute(ctx, ctx.mul(two, a), ctx.mul(two, b), ctx.mul(two, g), ctx.mul(two, delta)).value();
        REQUIRE(sum.is_rational());
        CHECK(sum.a == rprime_value(cls, shift, 3, 5));
    }
}
