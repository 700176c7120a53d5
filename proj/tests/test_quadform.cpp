#include <catch2/catch_amalgamated.hpp>

#include "tcw/expsum.hpp"
#include "tcw/field.hpp"
#include "tcw/quadform.hpp"

using namespace tcw;

namespace {

FieldElement rand_elem(const FieldCtx& ctx, Rng& rng) {
    return {static_cast<std::uint32_t>(rng.below(ctx.q()))};
}

// Independent rank oracle: plain Gaussian row reduction over F_p.
int row_reduction_rank(std::vector<std::uint8_t> a, int n, int p) {
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (a[r * n + col]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[rank * n + j]);
        const int inv = inv_mod(a[rank * n + col], p);
        for (int r = 0; r < n; ++r) {
            if (r == rank || !a[r * n + col]) continue;
            const int f = a[r * n + col] * inv % p;
            for (int j = 0; j < n; ++j)
                a[r * n + j] = static_cast<std::uint8_t>((a[r * n + j] + (p - f) * a[rank * n + j]) % p);
        }
        ++rank;
    }
    return rank;
}

SymmetricMatrix random_symmetric(int n, int p, Rng& rng) {
    SymmetricMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            h.at(i, j) = h.at(j, i) = static_cast<std::uint8_t>(rng.below(p));
    return h;
}

// M H M^T over F_p.
SymmetricMatrix congruence(const SymmetricMatrix& h, const std::vector<std::uint8_t>& m, int p) {
    const int n = h.n;
    SymmetricMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int acc = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    acc += m[i * n + a] * h.at(a, b) % p * m[j * n + b] % p;
            out.at(i, j) = static_cast<std::uint8_t>(acc % p);
        }
    return out;
}

int eval_quadratic(const SymmetricMatrix& h, const std::vector<int>& x, int p) {
    int acc = 0;
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) acc += x[i] * h.at(i, j) % p * x[j] % p;
    return acc % p;
}

}  // namespace

TEST_CASE("legendre symbol", "[quadform]") {
    CHECK(legendre(1, 3) == 1);
    CHECK(legendre(2, 3) == -1);
    CHECK(legendre(0, 3) == 0);
    CHECK(legendre(-1, 3) == -1);
    for (int a : {1, 2, 4}) CHECK(legendre(a, 7) == 1);
    for (int a : {3, 5, 6}) CHECK(legendre(a, 7) == -1);
}

TEST_CASE("gram matrix of the zero form is zero", "[quadform]") {
    auto ctx = make_field(3, 5);
    SymmetricMatrix h = gram_matrix(ctx, ctx.zero(), ctx.zero(), ctx.zero());
    for (auto v : h.e) CHECK(v == 0);
}

TEST_CASE("Tr(x^2) is nondegenerate", "[quadform]") {
    auto ctx = make_field(3, 5);
    SymmetricMatrix h = gram_matrix(ctx, ctx.one(), ctx.zero(), ctx.zero());
    CHECK(row_reduction_rank(h.e, 5, 3) == 5);
    CHECK(diagonalize(h, 3).rank == 5);
}

TEST_CASE("gram matrix evaluates the trace form", "[quadform]") {
    auto ctx = make_field(3, 5);
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
        SymmetricMatrix h = gram_matrix(ctx, a, b, g);
        REQUIRE(h.symmetric());
        for (int i = 0; i < 100; ++i) {
            FieldElement x = rand_elem(ctx, rng);
            CHECK(eval_quadratic(h, ctx.coords(x), 3) == ctx.trace(eval_form(ctx, a, b, g, x)));
        }
    }
}

TEST_CASE("diagonalize on trivial inputs", "[quadform]") {
    SymmetricMatrix z(5);
    Diagonalization dz = diagonalize(z, 3);
    CHECK(dz.rank == 0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(dz.transform[i * 5 + j] == (i == j ? 1 : 0));

    SymmetricMatrix id(5);
    for (int i = 0; i < 5; ++i) id.at(i, i) = 1;
    Diagonalization di = diagonalize(id, 3);
    CHECK(di.rank == 5);
    for (int i = 0; i < 5; ++i) CHECK(di.diag[i] == 1);
    CHECK(class_of(di, 3).eps == 1);
}

TEST_CASE("diagonalize produces a congruent diagonal matrix", "[quadform]") {
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const int p = rng.below(2) ? 3 : 7;
        SymmetricMatrix h = random_symmetric(n, p, rng);
        Diagonalization d = diagonalize(h, p);
        CHECK(d.rank == row_reduction_rank(h.e, n, p));
        SymmetricMatrix mhm = congruence(h, d.transform, p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(mhm.at(i, j) == (i == j ? d.diag[i] : 0));
        // nonzero entries first, invertible transform
        for (int i = 0; i < d.rank; ++i) CHECK(d.diag[i] != 0);
        for (int i = d.rank; i < n; ++i) CHECK(d.diag[i] == 0);
        CHECK(row_reduction_rank(d.transform, n, p) == n);
        // same rank after re-diagonalizing the transformed matrix
        CHECK(diagonalize(mhm, p).rank == d.rank);
    }
}

TEST_CASE("diagonalize rejects bad input", "[quadform]") {
    SymmetricMatrix h(2);
    h.at(0, 1) = 1;  // at(1,0) left at 0: not symmetric
    CHECK_THROWS_AS(diagonalize(h, 3), NotSymmetric);
    SymmetricMatrix ok(2);
    CHECK_THROWS_AS(diagonalize(ok, 2), BadParams);
}

TEST_CASE("classify agrees with the transform-carrying diagonalization", "[quadform]") {
    auto ctx = make_field(3, 5);
    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
        SymmetricMatrix h = gram_matrix(ctx, a, b, g);
        ExpSumClass c1 = classify(ctx, a, b, g);
        ExpSumClass c2 = class_of(diagonalize(h, 3), 3);
        CHECK(c1.rank == c2.rank);
        CHECK(c1.eps == c2.eps);
    }
}

TEST_CASE("classification of the zero triple", "[quadform]") {
    auto ctx = make_field(3, 5);
    ExpSumClass c = classify(ctx, ctx.zero(), ctx.zero(), ctx.zero());
    CHECK(c.rank == 0);
    CHECK(c.eps == 1);
}

TEST_CASE("rank bounds for the three-term family", "[quadform]") {
    auto ctx = make_field(3, 5);
    Rng rng(17);
    for (int t = 0; t < 500; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
        if (a.code == 0 && b.code == 0 && g.code == 0) continue;
        int r = classify(ctx, a, b, g).rank;
        CHECK(r >= 1);  // m - 4
        CHECK(r <= 5);
    }
    // d-term subfamilies: alpha x^2 alone has full rank, (alpha, beta) rank >= m-2
    for (std::uint32_t a = 1; a < ctx.q(); ++a)
        CHECK(classify(ctx, {a}, ctx.zero(), ctx.zero()).rank == 5);
    for (int t = 0; t < 200; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng);
        if (a.code == 0 && b.code == 0) continue;
        CHECK(classify(ctx, a, b, ctx.zero()).rank >= 3);
    }
}

TEST_CASE("scaling by a scalar flips eps only for odd rank", "[quadform]") {
    auto ctx = make_field(3, 5);
    Rng rng(23);
    const FieldElement two{2};
    for (int t = 0; t < 300; ++t) {
        FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
        if (a.code == 0 && b.code == 0 && g.code == 0) continue;
        ExpSumClass base = classify(ctx, a, b, g);
        ExpSumClass scaled = classify(ctx, ctx.mul(two, a), ctx.mul(two, b), ctx.mul(two, g));
        CHECK(scaled.rank == base.rank);
        if (base.rank % 2 == 1)
            CHECK(scaled.eps == -base.eps);  // legendre(2) = -1
        else
            CHECK(scaled.eps == base.eps);
    }
}

TEST_CASE("linear shift solvability and c", "[quadform]") {
    auto ctx = make_field(3, 5);
    Rng rng(41);

    SECTION("zero vector is always solvable with c = 0") {
        for (int t = 0; t < 50; ++t) {
            FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
            Diagonalization d = diagonalize(gram_matrix(ctx, a, b, g), 3);
            ShiftResult s = linear_shift(d, std::vector<int>(5, 0), 3);
            CHECK(s.solvable);
            CHECK(s.c == 0);
        }
    }

    SECTION("full rank is always solvable") {
        Diagonalization d = diagonalize(gram_matrix(ctx, ctx.one(), ctx.zero(), ctx.zero()), 3);
        REQUIRE(d.rank == 5);
        for (int t = 0; t < 100; ++t) {
            std::vector<int> a(5);
            for (auto& v : a) v = static_cast<int>(rng.below(3));
            CHECK(linear_shift(d, a, 3).solvable);
        }
    }

    SECTION("c matches (1/2) A B^T over every solution of 2YH + A = 0") {
        int deficient_seen = 0, unsolvable_seen = 0;
        for (int t = 0; t < 400; ++t) {
            FieldElement a = rand_elem(ctx, rng), b = rand_elem(ctx, rng), g = rand_elem(ctx, rng);
            if (a.code == 0 && b.code == 0 && g.code == 0) continue;
            SymmetricMatrix h = gram_matrix(ctx, a, b, g);
            Diagonalization d = diagonalize(h, 3);
            FieldElement delta = rand_elem(ctx, rng);
            std::vector<int> av = delta_vector(ctx, delta);
            ShiftResult s = linear_shift(d, av, 3);

            // enumerate all Y in F_3^5 solving 2YH + A = 0
            std::vector<std::vector<int>> solutions;
            for (int code = 0; code < 243; ++code) {
                std::vector<int> y(5);
                int v = code;
                for (int i = 0; i < 5; ++i) {
                    y[i] = v % 3;
                    v /= 3;
                }
                bool sol = true;
                for (int j = 0; j < 5 && sol; ++j) {
                    int acc = av[j];
                    for (int i = 0; i < 5; ++i) acc += 2 * y[i] * h.at(i, j);
                    sol = acc % 3 == 0;
                }
                if (sol) solutions.push_back(y);
            }
            if (solutions.empty()) {
                CHECK(!s.solvable);
                ++unsolvable_seen;
                continue;
            }
            REQUIRE(s.solvable);
            if (solutions.size() > 1) ++deficient_seen;
            for (const auto& y : solutions) {
                int ab = 0;
                for (int i = 0; i < 5; ++i) ab += av[i] * y[i];
                CHECK((2 * ab) % 3 == s.c);  // 1/2 = 2 mod 3
            }
        }
        CHECK(deficient_seen > 0);
        CHECK(unsolvable_seen > 0);
    }
}
