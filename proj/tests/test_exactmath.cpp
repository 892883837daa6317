#include <doctest.h>

#include <random>

#include "coamoeba/errors.hpp"
#include "support.hpp"

using namespace coamoeba;
using namespace testing_support;

namespace {

void check_smith(const IntMatrix& a) {
    const SmithDecomposition s = snf(a);
    const std::size_t n = a.rows();
    CHECK(s.G * a * s.H == IntMatrix::diagonal(s.D));
    const Integer dg = determinant(s.G), dh = determinant(s.H);
    CHECK(abs(dg) == 1);
    CHECK(abs(dh) == 1);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(s.D[i] > 0);
        if (i + 1 < n) CHECK(s.D[i + 1] % s.D[i] == 0);
    }
    CHECK(s.product() == abs(determinant(a)));
}

} // namespace

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const IntMatrix a = random_matrix(rng, n, 6);
        std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j).get_si();
        CHECK(determinant(a) == Integer(static_cast<long>(laplace_det(m))));
    }
}

TEST_CASE("smith form of small matrices") {
    SUBCASE("identity is already reduced") {
        const auto s = snf(IntMatrix::identity(2));
        CHECK(s.G == IntMatrix::identity(2));
        CHECK(s.H == IntMatrix::identity(2));
        CHECK(s.D == std::vector<Integer>{1, 1});
    }
    SUBCASE("scalar two") {
        CHECK(snf(IntMatrix{{2, 0}, {0, 2}}).D == std::vector<Integer>{2, 2});
    }
    SUBCASE("skew pair") {
        const IntMatrix a{{2, 1}, {1, 2}};
        CHECK(snf(a).D == std::vector<Integer>{1, 3});
        CHECK(brute_minor_gcd(a, 1) == 1);
        CHECK(brute_minor_gcd(a, 2) == 3);
        check_smith(a);
    }
    SUBCASE("divisibility is enforced") {
        const IntMatrix a{{2, 0}, {0, 3}};
        CHECK(snf(a).D == std::vector<Integer>{1, 6});
        check_smith(a);
    }
    SUBCASE("negative determinant") {
        const IntMatrix a{{0, 1}, {1, 0}};
        CHECK(snf(a).D == std::vector<Integer>{1, 1});
        check_smith(a);
    }
    SUBCASE("singular input is rejected") {
        CHECK_THROWS_AS(snf(IntMatrix{{1, 2}, {2, 4}}), SingularMatrix);
        CHECK_THROWS_AS(snf(IntMatrix(3, 3)), SingularMatrix);
    }
    SUBCASE("non-square input is rejected") {
        CHECK_THROWS_AS(snf(IntMatrix(2, 3)), DimensionMismatch);
    }
}

TEST_CASE("smith form on random matrices matches minor gcds") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const IntMatrix a = random_nonsingular(rng, n, 9);
        check_smith(a);
        const auto s = snf(a);
        Integer prefix = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            prefix *= s.D[k - 1];
            CHECK(prefix == Integer(static_cast<long>(brute_minor_gcd(a, k))));
            CHECK(minor_gcd(a, k) == prefix);
        }
    }
}

TEST_CASE("smith form is deterministic") {
    const IntMatrix a{{4, 6, 2}, {-2, 3, 1}, {0, 5, -3}};
    const auto s1 = snf(a), s2 = snf(a);
    CHECK(s1.G == s2.G);
    CHECK(s1.H == s2.H);
    CHECK(s1.D == s2.D);
}

TEST_CASE("minor gcd examples") {
    CHECK(minor_gcd(IntMatrix::identity(2), 1) == 1);
    CHECK(minor_gcd(IntMatrix{{2, 1}, {1, 2}}, 2) == 3);
    CHECK(minor_gcd(IntMatrix{{2, 0}, {0, 2}}, 1) == 2);
    CHECK(minor_gcd(IntMatrix(2, 2), 1) == 0);
}

TEST_CASE("unimodular inverse") {
    const IntMatrix u{{2, 1}, {1, 1}};
    CHECK(u * unimodular_inverse(u) == IntMatrix::identity(2));
    CHECK_THROWS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}));
}

TEST_CASE("GF(2) rank examples") {
    CHECK(z2_rank(Z2Matrix(3, 3)) == 0);
    CHECK(z2_rank(Z2Matrix::identity(4)) == 4);
    CHECK(z2_rank(Z2Matrix{{1, 1}, {1, 1}}) == 1);
    CHECK(z2_rank(Z2Matrix::from_integers(IntMatrix{{2, 1}, {1, 2}})) == 2);
    CHECK(z2_rank(Z2Matrix::from_integers(IntMatrix{{2, 0}, {0, 2}})) == 0);
}

TEST_CASE("GF(2) rank matches kernel size on random matrices") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 10;
        Z2Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() & 1);
        // rank = cols - log2 |{x : M x = 0}|
        std::size_t kernel = 0;
        for (std::size_t x = 0; x < (std::size_t{1} << cols); ++x) {
            bool zero = true;
            for (std::size_t r = 0; r < rows && zero; ++r) {
                int s = 0;
                for (std::size_t c = 0; c < cols; ++c) s ^= m.get(r, c) & ((x >> c) & 1);
                zero = s == 0;
            }
            kernel += zero;
        }
        std::size_t log = 0;
        while ((std::size_t{1} << log) < kernel) ++log;
        CHECK(z2_rank(m) == cols - log);
        CHECK(z2_rank(m.transposed()) == z2_rank(m));
    }
}

TEST_CASE("GF(2) span membership") {
    CHECK(z2_in_span(Z2Matrix::identity(2), BitVector{1, 0}));
    CHECK_FALSE(z2_in_span(Z2Matrix(2, 2), BitVector{0, 1}));
    const Z2Matrix m{{1, 0}, {1, 0}};
    CHECK(z2_in_span(m, BitVector{1, 0}));
    CHECK_FALSE(z2_in_span(m, BitVector{0, 1}));
    CHECK(z2_in_span(m, BitVector{0, 0}));
    CHECK_THROWS_AS(z2_in_span(m, BitVector{1, 0, 1}), DimensionMismatch);
}

TEST_CASE("echelon basis tracks independence") {
    Z2EchelonBasis b(3);
    CHECK(b.add(BitVector{1, 1, 0}));
    CHECK(b.add(BitVector{0, 1, 1}));
    CHECK_FALSE(b.add(BitVector{1, 0, 1}));
    CHECK(b.contains(BitVector{1, 0, 1}));
    CHECK_FALSE(b.contains(BitVector{1, 0, 0}));
    CHECK(b.rank() == 2);
}

TEST_CASE("bit vectors span word boundaries") {
    BitVector v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.count() == 3);
    CHECK(v.first() == 0);
    v.flip(0);
    CHECK(v.first() == 64);
    BitVector w(130);
    w.set(64);
    v ^= w;
    CHECK(v.first() == 129);
    CHECK(v.any());
}

TEST_CASE("matrix products over GF(2)") {
    const Z2Matrix a{{1, 1}, {0, 1}};
    const Z2Matrix sq = a * a;
    CHECK_FALSE(sq.get(0, 1));
    CHECK(sq.get(0, 0));
    CHECK(a.apply(BitVector{1, 1}) == BitVector{0, 1});
}
