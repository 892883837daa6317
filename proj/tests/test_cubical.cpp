#include <doctest.h>

#include "coamoeba/cubical.hpp"
#include "coamoeba/errors.hpp"
#include "support.hpp"

using namespace coamoeba;
using namespace testing_support;

namespace {

CubicalComplex complex_of(const NormalizedModel& m, std::vector<long> res) {
    return build_complex(arrangement(m, snf(m.A)), res);
}

void check_sound(const CubicalComplex& c) {
    CHECK(c.boundary_squared_is_zero());
    CHECK(c.closed_under_faces());
    CHECK(c.negation_symmetric());
}

} // namespace

TEST_CASE("full torus") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const CubicalComplex c(std::vector<long>(n, 6), std::vector<long>(n, 0),
                               [](const std::vector<long>&) { return std::nullopt; });
        std::vector<std::size_t> expected;
        for (std::size_t k = 0; k <= n; ++k) expected.push_back(static_cast<std::size_t>(binomial(n, k)));
        CHECK(betti_z2(c) == expected);
        CHECK(c.euler_characteristic() == 0);
        check_sound(c);
        // c acts trivially on the top-but-one homology of a torus.
        CHECK(conjugation_rank(c) == 0);
    }
}

TEST_CASE("point coamoeba of z + 1") {
    const auto c = complex_of(model_of(IntMatrix{{1}}, {1}), {8});
    CHECK(betti_z2(c) == std::vector<std::size_t>{1, 0});
    check_sound(c);
    // The kept set is a neighbourhood of theta = 1/2.
    for (std::size_t v = 0; v < c.cell_count(0); ++v) {
        const long p = c.cell_position(0, v)[0];
        CHECK(std::abs(p - 8) <= 2);
    }
}

TEST_CASE("three points of z^3 - 1") {
    const auto m = model_of(IntMatrix{{3}}, {-1});
    const auto c = complex_of(m, {24});
    CHECK(betti_z2(c) == std::vector<std::size_t>{3, 0});
    CHECK(conjugation_rank(c) == 1);
}

TEST_CASE("pair of pants") {
    const auto c = complex_of(model_of(IntMatrix::identity(2), {1, 1}), {12, 12});
    CHECK(betti_z2(c) == std::vector<std::size_t>{1, 2, 0});
    CHECK(conjugation_rank(c) == 0);
    check_sound(c);
}

TEST_CASE("doubled simplex") {
    const auto pos = complex_of(model_of(IntMatrix{{2, 0}, {0, 2}}, {1, 1}), {16, 16});
    CHECK(betti_z2(pos) == std::vector<std::size_t>{1, 5, 0});
    CHECK(conjugation_rank(pos) == 2);
    check_sound(pos);
    const auto neg = complex_of(model_of(IntMatrix{{2, 0}, {0, 2}}, {-1, -1}), {16, 16});
    CHECK(betti_z2(neg) == std::vector<std::size_t>{1, 5, 0});
    CHECK(conjugation_rank(neg) == 1);
}

TEST_CASE("skew simplex at two resolutions") {
    const auto m = model_of(IntMatrix{{2, 1}, {1, 2}}, {1, -1});
    for (long target : {24L, 36L}) {
        const auto c = complex_of(m, resolution_from_target(target, snf(m.A).D));
        CHECK(betti_z2(c) == std::vector<std::size_t>{1, 4, 0});
        check_sound(c);
    }
}

TEST_CASE("a grid that is too coarse is caught by the doubling check") {
    // At 12 cells per axis the three thin holes leave spurious cycles.
    VerificationOptions opt;
    opt.resolution = std::vector<long>{12, 12};
    opt.membership_samples = 10;
    const auto rec = verify(model_of(IntMatrix{{2, 1}, {1, 2}}, {1, -1}), opt);
    CHECK_FALSE(rec.stable);
    CHECK_FALSE(rec.ok());
    CHECK(rec.doubled_betti == std::vector<std::size_t>{1, 4, 0});
}

TEST_CASE("spatial simplex") {
    const auto c = complex_of(model_of(IntMatrix::identity(3), {1, 1, 1}), {8, 8, 8});
    CHECK(betti_z2(c) == std::vector<std::size_t>{1, 3, 3, 0});
    CHECK(conjugation_rank(c) == 0);
    check_sound(c);
}

TEST_CASE("resolution helpers") {
    CHECK(default_resolution({1, 1}) == std::vector<long>{16, 16});
    CHECK(default_resolution({1, 3}) == std::vector<long>{48, 48});
    CHECK(default_resolution({1, 1, 1}) == std::vector<long>{16, 16, 16});
    for (long m : default_resolution({2, 6})) CHECK(m % 12 == 0);
    CHECK(resolution_from_target(16, {1, 3}) == std::vector<long>{16, 18});
}

TEST_CASE("bad grids are rejected") {
    const auto m = model_of(IntMatrix{{2, 0}, {0, 2}}, {1, 1});
    CHECK_THROWS_AS(complex_of(m, {6, 8}), BadResolution);
    CHECK_THROWS_AS(complex_of(m, {8}), BadResolution);
    CHECK_THROWS_AS(complex_of(m, {0, 8}), BadResolution);
    const auto four = model_of(IntMatrix::identity(4), {1, 1, 1, 1});
    CHECK_THROWS_AS(complex_of(four, {2, 2, 2, 2}), UnsupportedDimension);
}

TEST_CASE("verification record") {
    SUBCASE("planar corpus sample") {
        const auto models = corpus();
        std::size_t checked = 0;
        for (std::size_t k = 16; k < 96 && checked < 8; k += 11, ++checked) {
            VerificationOptions opt;
            opt.membership_samples = 200;
            const auto rec = verify(models[k], opt);
            CHECK(rec.ok());
            CHECK(rec.diff().empty());
        }
    }
    SUBCASE("skip cubical in four dimensions") {
        VerificationOptions opt;
        opt.skip_cubical = true;
        opt.membership_samples = 100;
        const auto rec = verify(model_of(IntMatrix::identity(4), {1, -1, 1, -1}), opt);
        CHECK_FALSE(rec.cubical_ran);
        CHECK(rec.ok());
        CHECK(rec.membership_samples == 100);
    }
}

TEST_CASE("cubical oracle is stable on every planar corpus model") {
    for (const auto& m : corpus()) {
        if (m.n > 2) continue;
        VerificationOptions opt;
        opt.membership_samples = 50;
        const auto rec = verify(m, opt);
        CHECK(rec.stable);
        CHECK(rec.complex_sound);
        CHECK(rec.ok());
    }
}
