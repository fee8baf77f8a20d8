#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/hyperbolic.hpp"

using namespace bergman;

namespace {

UhpPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    std::uniform_real_distribution<double> uy(0.05, 8.0);
    return {ux(rng), uy(rng)};
}

// Random determinant-1 map as a product of translations and a diagonal
// scaling, with an occasional inversion.
MoebiusMap random_psl2r(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ut(-2.0, 2.0);
    std::uniform_real_distribution<double> us(0.25, 4.0);
    std::bernoulli_distribution flip(0.5);
    const double s = std::sqrt(us(rng));
    MoebiusMap g = MoebiusMap::translation(ut(rng)) * MoebiusMap(s, 0.0, 0.0, 1.0 / s) *
                   MoebiusMap::translation(ut(rng));
    if (flip(rng)) g = g * MoebiusMap::inversion();
    return g;
}

}  // namespace

TEST_CASE("point and map invariants are enforced") {
    CHECK_THROWS_AS(UhpPoint(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(UhpPoint(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(MoebiusMap(1.0, 0.0, 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(PolyPoint({}), std::invalid_argument);
}

TEST_CASE("geodesic distance: worked examples") {
    const UhpPoint i{0.0, 1.0};
    CHECK(geodesic_distance(i, i) == 0.0);
    CHECK(geodesic_distance(i, {0.0, 2.0}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // cosh^2(d/2) = 5/4, so d = 2 acosh(sqrt(5)/2)
    const double expected = 2.0 * std::acosh(std::sqrt(5.0) / 2.0);
    CHECK(expected == doctest::Approx(0.9624236501192069).epsilon(1e-14));
    CHECK(geodesic_distance(i, {1.0, 1.0}) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("moebius action: worked examples") {
    const UhpPoint i{0.0, 1.0};
    auto w = apply_moebius(MoebiusMap::identity(), {0.4, 2.5});
    CHECK(w.x == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(w.y == doctest::Approx(2.5).epsilon(1e-15));

    auto t = apply_moebius(MoebiusMap::translation(1.0), i);
    CHECK(t.x == doctest::Approx(1.0));
    CHECK(t.y == doctest::Approx(1.0));

    auto s = apply_moebius(MoebiusMap::inversion(), {0.0, 2.0});
    CHECK(s.x == doctest::Approx(0.0));
    CHECK(s.y == doctest::Approx(0.5));
}

TEST_CASE("displacement: worked examples") {
    const UhpPoint i{0.0, 1.0};
    CHECK(displacement(MoebiusMap::identity(), i) == 0.0);
    CHECK(displacement(MoebiusMap::translation(1.0), i) ==
          doctest::Approx(0.9624236501192069).epsilon(1e-12));
    CHECK(displacement(MoebiusMap::translation(1.0), {0.0, 10.0}) ==
          doctest::Approx(2.0 * std::asinh(0.05)).epsilon(1e-12));
}

TEST_CASE("volume element") {
    CHECK(volume_element(PolyPoint({{0.0, 1.0}})) == doctest::Approx(1.0));
    CHECK(volume_element(PolyPoint({{0.0, 2.0}})) == doctest::Approx(0.25));
    CHECK(volume_element(PolyPoint({{0.0, 1.0}, {0.0, 3.0}})) ==
          doctest::Approx(1.0 / 9.0));
}

TEST_CASE("reduction: worked examples") {
    auto [z1, g1] = reduce_psl2z({0.1, 2.0});
    CHECK(z1.x == doctest::Approx(0.1));
    CHECK(z1.y == doctest::Approx(2.0));
    CHECK(g1.projectively_equal(MoebiusMap::identity(), 1e-14));

    auto [z2, g2] = reduce_psl2z({2.3, 1.0});
    CHECK(z2.x == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(z2.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g2.projectively_equal(MoebiusMap::translation(-2.0), 1e-12));
    CHECK(std::hypot(z2.x, z2.y) >= 1.0 - 1e-12);

    auto [z3, g3] = reduce_psl2z({0.0, 0.5});
    CHECK(z3.x == doctest::Approx(0.0));
    CHECK(z3.y == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g3.projectively_equal(MoebiusMap::inversion(), 1e-12));
}

TEST_CASE("reduction properties on random inputs") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 500; ++trial) {
        const UhpPoint z = random_point(rng);
        auto [zr, g] = reduce_psl2z(z);
        CHECK(std::abs(zr.x) <= 0.5 + 1e-12);
        CHECK(zr.x * zr.x + zr.y * zr.y >= 1.0 - 1e-12);
        const UhpPoint gz = apply_moebius(g, z);
        CHECK(std::abs(gz.x - zr.x) <= 1e-12 * std::max(1.0, std::abs(zr.x)));
        CHECK(std::abs(gz.y - zr.y) <= 1e-12 * std::max(1.0, zr.y));
    }
}

TEST_CASE("distance symmetry is exact and isometry holds to 1e-12") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 500; ++trial) {
        const UhpPoint z = random_point(rng), w = random_point(rng);
        CHECK(geodesic_distance(z, w) == geodesic_distance(w, z));
        const MoebiusMap g = random_psl2r(rng);
        const double before = geodesic_distance(z, w);
        const double after = geodesic_distance(apply_moebius(g, z), apply_moebius(g, w));
        CHECK(std::abs(after - before) <= 1e-12 * std::max(1.0, before));
    }
}

TEST_CASE("triangle inequality on random triples") {
    std::mt19937_64 rng(999);
    for (int trial = 0; trial < 500; ++trial) {
        const UhpPoint a = random_point(rng), b = random_point(rng),
                       c = random_point(rng);
        CHECK(geodesic_distance(a, c) <=
              geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-12);
    }
}

TEST_CASE("projective equality and sign normalization") {
    const MoebiusMap g(2.0, 1.0, 3.0, 2.0);
    const MoebiusMap neg(-2.0, -1.0, -3.0, -2.0);
    CHECK(g.projectively_equal(neg, 1e-15));
    const auto n = neg.sign_normalized();
    CHECK(n.a == 2.0);
    CHECK(n.c == 3.0);
    CHECK(g.projectively_equal(MoebiusMap(4.0, 2.0, 6.0, 4.0), 1e-15));
}

TEST_CASE("finite-difference Laplacian of log y") {
    CHECK(laplacian_log_y_fd({0.0, 2.0}, 1e-3) == doctest::Approx(-0.25).epsilon(1e-6));
    CHECK(laplacian_log_y_fd({0.0, 1.0}, 1e-3) == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(laplacian_log_y_fd({0.3, 4.0}, 1e-3) ==
          doctest::Approx(-0.0625).epsilon(1e-6));
    CHECK_THROWS_AS(laplacian_log_y_fd({0.0, 1.0}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(laplacian_log_y_fd({0.0, 1.0}, -1e-3), std::invalid_argument);
}

TEST_CASE("finite-difference error decays like h^2") {
    const double pts[5][2] = {
        {0.0, 1.0}, {0.3, 1.5}, {-0.2, 2.0}, {0.1, 0.8}, {0.0, 3.0}};
    for (const auto& p : pts) {
        const UhpPoint z{p[0], p[1]};
        const double exact = -1.0 / (z.y * z.y);
        const double e1 = std::abs(laplacian_log_y_fd(z, 1e-2) - exact);
        const double e2 = std::abs(laplacian_log_y_fd(z, 5e-3) - exact);
        const double e3 = std::abs(laplacian_log_y_fd(z, 2.5e-3) - exact);
        CHECK(e1 / e2 >= 3.5);
        CHECK(e1 / e2 <= 4.5);
        CHECK(e2 / e3 >= 3.5);
        CHECK(e2 / e3 <= 4.5);
    }
}
