#include <doctest.h>

#include "heisenberg.hpp"
#include "rng.hpp"

using namespace hknot;

namespace {

HPoint random_point(Rng& rng, double lo = -2.0, double hi = 2.0) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

}  // namespace

TEST_CASE("group product") {
    const HPoint e{0, 0, 0};
    const HPoint p{0.3, -1.2, 0.7};
    CHECK(h_mul(e, p) == p);
    CHECK(h_mul(p, e) == p);

    const HPoint r = h_mul({1, 0, 0}, {0, 1, 0});
    CHECK(r.x == doctest::Approx(1.0));
    CHECK(r.y == doctest::Approx(1.0));
    CHECK(r.u == doctest::Approx(0.5));

    // associativity instance
    const HPoint a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1};
    const HPoint lhs = h_mul(h_mul(a, b), c);
    const HPoint rhs = h_mul(a, h_mul(b, c));
    CHECK(lhs.x == doctest::Approx(rhs.x).epsilon(1e-15));
    CHECK(lhs.y == doctest::Approx(rhs.y).epsilon(1e-15));
    CHECK(lhs.u == doctest::Approx(rhs.u).epsilon(1e-15));
}

TEST_CASE("inverse") {
    CHECK(h_inv({0, 0, 0}) == HPoint{0, 0, 0});
    const HPoint q = h_inv({1, 2, 3});
    CHECK(q == HPoint{-1, -2, -3});
    const HPoint prod = h_mul(HPoint{1, 2, 3}, q);
    CHECK(std::abs(prod.x) < 1e-15);
    CHECK(std::abs(prod.y) < 1e-15);
    CHECK(std::abs(prod.u) < 1e-15);

    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const HPoint p = random_point(rng);
        CHECK(h_inv(h_inv(p)) == p);
        const HPoint z = h_mul(p, h_inv(p));
        CHECK(std::abs(z.u) < 1e-15);
    }
}

TEST_CASE("Koranyi norm") {
    CHECK(koranyi_norm({1, 0, 0}) == doctest::Approx(1.0));
    CHECK(koranyi_norm({0, 0, 1}) == doctest::Approx(2.0));  // 16^(1/4)
    CHECK(koranyi_norm({3, 4, 0}) == doctest::Approx(5.0));
}

TEST_CASE("Koranyi distance") {
    const HPoint p{0.4, 0.5, -0.2};
    CHECK(koranyi_dist(p, p) == 0.0);
    CHECK(koranyi_dist({1, 0, 0}, {0, 0, 1}) == doctest::Approx(std::pow(17.0, 0.25)));

    Rng rng(12);
    SUBCASE("left invariance") {
        for (int i = 0; i < 1000; ++i) {
            const HPoint r = random_point(rng), a = random_point(rng), b = random_point(rng);
            const double d1 = koranyi_dist(a, b);
            const double d2 = koranyi_dist(h_mul(r, a), h_mul(r, b));
            CHECK(std::abs(d1 - d2) < 1e-12);
        }
    }
    SUBCASE("symmetry") {
        for (int i = 0; i < 200; ++i) {
            const HPoint a = random_point(rng), b = random_point(rng);
            CHECK(koranyi_dist(a, b) == doctest::Approx(koranyi_dist(b, a)).epsilon(1e-15));
        }
    }
}

TEST_CASE("dilation") {
    const HPoint p{0.3, 0.8, -1.1};
    CHECK(dilate(1.0, p) == p);
    const HPoint q = dilate(2.0, {1, 1, 1});
    CHECK(q == HPoint{2, 2, 4});
    CHECK_THROWS_AS(dilate(0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(dilate(-1.0, p), std::invalid_argument);

    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const HPoint a = random_point(rng);
        const double lam = rng.uniform(0.1, 5.0);
        CHECK(koranyi_norm(dilate(lam, a)) ==
              doctest::Approx(lam * koranyi_norm(a)).epsilon(1e-13));
    }
}

TEST_CASE("rotation") {
    const HPoint p{0.3, 0.8, -1.1};
    CHECK(rotate(0.0, p) == p);
    const HPoint q = rotate(M_PI, {1, 0, 0});
    CHECK(q.x == doctest::Approx(-1.0));
    CHECK(std::abs(q.y) < 1e-15);
    CHECK(q.u == 0.0);

    Rng rng(14);
    for (int i = 0; i < 200; ++i) {
        const HPoint a = random_point(rng);
        const double th = rng.uniform(0.0, 2 * M_PI);
        CHECK(koranyi_norm(rotate(th, a)) == doctest::Approx(koranyi_norm(a)).epsilon(1e-14));
    }
}

TEST_CASE("inversion") {
    const HPoint fixed = invert(ExtendedPoint(HPoint{1, 0, 0})).point();
    CHECK(fixed.x == doctest::Approx(1.0));
    CHECK(std::abs(fixed.y) < 1e-15);
    CHECK(std::abs(fixed.u) < 1e-15);

    const HPoint i1 = invert(ExtendedPoint(HPoint{0, 0, 1})).point();
    CHECK(i1.x == 0.0);
    CHECK(i1.y == 0.0);
    CHECK(i1.u == doctest::Approx(-1.0 / 16.0));

    CHECK(invert(ExtendedPoint(HPoint{0, 0, 0})).is_infinity());
    CHECK(invert(ExtendedPoint::infinity()).point() == HPoint{0, 0, 0});

    Rng rng(15);
    SUBCASE("involution") {
        for (int i = 0; i < 500; ++i) {
            const HPoint p = random_point(rng);
            if (koranyi_norm(p) < 1e-2) continue;
            const HPoint q = invert(invert(ExtendedPoint(p))).point();
            CHECK(std::abs(q.x - p.x) < 1e-12);
            CHECK(std::abs(q.y - p.y) < 1e-12);
            CHECK(std::abs(q.u - p.u) < 1e-12);
        }
    }
    SUBCASE("distance identity") {
        int done = 0;
        while (done < 500) {
            const HPoint p = random_point(rng), q = random_point(rng);
            const double np = koranyi_norm(p), nq = koranyi_norm(q);
            if (np < 0.1 || np > 10.0 || nq < 0.1 || nq > 10.0) continue;
            if (koranyi_dist(p, q) < 1e-3) continue;
            const HPoint ip = invert(ExtendedPoint(p)).point();
            const HPoint iq = invert(ExtendedPoint(q)).point();
            const double lhs = koranyi_dist(ip, iq) * np * nq;
            const double rhs = koranyi_dist(p, q);
            CHECK(std::abs(lhs - rhs) < 1e-10 * rhs);
            ++done;
        }
    }
}

TEST_CASE("A function") {
    CHECK(a_value({0, 0, 0}) == complexd(0, 0));
    CHECK(a_value({1, 0, 2}) == complexd(1, -8));

    Rng rng(16);
    for (int i = 0; i < 300; ++i) {
        const HPoint p = random_point(rng);
        const double n = koranyi_norm(p);
        CHECK(std::abs(a_value(p)) == doctest::Approx(n * n).epsilon(1e-13));
    }
}

TEST_CASE("relative A function") {
    const HPoint p{0.7, -0.4, 0.9};
    CHECK(std::abs(a_rel(p, p)) < 1e-15);
    CHECK(a_rel({0, 0, 0}, {1, 0, 0}) == complexd(1, 0));

    Rng rng(17);
    for (int i = 0; i < 300; ++i) {
        const HPoint a = random_point(rng), b = random_point(rng);
        // closed form vs direct composition
        const complexd direct = a_value(h_mul(h_inv(a), b));
        CHECK(std::abs(a_rel(a, b) - direct) < 1e-12);
        // conjugate symmetry, using A(p^-1) = conj A(p)
        const complexd swapped = a_value(h_mul(h_inv(b), a));
        CHECK(std::abs(a_rel(b, a) - swapped) < 1e-12);
        CHECK(std::abs(a_rel(b, a) - std::conj(a_rel(a, b))) < 1e-12);
        // |rho| = d^2
        const double d = koranyi_dist(a, b);
        CHECK(std::abs(a_rel(a, b)) == doctest::Approx(d * d).epsilon(1e-12));
    }
}

TEST_CASE("extended point rejects metric use of infinity") {
    CHECK_THROWS_AS(ExtendedPoint::infinity().point(), std::domain_error);
}
