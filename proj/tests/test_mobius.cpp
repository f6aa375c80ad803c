#include <doctest.h>

#include "mobius.hpp"
#include "rng.hpp"

using namespace hknot;

namespace {

HPoint random_point(Rng& rng, double lo = -2.0, double hi = 2.0) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

HPoint apply_finite(const MobiusMatrix& m, const HPoint& p) {
    const ExtendedPoint e = apply_point(m, ExtendedPoint(p));
    REQUIRE(!e.is_infinity());
    return e.point();
}

void check_close(const HPoint& a, const HPoint& b, double tol = 1e-10) {
    CHECK(std::abs(a.x - b.x) < tol);
    CHECK(std::abs(a.y - b.y) < tol);
    CHECK(std::abs(a.u - b.u) < tol);
}

}  // namespace

TEST_CASE("translation matrices act by left multiplication") {
    Rng rng(21);
    check_close(apply_finite(mat_translation({0, 0, 0}), {0.3, -0.7, 0.2}), {0.3, -0.7, 0.2});
    for (int i = 0; i < 300; ++i) {
        const HPoint p0 = random_point(rng), q = random_point(rng);
        CHECK(mat_translation(p0).form_residual() < 1e-12);
        check_close(apply_finite(mat_translation(p0), q), h_mul(p0, q), 1e-12);
    }
}

TEST_CASE("dilation and rotation matrices match the closed forms") {
    check_close(apply_finite(mat_dilation(2.0), {1, 1, 1}), {2, 2, 4}, 1e-13);
    check_close(apply_finite(mat_rotation(M_PI), {1, 0, 0}), {-1, 0, 0}, 1e-13);
    CHECK_THROWS_AS(mat_dilation(0.0), std::invalid_argument);
    CHECK_THROWS_AS(mat_dilation(-2.0), std::invalid_argument);

    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const HPoint q = random_point(rng);
        const double lam = std::exp(rng.uniform(-1.0, 1.0));
        const double th = rng.uniform(0.0, 2 * M_PI);
        check_close(apply_finite(mat_dilation(lam), q), dilate(lam, q), 1e-12);
        check_close(apply_finite(mat_rotation(th), q), rotate(th, q), 1e-12);
        CHECK(mat_dilation(lam).form_residual() < 1e-12);
        CHECK(mat_rotation(th).form_residual() < 1e-12);
    }
    // identity dilation
    const HPoint p{0.5, 0.6, 0.7};
    check_close(apply_finite(mat_dilation(1.0), p), p, 1e-15);
}

TEST_CASE("inversion matrix") {
    const MobiusMatrix inv = mat_inversion();
    CHECK(inv.form_residual() < 1e-14);
    check_close(apply_finite(inv, {1, 0, 0}), {1, 0, 0}, 1e-13);
    CHECK(apply_point(inv, ExtendedPoint(HPoint{0, 0, 0})).is_infinity());
    check_close(apply_finite(inv, {0, 0, 1}), {0, 0, -1.0 / 16.0}, 1e-14);

    Rng rng(23);
    for (int i = 0; i < 300; ++i) {
        const HPoint q = random_point(rng);
        if (koranyi_norm(q) < 1e-2) continue;
        const ExtendedPoint img = invert(ExtendedPoint(q));
        check_close(apply_finite(inv, q), img.point(), 1e-11);
        // involution through the matrix route
        check_close(apply_finite(compose(inv, inv), q), q, 1e-12);
    }
}

TEST_CASE("compose") {
    Rng rng(24);
    const MobiusMatrix identity;
    for (int i = 0; i < 100; ++i) {
        const HPoint p0 = random_point(rng), q0 = random_point(rng), x = random_point(rng);
        const MobiusMatrix m1 = mat_translation(p0);
        const MobiusMatrix m2 = mat_translation(q0);
        // compose(T_p, T_q) acts as T_{pq}
        check_close(apply_finite(compose(m1, m2), x), h_mul(h_mul(p0, q0), x), 1e-11);
        // action contract
        check_close(apply_finite(compose(m1, m2), x), apply_finite(m1, apply_finite(m2, x)),
                    1e-11);
        // identity composition
        check_close(apply_finite(compose(m1, identity), x), apply_finite(m1, x), 1e-12);
    }
}

TEST_CASE("random words") {
    // determinism
    const MobiusMatrix a = random_mobius(42, 6);
    const MobiusMatrix b = random_mobius(42, 6);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(a.at(r, c) == b.at(r, c));
    CHECK(a.word() == b.word());
    CHECK(a.word().size() == 6);

    CHECK_THROWS_AS(random_mobius(1, 0), std::invalid_argument);

    Rng rng(25);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const MobiusMatrix m = random_mobius(seed, 5);
        CHECK(m.form_residual() < 1e-8);
        // boundary relation is preserved along the way (apply_point checks it)
        for (int i = 0; i < 5; ++i) {
            const HPoint p = random_point(rng);
            CHECK_NOTHROW(apply_point(m, ExtendedPoint(p)));
        }
    }
}

TEST_CASE("random word of generators agrees with sequential core operations") {
    Rng rng(26);
    for (int trial = 0; trial < 40; ++trial) {
        MobiusMatrix m;
        HPoint p = random_point(rng);
        ExtendedPoint tracked(p);
        // build a word while tracking the point through core ops
        for (int k = 0; k < 5; ++k) {
            switch (rng.next_int(4)) {
                case 0: {
                    const HPoint t = random_point(rng, -1.0, 1.0);
                    m = compose(mat_translation(t), m);
                    if (!tracked.is_infinity()) tracked = ExtendedPoint(h_mul(t, tracked.point()));
                    break;
                }
                case 1: {
                    const double lam = std::exp(rng.uniform(-0.5, 0.5));
                    m = compose(mat_dilation(lam), m);
                    if (!tracked.is_infinity())
                        tracked = ExtendedPoint(dilate(lam, tracked.point()));
                    break;
                }
                case 2: {
                    const double th = rng.uniform(0.0, 2 * M_PI);
                    m = compose(mat_rotation(th), m);
                    if (!tracked.is_infinity())
                        tracked = ExtendedPoint(rotate(th, tracked.point()));
                    break;
                }
                default:
                    m = compose(mat_inversion(), m);
                    tracked = invert(tracked);
                    break;
            }
        }
        const ExtendedPoint got = apply_point(m, ExtendedPoint(p));
        REQUIRE(got.is_infinity() == tracked.is_infinity());
        if (!got.is_infinity()) {
            const double scale = std::max(1.0, koranyi_norm(tracked.point()));
            check_close(got.point(), tracked.point(), 1e-8 * scale * scale);
        }
    }
}

TEST_CASE("compose validates inputs") {
    MobiusMatrix bad(std::array<complexd, 9>{complexd(1), complexd(2), 0, 0, complexd(1), 0, 0,
                                             0, complexd(1)});
    CHECK(bad.form_residual() > 1e-6);
    CHECK_THROWS_AS(compose(bad, MobiusMatrix()), std::invalid_argument);
}
