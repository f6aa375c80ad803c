#include <doctest.h>

#include <cmath>

#include "curves.hpp"
#include "rng.hpp"
#include "testutil.hpp"

using namespace hknot;
using namespace hknot::testutil;

TEST_CASE("signed area") {
    CHECK(unit_circle().signed_area() == doctest::Approx(M_PI).epsilon(1e-14));
    // reversing orientation: t -> -t flips the sign of every sine coefficient
    TrigSeries x(1), y(1);
    x.cosc(1) = 1.0;
    y.sinc(1) = -1.0;
    CHECK(PlanarCurve(x, y).signed_area() == doctest::Approx(-M_PI).epsilon(1e-14));
    CHECK(gerono_curve().signed_area() == 0.0);
}

TEST_CASE("curvature jets against the symbolic oracle") {
    SUBCASE("circle") {
        const PlanarCurve c = circle(2.5);
        for (double t : {0.0, 0.9, 3.7}) {
            const CurveJets j = c.jets(t);
            CHECK(j.kappa == doctest::Approx(1.0 / 2.5).epsilon(1e-13));
            CHECK(std::abs(j.kappa1) < 1e-12);
            CHECK(std::abs(j.kappa2) < 1e-12);
        }
    }
    SUBCASE("gerono") {
        const PlanarCurve g = gerono_curve();
        // frozen values from symbolic differentiation of (cos t, sin(2t)/2)
        const CurveJets j0 = g.jets(0.0);
        CHECK(j0.kappa == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(j0.kappa1) < 1e-12);
        CHECK(j0.kappa2 == doctest::Approx(12.0).epsilon(1e-12));
        const CurveJets j3 = g.jets(1.0 / 3.0);
        CHECK(j3.kappa == doctest::Approx(1.8597560432052057).epsilon(1e-13));
        CHECK(j3.kappa1 == doctest::Approx(7.4628902016094150).epsilon(1e-12));
        CHECK(j3.kappa2 == doctest::Approx(53.599056397302365).epsilon(1e-11));
    }
}

TEST_CASE("legendrian lift") {
    SUBCASE("unit circle lift does not close") {
        const PlanarCurve c = unit_circle();
        CHECK_THROWS_AS(LegendrianKnot::lift(c, {1, 0, 0}, 128, true), std::invalid_argument);
        const KnotPtr k = LegendrianKnot::lift(c, {1, 0, 0}, 128, false);
        CHECK(!k->closed());
        CHECK(k->length() == doctest::Approx(2 * M_PI).epsilon(1e-12));
        // u(s) = s/2 along the lift (y x' - x y' = -1 on the unit circle)
        for (double s : {0.5, 1.0, 3.0, 6.0})
            CHECK(k->point(s).u == doctest::Approx(0.5 * s).epsilon(1e-12));
        CHECK(k->point(k->length()).u == doctest::Approx(M_PI).epsilon(1e-12));
    }
    SUBCASE("gerono lift satisfies the knot invariants") {
        const KnotPtr k = gerono_knot(512);
        CHECK(k->closed());
        CHECK(k->length() == doctest::Approx(6.0972234701049160).epsilon(1e-12));
        const int n = k->size();
        for (int i = 0; i < n; ++i) {
            const auto& s = k->sample(i);
            CHECK(std::abs(std::abs(s.tangent) - 1.0) < 1e-10);  // unit speed
            // horizontality residual with the backend's exact derivative data:
            // du/ds = -(y x' - x y')/2 evaluated from samples
            const double fd = 1e-6;
            const double du = (k->point(s.s + fd).u - k->point(s.s - fd).u) / (2 * fd);
            CHECK(std::abs(du + 0.5 * (s.p.y * s.tangent.real() - s.p.x * s.tangent.imag())) <
                  1e-8);
        }
        // closure of the first/last point
        const HPoint a = k->point(0.0), b = k->point(k->length());
        CHECK(std::abs(a.x - b.x) < 1e-9);
        CHECK(std::abs(a.y - b.y) < 1e-9);
        CHECK(std::abs(a.u - b.u) < 1e-9);
    }
    SUBCASE("length equals the planar projection length") {
        const KnotPtr k = gerono_knot(256);
        // independent dense polyline oracle on the projection
        const PlanarCurve g = gerono_curve();
        const int m = 1 << 21;
        long double acc = 0.0;
        double px = g.x(0.0), py = g.y(0.0);
        for (int j = 1; j <= m; ++j) {
            const double t = 2.0 * M_PI * j / m;
            const double cx = g.x(t), cy = g.y(t);
            acc += std::hypot(cx - px, cy - py);
            px = cx;
            py = cy;
        }
        // the polyline underestimates by O(m^-2) ~ 3e-12 relative
        CHECK(k->length() == doctest::Approx(static_cast<double>(acc)).epsilon(1e-10));
    }
    SUBCASE("lift rejects non-immersed curves") {
        TrigSeries x(1), y(1);  // constant curve
        CHECK_THROWS_AS(LegendrianKnot::lift(PlanarCurve(x, y), {0, 0, 0}, 128, false),
                        std::invalid_argument);
    }
    SUBCASE("sample count validation") {
        CHECK_THROWS_AS(gerono_knot(62), std::invalid_argument);
        CHECK_THROWS_AS(gerono_knot(65), std::invalid_argument);
    }
}

TEST_CASE("infinite R-circles") {
    SUBCASE("axis line") {
        const KnotPtr k = LegendrianKnot::infinite_r_circle({0, 0, 0}, 1, 0, -3, 3, 128);
        CHECK(!k->closed());
        for (const auto& s : k->samples()) {
            CHECK(s.p.y == 0.0);
            CHECK(s.p.u == 0.0);
            CHECK(s.p.x == doctest::Approx(s.s).epsilon(1e-15));
            CHECK(s.kappa == 0.0);
        }
    }
    SUBCASE("chord equals arc separation on any line") {
        const KnotPtr k = LegendrianKnot::infinite_r_circle({0.7, -1.3, 0.4}, 2, 1, -4, 4, 128);
        for (int i = 0; i < k->size(); i += 13)
            for (int j = 0; j < k->size(); j += 17) {
                const double d = koranyi_dist(k->sample(i).p, k->sample(j).p);
                CHECK(d == doctest::Approx(std::abs(k->sample(i).s - k->sample(j).s))
                               .epsilon(1e-12));
            }
    }
    SUBCASE("horizontality is exact") {
        const KnotPtr k = LegendrianKnot::infinite_r_circle({1, 2, 3}, 1, -1, -2, 2, 128);
        for (const auto& s : k->samples()) {
            const complexd t = s.tangent;
            const double uprime = -0.5 * (s.p.y * t.real() - s.p.x * t.imag());
            const HPoint ahead = k->point(s.s + 1e-6);
            CHECK(std::abs((ahead.u - s.p.u) / 1e-6 - uprime) < 1e-6);
        }
    }
    CHECK_THROWS_AS(LegendrianKnot::infinite_r_circle({0, 0, 0}, 0, 0, -1, 1, 128),
                    std::invalid_argument);
}

TEST_CASE("finite R-circle") {
    const KnotPtr k = r_circle_knot(512);
    CHECK(k->closed());
    CHECK(k->embeddedness_margin() > 0.0);
    SUBCASE("knot invariants") {
        for (const auto& s : k->samples())
            CHECK(std::abs(std::abs(s.tangent) - 1.0) < 1e-10);
        const HPoint a = k->point(0.0), b = k->point(k->length());
        CHECK(std::abs(a.x - b.x) < 1e-9);
        CHECK(std::abs(a.y - b.y) < 1e-9);
        CHECK(std::abs(a.u - b.u) < 1e-9);
    }
    SUBCASE("inversion sends the knot back to the source line") {
        // line through (0,1,0), direction (1,0): points (t, 1, -t/2); near the
        // origin sample the pullback amplifies error by the line scale |t|
        for (const auto& s : k->samples()) {
            if (koranyi_norm(s.p) < 1e-4) continue;  // the origin sample maps to infinity
            const HPoint q = invert(ExtendedPoint(s.p)).point();
            const double scale = std::max(1.0, std::abs(q.x));
            CHECK(std::abs(q.y - 1.0) < 1e-8 * scale);
            CHECK(std::abs(q.u + 0.5 * q.x) < 1e-8 * scale);
        }
    }
    SUBCASE("line through the origin is rejected") {
        CHECK_THROWS_AS(LegendrianKnot::finite_r_circle({0, 0, 0}, 1, 0, 128),
                        std::invalid_argument);
    }
}

TEST_CASE("chord function") {
    const KnotPtr g = gerono_knot(512);
    SUBCASE("basics") {
        CHECK(g->chord(1.0, 1.0) == 0.0);
        const KnotPtr line = LegendrianKnot::infinite_r_circle({0, 0, 0}, 1, 0, -5, 5, 128);
        for (double s : {-2.0, -0.5, 1.0, 4.0}) CHECK(line->chord(0.0, s) == doctest::Approx(s));
    }
    SUBCASE("cubic coefficient of the expansion") {
        // (s - ch(s0, s0+s))/s^3 -> kappa^2/72 over a dyadic ladder
        for (int b = 0; b < 20; ++b) {
            const double s0 = g->length() * b / 20.0;
            const double kap = g->jets(s0).kappa;
            const double target = kap * kap / 72.0;
            const double s = std::pow(2.0, -9);
            const double est = (s - g->chord(s0, s0 + s)) / (s * s * s);
            CHECK(est == doctest::Approx(target).epsilon(0.01));
        }
    }
    SUBCASE("chord derivative matches finite differences") {
        Rng rng(31);
        for (int i = 0; i < 50; ++i) {
            const double s0 = rng.uniform(0.0, g->length());
            const double s = s0 + rng.uniform(0.1, 2.0);
            const double h = 1e-6;
            const double fd =
                (std::abs(g->chord(s0, s + h)) - std::abs(g->chord(s0, s - h))) / (2 * h);
            CHECK(g->chord_derivative(s0, s) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    SUBCASE("cut distances invert the chord") {
        const double eps = 0.3 * g->safe_epsilon();
        for (int i = 0; i < g->size(); i += 37) {
            const double s0 = g->sample(i).s;
            const double dp = g->cut_distance(s0, eps, +1);
            const double dm = g->cut_distance(s0, eps, -1);
            CHECK(std::abs(g->chord(s0, s0 + dp) - eps) < 1e-11);
            CHECK(std::abs(g->chord(s0, s0 - dm) + eps) < 1e-11);
        }
    }
}

TEST_CASE("arc distance") {
    const KnotPtr g = gerono_knot(256);
    CHECK(g->arc_dist(1.2, 1.2) == 0.0);
    const double L = g->length();
    CHECK(g->arc_dist(0.0, 0.75 * L) == doctest::Approx(0.25 * L));
    // d_H <= arc distance on all sample pairs
    const int n = g->size();
    for (int i = 0; i < n; i += 7)
        for (int j = 0; j < n; j += 11) {
            const double d = koranyi_dist(g->sample(i).p, g->sample(j).p);
            CHECK(d <= g->arc_dist(g->sample(i).s, g->sample(j).s) + 1e-12);
        }
}

TEST_CASE("embeddedness margin") {
    SUBCASE("r-circle margin equals the brute-force scan") {
        const KnotPtr k = r_circle_knot(256);
        const double margin = k->embeddedness_margin();
        CHECK(margin > 0.0);
        double oracle = std::numeric_limits<double>::infinity();
        for (int i = 0; i < k->size(); ++i)
            for (int j = i + 1; j < k->size(); ++j) {
                if (k->arc_dist(k->sample(i).s, k->sample(j).s) < k->length() / 16.0) continue;
                oracle = std::min(oracle, koranyi_dist(k->sample(i).p, k->sample(j).p));
            }
        CHECK(margin == doctest::Approx(oracle).epsilon(1e-15));
    }
    SUBCASE("pinch family margin shrinks with sigma") {
        double prev = std::numeric_limits<double>::infinity();
        for (double sigma : {0.4, 0.2, 0.1}) {
            const PlanarCurve c = pinch_curve(sigma);
            const KnotPtr k = LegendrianKnot::lift(c, {c.x(0), c.y(0), 0}, 512, true, "pinch");
            const double m = k->embeddedness_margin();
            CHECK(m > 0.0);
            CHECK(m < prev);
            CHECK(m <= sigma + 1e-9);
            prev = m;
        }
    }
    SUBCASE("margin is invariant under rotations") {
        // rotating the planar curve rotates the lift; the margin is unchanged
        const PlanarCurve c = pinch_curve(0.3);
        const KnotPtr k = LegendrianKnot::lift(c, {c.x(0), c.y(0), 0}, 256, true, "pinch");
        const double phi = 0.83;
        TrigSeries xr(c.order()), yr(c.order());
        for (int kk = 0; kk <= c.order(); ++kk) {
            xr.cosc(kk) = std::cos(phi) * c.xs().cosc(kk) - std::sin(phi) * c.ys().cosc(kk);
            xr.sinc(kk) = std::cos(phi) * c.xs().sinc(kk) - std::sin(phi) * c.ys().sinc(kk);
            yr.cosc(kk) = std::sin(phi) * c.xs().cosc(kk) + std::cos(phi) * c.ys().cosc(kk);
            yr.sinc(kk) = std::sin(phi) * c.xs().sinc(kk) + std::cos(phi) * c.ys().sinc(kk);
        }
        const PlanarCurve cr(xr, yr);
        const KnotPtr kr = LegendrianKnot::lift(cr, {cr.x(0), cr.y(0), 0}, 256, true, "pinch");
        CHECK(kr->embeddedness_margin() ==
              doctest::Approx(k->embeddedness_margin()).epsilon(1e-10));
    }
}

TEST_CASE("speed identity under inversion") {
    // knot kept away from the origin; |d/ds iota(gamma)| = 1/||gamma||^2
    const PlanarCurve g = gerono_curve();
    const KnotPtr k = LegendrianKnot::lift(g, {g.x(0) + 4.0, g.y(0) + 1.0, 0.5}, 512, true);
    const double h = 1e-5;
    for (int i = 0; i < k->size(); i += 31) {
        const double s = k->sample(i).s;
        const HPoint a = invert(ExtendedPoint(k->point(s - h))).point();
        const HPoint b = invert(ExtendedPoint(k->point(s + h))).point();
        const double speed_img = koranyi_dist(a, b) / (2 * h);
        const double nrm = koranyi_norm(k->point(s));
        CHECK(speed_img == doctest::Approx(1.0 / (nrm * nrm)).epsilon(1e-4));
    }
}

TEST_CASE("zero area projection") {
    SUBCASE("fixed point") {
        const PlanarCurve g = gerono_curve();
        const PlanarCurve p = project_zero_area(g);
        const auto a = g.pack();
        const auto b = p.pack();
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
    }
    SUBCASE("unit circle projects to a zero-area immersed curve") {
        const PlanarCurve c = project_zero_area(unit_circle());
        CHECK(std::abs(c.signed_area()) < 1e-12 * 4 * M_PI * M_PI);
        CHECK(c.immersed());
    }
}

TEST_CASE("mobius images of knots") {
    const KnotPtr g = gerono_knot(256);
    SUBCASE("translation image equals pointwise left multiplication") {
        const HPoint t{0.4, -0.8, 0.3};
        const TransformedKnot img = transform_knot(*g, mat_translation(t), 256);
        REQUIRE(img.knot->closed());
        for (int i = 0; i < g->size(); i += 17) {
            const double s = g->sample(i).s;
            const HPoint expect = h_mul(t, g->sample(i).p);
            const HPoint got = img.knot->point(img.image_arc(s));
            CHECK(std::abs(got.x - expect.x) < 1e-8);
            CHECK(std::abs(got.y - expect.y) < 1e-8);
            CHECK(std::abs(got.u - expect.u) < 1e-8);
        }
        // translations preserve arc length
        CHECK(img.knot->length() == doctest::Approx(g->length()).epsilon(1e-10));
    }
    SUBCASE("random word images stay Legendrian knots") {
        for (std::uint64_t seed : {3u, 9u, 27u}) {
            const MobiusMatrix m = random_mobius(seed, 4);
            TransformedKnot img = transform_knot(*g, m, 256);
            CHECK(img.knot->closed());
            CHECK(img.knot->embeddedness_margin() > 0.0);
            for (const auto& s : img.knot->samples())
                CHECK(std::abs(std::abs(s.tangent) - 1.0) < 1e-9);
        }
    }
}
