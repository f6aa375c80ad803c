#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fourier.hpp"
#include "heisenberg.hpp"
#include "mobius.hpp"

namespace hknot {

struct CurveJets {
    double kappa = 0.0;   // signed curvature of the planar projection
    double kappa1 = 0.0;  // d kappa / ds
    double kappa2 = 0.0;  // d^2 kappa / ds^2
};

// Closed planar curve given by finite Fourier series for x(t), y(t),
// t in [0, 2 pi).  Derivatives are exact coefficient operations.
class PlanarCurve {
public:
    PlanarCurve(TrigSeries x, TrigSeries y);

    int order() const { return std::max(x_.order(), y_.order()); }
    const TrigSeries& xs() const { return x_; }
    const TrigSeries& ys() const { return y_; }

    double x(double t, int deriv = 0) const { return x_.eval(t, deriv); }
    double y(double t, int deriv = 0) const { return y_.eval(t, deriv); }
    complexd z(double t) const { return {x(t), y(t)}; }
    complexd dz(double t) const { return {x(t, 1), y(t, 1)}; }
    double speed(double t) const;

    // 1/2 oint (x y' - y x') dt, exact in the coefficients; the Legendrian
    // lift closes iff this vanishes
    double signed_area() const;

    // gradient of signed_area in the coefficient layout of pack()
    std::vector<double> area_gradient() const;

    // min |(x', y')| over a 4096-point grid; immersion requires > 1e-6
    double min_speed() const;
    bool immersed() const { return min_speed() > 1e-6; }

    // curvature and its first two arc-length derivatives at parameter t
    CurveJets jets(double t) const;

    PlanarCurve translated(double dx, double dy) const;
    PlanarCurve scaled(double factor) const;

    // coefficient vector [xc0..xcN, xs1..xsN, yc0..ycN, ys1..ysN]
    std::vector<double> pack() const;
    static PlanarCurve unpack(const std::vector<double>& coeffs, int order);

private:
    TrigSeries x_, y_;
};

PlanarCurve gerono_curve(double scale = 1.0);

// planar projection of the finite R-circle through p0 with direction (a, b),
// zero-area corrected; order <= 0 picks the smallest order fitting to 1e-10
PlanarCurve finite_r_circle_projection(const HPoint& p0, double a, double b, int order = 0);

// One-dimensional Newton correction along the area gradient until
// |signed_area| < 1e-12 * L^2; throws on degenerate gradient.
PlanarCurve project_zero_area(const PlanarCurve& c);

class LegendrianKnot;
using KnotPtr = std::shared_ptr<const LegendrianKnot>;

// Arc-length sampled Legendrian curve carrying per-sample position, planar
// unit tangent and curvature jets, plus an exact evaluator for any s.
class LegendrianKnot {
public:
    struct Sample {
        double s;
        HPoint p;
        complexd tangent;  // unit planar tangent
        double kappa, kappa1, kappa2;
    };

    bool closed() const { return closed_; }
    double length() const { return length_; }
    int size() const { return static_cast<int>(samples_.size()); }
    const std::vector<Sample>& samples() const { return samples_; }
    const Sample& sample(int i) const { return samples_[i]; }
    const std::string& provenance() const { return provenance_; }

    // exact evaluation at any arc length (periodic for closed knots)
    HPoint point(double s) const;
    complexd planar_tangent(double s) const;  // unit
    CurveJets jets(double s) const;

    // signed Koranyi chord length from gamma(s0)
    double chord(double s0, double s) const;
    // d/ds of the unsigned Koranyi distance s -> d(gamma(s0), gamma(s))
    double chord_derivative(double s0, double s) const;

    double arc_dist(double s, double s2) const;

    // min over sample pairs with arc_dist >= length/16 of d_H
    double embeddedness_margin() const;
    // max pairwise Koranyi distance over (subsampled) samples
    double diameter() const;

    // largest epsilon such that {d(gamma(s0), .) < eps} is a single
    // monotone-chord interval around s0, for every base sample (cached)
    double safe_epsilon() const;
    // arc-length half-width of that window
    double safe_window() const;

    // solves chord(s0, s0 + side*delta) = side*eps for delta in (0, window];
    // side = +-1.  Newton with the exact chord derivative.
    double cut_distance(double s0, double eps, int side) const;

    // underlying planar curve when this knot is a Fourier lift
    const PlanarCurve* planar_curve() const;
    // arc length at curve parameter t (Fourier lifts only)
    double arc_of_parameter(double t) const;

    static KnotPtr lift(const PlanarCurve& c, const HPoint& base, int n,
                        bool require_closed, std::string provenance = "lift");
    static KnotPtr infinite_r_circle(const HPoint& p0, double a, double b,
                                     double s_min, double s_max, int n);
    static KnotPtr finite_r_circle(const HPoint& p0, double a, double b, int n);

    struct Backend;

private:
    LegendrianKnot() = default;
    friend struct KnotBuilder;

    bool closed_ = true;
    double length_ = 0.0;
    std::vector<Sample> samples_;
    std::string provenance_;

    std::shared_ptr<const Backend> backend_;
    mutable double safe_eps_ = -1.0;
    mutable double safe_window_ = 0.0;
};

struct TransformedKnot {
    KnotPtr knot;
    // arc length on the image corresponding to arc length s on the source
    // (same orientation, image_s(0) = 0)
    std::vector<double> source_s, image_s;  // dense monotone table
    double image_arc(double source_arc) const;
};

// Mobius image of a knot: maps a dense sample set, refits the planar
// projection by least squares, re-lifts from a mapped anchor point and
// resamples to uniform arc length.  Throws if any point maps to infinity
// or the boundary check fails.
TransformedKnot transform_knot(const LegendrianKnot& k, const MobiusMatrix& m, int n);

}  // namespace hknot
