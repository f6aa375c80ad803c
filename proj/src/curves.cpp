#include "curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hknot {

namespace {

constexpr double kImmersionTol = 1e-6;
constexpr int kImmersionGrid = 4096;

double planar_length(const PlanarCurve& c, int grid = 2048) {
    double acc = 0.0;
    for (int j = 0; j < grid; ++j) acc += c.speed(2.0 * M_PI * j / grid);
    return acc * 2.0 * M_PI / grid;
}

}  // namespace

PlanarCurve::PlanarCurve(TrigSeries x, TrigSeries y) : x_(std::move(x)), y_(std::move(y)) {}

double PlanarCurve::speed(double t) const { return std::hypot(x_.eval(t, 1), y_.eval(t, 1)); }

double PlanarCurve::signed_area() const {
    // 1/2 oint (x y' - y x') = pi sum_k k (xc_k ys_k - xs_k yc_k)
    double acc = 0.0;
    const int n = std::min(x_.order(), y_.order());
    for (int k = 1; k <= n; ++k)
        acc += k * (x_.cosc(k) * y_.sinc(k) - x_.sinc(k) * y_.cosc(k));
    return M_PI * acc;
}

std::vector<double> PlanarCurve::area_gradient() const {
    const int n = order();
    std::vector<double> g(2 * (2 * n + 1), 0.0);
    // layout [xc0..xcN, xs1..xsN, yc0..ycN, ys1..ysN]
    auto yc = [&](int k) { return k <= y_.order() ? y_.cosc(k) : 0.0; };
    auto ys = [&](int k) { return k <= y_.order() ? y_.sinc(k) : 0.0; };
    auto xc = [&](int k) { return k <= x_.order() ? x_.cosc(k) : 0.0; };
    auto xsn = [&](int k) { return k <= x_.order() ? x_.sinc(k) : 0.0; };
    for (int k = 1; k <= n; ++k) {
        g[k] = M_PI * k * ys(k);                       // d/d xc_k
        g[n + k] = -M_PI * k * yc(k);                  // d/d xs_k
        g[2 * n + 1 + k] = -M_PI * k * xsn(k);         // d/d yc_k
        g[3 * n + 1 + k] = M_PI * k * xc(k);           // d/d ys_k
    }
    return g;
}

double PlanarCurve::min_speed() const {
    double mn = std::numeric_limits<double>::infinity();
    for (int j = 0; j < kImmersionGrid; ++j)
        mn = std::min(mn, speed(2.0 * M_PI * j / kImmersionGrid));
    return mn;
}

CurveJets PlanarCurve::jets(double t) const {
    const double xd = x_.eval(t, 1), yd = y_.eval(t, 1);
    const double xdd = x_.eval(t, 2), ydd = y_.eval(t, 2);
    const double x3 = x_.eval(t, 3), y3 = y_.eval(t, 3);
    const double x4 = x_.eval(t, 4), y4 = y_.eval(t, 4);
    const double v = std::hypot(xd, yd);
    if (!(v > kImmersionTol)) throw std::domain_error("PlanarCurve::jets: immersion failure");
    const double c = xd * ydd - yd * xdd;
    const double cd = xd * y3 - yd * x3;
    const double cdd = xdd * y3 + xd * y4 - ydd * x3 - yd * x4;
    const double vd = (xd * xdd + yd * ydd) / v;
    const double vdd = (xdd * xdd + xd * x3 + ydd * ydd + yd * y3 - vd * vd) / v;
    const double v3 = v * v * v, v4 = v3 * v, v5 = v4 * v;
    const double kap = c / v3;
    const double kapd = cd / v3 - 3.0 * c * vd / v4;
    const double kapdd =
        cdd / v3 - 6.0 * cd * vd / v4 - 3.0 * c * vdd / v4 + 12.0 * c * vd * vd / v5;
    CurveJets j;
    j.kappa = kap;
    j.kappa1 = kapd / v;
    j.kappa2 = kapdd / (v * v) - kapd * vd / v3;
    return j;
}

PlanarCurve PlanarCurve::translated(double dx, double dy) const {
    TrigSeries nx = x_, ny = y_;
    nx.cosc(0) += dx;
    ny.cosc(0) += dy;
    return PlanarCurve(nx, ny);
}

PlanarCurve PlanarCurve::scaled(double factor) const {
    return PlanarCurve(factor * x_, factor * y_);
}

std::vector<double> PlanarCurve::pack() const {
    const int n = order();
    std::vector<double> v(2 * (2 * n + 1), 0.0);
    for (int k = 0; k <= n; ++k) {
        v[k] = k <= x_.order() ? x_.cosc(k) : 0.0;
        v[2 * n + 1 + k] = k <= y_.order() ? y_.cosc(k) : 0.0;
    }
    for (int k = 1; k <= n; ++k) {
        v[n + k] = k <= x_.order() ? x_.sinc(k) : 0.0;
        v[3 * n + 1 + k] = k <= y_.order() ? y_.sinc(k) : 0.0;
    }
    return v;
}

PlanarCurve PlanarCurve::unpack(const std::vector<double>& coeffs, int order) {
    if (static_cast<int>(coeffs.size()) != 2 * (2 * order + 1))
        throw std::invalid_argument("PlanarCurve::unpack: coefficient count mismatch");
    TrigSeries x(order), y(order);
    for (int k = 0; k <= order; ++k) {
        x.cosc(k) = coeffs[k];
        y.cosc(k) = coeffs[2 * order + 1 + k];
    }
    for (int k = 1; k <= order; ++k) {
        x.sinc(k) = coeffs[order + k];
        y.sinc(k) = coeffs[3 * order + 1 + k];
    }
    return PlanarCurve(x, y);
}

PlanarCurve gerono_curve(double scale) {
    TrigSeries x(2), y(2);
    x.cosc(1) = scale;
    y.sinc(2) = 0.5 * scale;
    return PlanarCurve(x, y);
}

PlanarCurve project_zero_area(const PlanarCurve& c) {
    PlanarCurve cur = c;
    const double L = planar_length(c);
    const double tol = 1e-12 * L * L;
    for (int it = 0; it < 20; ++it) {
        const double a = cur.signed_area();
        if (std::abs(a) <= tol) return cur;
        const auto g = cur.area_gradient();
        double g2 = 0.0;
        for (double gi : g) g2 += gi * gi;
        if (!(g2 > 1e-24)) throw std::runtime_error("project_zero_area: degenerate area gradient");
        auto v = cur.pack();
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= a * g[i] / g2;
        cur = PlanarCurve::unpack(v, cur.order());
    }
    if (std::abs(cur.signed_area()) > tol)
        throw std::runtime_error("project_zero_area: did not converge");
    return cur;
}

// ---------------------------------------------------------------------------
// knot backends
// ---------------------------------------------------------------------------

struct LegendrianKnot::Backend {
    virtual ~Backend() = default;
    virtual HPoint point(double s) const = 0;
    virtual complexd tangent(double s) const = 0;
    virtual CurveJets jets(double s) const = 0;
    virtual const PlanarCurve* curve() const { return nullptr; }
};

namespace {

// Fourier curve reparametrized by arc length, with the vertical coordinate
// obtained from the exact antiderivative of (x y' - y x')/2.
struct FourierLiftBackend final : LegendrianKnot::Backend {
    PlanarCurve c;
    TrigSeries u_per;        // periodic part of the u antiderivative
    double u_slope = 0.0;    // linear-in-t part; 0 iff the lift closes
    double u0 = 0.0;
    TrigSeries s_per;        // periodic part of the length function
    double s_mean = 0.0;     // L = 2 pi s_mean
    double L = 0.0;
    bool closed = true;

    explicit FourierLiftBackend(PlanarCurve curve) : c(std::move(curve)) {
        // g = x y' - y x'; u(t) = u0 + (1/2) int_0^t g
        TrigSeries g = trig_mul(c.xs(), c.ys().derivative()) -
                       trig_mul(c.ys(), c.xs().derivative());
        u_slope = 0.5 * g.mean();
        u_per = 0.5 * g.periodic_antiderivative();

        // band-limited projection of the (analytic, periodic) speed
        int fit_order = std::max(64, 8 * c.order());
        for (;;) {
            const int m = std::max(4096, 8 * fit_order);
            std::vector<double> sp(m);
            for (int j = 0; j < m; ++j) sp[j] = c.speed(2.0 * M_PI * j / m);
            TrigSeries fit = trig_fit(sp, fit_order);
            double resid = 0.0;
            for (int j = 0; j < m; j += 7)
                resid = std::max(resid, std::abs(fit.eval(2.0 * M_PI * j / m) - sp[j]));
            s_mean = fit.mean();
            if (resid < 1e-12 * std::max(1.0, s_mean) || fit_order >= 2048) {
                s_per = fit.periodic_antiderivative();
                break;
            }
            fit_order *= 2;
        }
        L = 2.0 * M_PI * s_mean;
    }

    double u_of_t(double t) const { return u0 + u_slope * t + u_per.eval(t); }
    double s_of_t(double t) const { return s_mean * t + s_per.eval(t); }

    double t_of_s(double s) const {
        double shift = 0.0;
        if (closed) {
            const double k = std::floor(s / L);
            shift = 2.0 * M_PI * k;
            s -= k * L;
        }
        double lo = 0.0, hi = 2.0 * M_PI, t = s / s_mean;
        for (int it = 0; it < 100; ++it) {
            const double f = s_of_t(t) - s;
            if (std::abs(f) < 1e-13 * std::max(1.0, L)) break;
            if (f > 0.0) hi = t; else lo = t;
            const double v = c.speed(t);
            double tn = t - f / v;
            if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
            t = tn;
        }
        return t + shift;
    }

    HPoint point(double s) const override {
        const double t = t_of_s(s);
        return {c.x(t), c.y(t), u_of_t(t)};
    }
    complexd tangent(double s) const override {
        const double t = t_of_s(s);
        const complexd d = c.dz(t);
        return d / std::abs(d);
    }
    CurveJets jets(double s) const override { return c.jets(t_of_s(s)); }
    const PlanarCurve* curve() const override { return &c; }
};

// Affine Legendrian line through p0 with unit planar direction (a, b).
struct LineBackend final : LegendrianKnot::Backend {
    HPoint p0;
    double a = 1.0, b = 0.0, u_slope = 0.0;

    LineBackend(const HPoint& base, double da, double db) : p0(base) {
        const double n = std::hypot(da, db);
        if (!(n > 0.0)) throw std::invalid_argument("infinite_r_circle: zero direction");
        a = da / n;
        b = db / n;
        u_slope = -0.5 * (p0.y * a - p0.x * b);
    }
    HPoint point(double s) const override {
        return {p0.x + s * a, p0.y + s * b, p0.u + s * u_slope};
    }
    complexd tangent(double) const override { return {a, b}; }
    CurveJets jets(double) const override { return {}; }
};

}  // namespace

struct KnotBuilder {
    static KnotPtr build(std::shared_ptr<const LegendrianKnot::Backend> backend, bool closed,
                         double length, double s_first, int n, std::string provenance) {
        auto k = std::shared_ptr<LegendrianKnot>(new LegendrianKnot());
        k->backend_ = std::move(backend);
        k->closed_ = closed;
        k->length_ = length;
        k->provenance_ = std::move(provenance);
        const int count = closed ? n : n + 1;
        k->samples_.resize(count);
        for (int i = 0; i < count; ++i) {
            const double s = s_first + length * i / n;
            auto& smp = k->samples_[i];
            smp.s = s;
            smp.p = k->backend_->point(s);
            smp.tangent = k->backend_->tangent(s);
            const CurveJets j = k->backend_->jets(s);
            smp.kappa = j.kappa;
            smp.kappa1 = j.kappa1;
            smp.kappa2 = j.kappa2;
        }
        return k;
    }
};

HPoint LegendrianKnot::point(double s) const { return backend_->point(s); }
complexd LegendrianKnot::planar_tangent(double s) const { return backend_->tangent(s); }
CurveJets LegendrianKnot::jets(double s) const { return backend_->jets(s); }
const PlanarCurve* LegendrianKnot::planar_curve() const { return backend_->curve(); }

double LegendrianKnot::arc_of_parameter(double t) const {
    const auto* fb = dynamic_cast<const FourierLiftBackend*>(backend_.get());
    if (!fb) throw std::domain_error("arc_of_parameter: not a Fourier lift");
    return fb->s_of_t(t);
}

double LegendrianKnot::chord(double s0, double s) const {
    const double d = koranyi_dist(point(s0), point(s));
    return (s >= s0) ? d : -d;
}

double LegendrianKnot::chord_derivative(double s0, double s) const {
    const HPoint p = point(s0), q = point(s);
    const complexd A = a_rel(p, q);
    const double d2 = std::abs(A);
    if (!(d2 > 0.0)) throw std::domain_error("chord_derivative: coincident points");
    // dA/ds = 2 (z_q - z_p) conj(dz_q); horizontality kills the du' term
    const complexd Ad = 2.0 * (q.z() - p.z()) * std::conj(planar_tangent(s));
    const double dabs = std::real(std::conj(A) * Ad) / d2;  // d|A|/ds
    return 0.5 * dabs / std::sqrt(d2);
}

double LegendrianKnot::arc_dist(double s, double s2) const {
    double d = std::abs(s - s2);
    if (!closed_) return d;
    d = std::fmod(d, length_);
    return std::min(d, length_ - d);
}

double LegendrianKnot::embeddedness_margin() const {
    if (!closed_) throw std::domain_error("embeddedness_margin: knot must be closed");
    const int n = size();
    double mn = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (arc_dist(samples_[i].s, samples_[j].s) < length_ / 16.0) continue;
            mn = std::min(mn, koranyi_dist(samples_[i].p, samples_[j].p));
        }
    return mn;
}

double LegendrianKnot::diameter() const {
    const int n = size();
    const int stride = std::max(1, n / 256);
    double mx = 0.0;
    for (int i = 0; i < n; i += stride)
        for (int j = i + stride; j < n; j += stride)
            mx = std::max(mx, koranyi_dist(samples_[i].p, samples_[j].p));
    return mx;
}

double LegendrianKnot::safe_epsilon() const {
    if (safe_eps_ >= 0.0) return safe_eps_;
    if (!closed_) {
        safe_eps_ = std::numeric_limits<double>::infinity();
        return safe_eps_;
    }
    const int n = size();
    const double h = length_ / n;
    double w = length_ / 4.0;
    while (w >= 4.0 * h) {
        bool monotone = true;
        double eps_w = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n && monotone; ++i) {
            const double s0 = samples_[i].s;
            for (int m = 1; m <= 16; ++m) {
                const double off = w * m / 16.0;
                if (chord_derivative(s0, s0 + off) <= 0.0 ||
                    chord_derivative(s0, s0 - off) >= 0.0) {
                    monotone = false;
                    break;
                }
            }
            if (monotone)
                eps_w = std::min(eps_w, std::min(chord(s0, s0 + w), -chord(s0, s0 - w)));
        }
        if (monotone) {
            double margin_w = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (arc_dist(samples_[i].s, samples_[j].s) < w) continue;
                    margin_w = std::min(margin_w, koranyi_dist(samples_[i].p, samples_[j].p));
                }
            safe_window_ = w;
            safe_eps_ = 0.9 * std::min(eps_w, margin_w);
            return safe_eps_;
        }
        w *= 0.5;
    }
    throw std::runtime_error("safe_epsilon: no monotone chord window found");
}

double LegendrianKnot::safe_window() const {
    safe_epsilon();
    return safe_window_;
}

double LegendrianKnot::cut_distance(double s0, double eps, int side) const {
    if (!(eps > 0.0)) throw std::invalid_argument("cut_distance: eps must be positive");
    double w;
    if (closed_) {
        if (eps > safe_epsilon())
            throw std::invalid_argument("cut_distance: eps outside the safe chord window");
        w = safe_window_;
    } else {
        w = length_;  // lines: chord = arc length exactly
    }
    double lo = 0.0, hi = w, d = std::min(eps, 0.5 * w);
    for (int it = 0; it < 60; ++it) {
        const double f = std::abs(chord(s0, s0 + side * d)) - eps;
        if (std::abs(f) < 1e-13 * std::max(1.0, eps)) break;
        if (f > 0.0) hi = d; else lo = d;
        const double der = side * chord_derivative(s0, s0 + side * d);
        double dn = d - f / der;
        if (!(dn > lo && dn < hi)) dn = 0.5 * (lo + hi);
        d = dn;
    }
    return d;
}

KnotPtr LegendrianKnot::lift(const PlanarCurve& c, const HPoint& base, int n, bool require_closed,
                             std::string provenance) {
    if (n < 64 || n % 2 != 0) throw std::invalid_argument("lift: need n >= 64 and even");
    if (!c.immersed()) throw std::invalid_argument("lift: curve is not an immersion");
    PlanarCurve shifted = c.translated(base.x - c.x(0.0), base.y - c.y(0.0));
    auto be = std::make_shared<FourierLiftBackend>(shifted);
    const double area = shifted.signed_area();
    const bool closes = std::abs(area) <= 1e-10 * be->L * be->L;
    if (require_closed && !closes)
        throw std::invalid_argument("lift: planar signed area does not vanish; lift cannot close");
    be->closed = closes;
    be->u0 = base.u;
    return KnotBuilder::build(be, closes, be->L, 0.0, n, std::move(provenance));
}

KnotPtr LegendrianKnot::infinite_r_circle(const HPoint& p0, double a, double b, double s_min,
                                          double s_max, int n) {
    if (!(s_max > s_min)) throw std::invalid_argument("infinite_r_circle: empty range");
    auto be = std::make_shared<LineBackend>(p0, a, b);
    return KnotBuilder::build(be, false, s_max - s_min, s_min, n, "infinite_r_circle");
}

PlanarCurve finite_r_circle_projection(const HPoint& p0, double a, double b, int order) {
    const double nn = std::hypot(a, b);
    if (!(nn > 0.0)) throw std::invalid_argument("finite_r_circle: zero direction");
    const double da = a / nn, db = b / nn;
    const double uslope = -0.5 * (p0.y * da - p0.x * db);

    // the image of infinity is the origin, so the line must stay away from it
    double min_norm = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= 4096; ++j) {
        const double t = std::tan(M_PI * (j / 4096.0 - 0.5) * 0.999);
        min_norm = std::min(min_norm,
                            koranyi_norm({p0.x + t * da, p0.y + t * db, p0.u + t * uslope}));
    }
    if (min_norm <= 1e-6)
        throw std::invalid_argument("finite_r_circle: line passes through the origin");

    const int m = 4096;
    std::vector<double> xs(m), ys(m);
    for (int j = 0; j < m; ++j) {
        if (j == 0) {
            xs[j] = 0.0;  // t = -inf maps to the origin
            ys[j] = 0.0;
            continue;
        }
        const double tau = 2.0 * M_PI * j / m;
        const double t = std::tan(0.5 * (tau - M_PI));
        const HPoint lp{p0.x + t * da, p0.y + t * db, p0.u + t * uslope};
        const HPoint q = invert(ExtendedPoint(lp)).point();
        xs[j] = q.x;
        ys[j] = q.y;
    }

    double diam = 0.0;
    for (int j = 0; j < m; j += 16) diam = std::max(diam, std::hypot(xs[j], ys[j]));
    const bool fixed = order > 0;
    int q = fixed ? order : 16;
    PlanarCurve fit(TrigSeries(0), TrigSeries(0));
    for (;;) {
        fit = PlanarCurve(trig_fit(xs, q), trig_fit(ys, q));
        if (fixed) break;
        double resid = 0.0;
        for (int j = 0; j < m; j += 3) {
            const double tau = 2.0 * M_PI * j / m;
            resid = std::max(resid, std::hypot(fit.x(tau) - xs[j], fit.y(tau) - ys[j]));
        }
        if (resid < 1e-10 * std::max(1.0, diam) || q >= 512) break;
        q *= 2;
    }
    return project_zero_area(fit);
}

KnotPtr LegendrianKnot::finite_r_circle(const HPoint& p0, double a, double b, int n) {
    const PlanarCurve fit = finite_r_circle_projection(p0, a, b);
    // anchored at the origin point (u = 0 there, exactly)
    return lift(fit, HPoint{fit.x(0.0), fit.y(0.0), 0.0}, n, true, "finite_r_circle");
}

double TransformedKnot::image_arc(double source_arc) const {
    // dense monotone table lookup with linear interpolation
    const auto it = std::upper_bound(source_s.begin(), source_s.end(), source_arc);
    if (it == source_s.begin()) return image_s.front();
    if (it == source_s.end()) return image_s.back();
    const std::size_t i = static_cast<std::size_t>(it - source_s.begin());
    const double f = (source_arc - source_s[i - 1]) / (source_s[i] - source_s[i - 1]);
    return image_s[i - 1] + f * (image_s[i] - image_s[i - 1]);
}

TransformedKnot transform_knot(const LegendrianKnot& k, const MobiusMatrix& m, int n) {
    if (!k.closed()) throw std::invalid_argument("transform_knot: knot must be closed");
    m.require_valid();
    const int msrc = std::max(4096, 4 * n);
    const double L = k.length();
    std::vector<double> xs(msrc), ys(msrc), us(msrc);
    for (int j = 0; j < msrc; ++j) {
        const ExtendedPoint img = apply_point(m, ExtendedPoint(k.point(L * j / msrc)));
        if (img.is_infinity())
            throw std::runtime_error("transform_knot: image passes through infinity");
        xs[j] = img.point().x;
        ys[j] = img.point().y;
        us[j] = img.point().u;
    }

    double diam = 0.0;
    for (int j = 0; j < msrc; j += 16)
        for (int l = j + 16; l < msrc; l += 16)
            diam = std::max(diam, std::hypot(xs[j] - xs[l], ys[j] - ys[l]));

    const PlanarCurve* src = k.planar_curve();
    int order = std::max(16, src ? 2 * src->order() : 16);
    PlanarCurve fit(TrigSeries(0), TrigSeries(0));
    double resid = 0.0;
    for (;;) {
        fit = PlanarCurve(trig_fit(xs, order), trig_fit(ys, order));
        resid = 0.0;
        for (int j = 0; j < msrc; j += 3) {
            const double tau = 2.0 * M_PI * j / msrc;
            resid = std::max(resid, std::hypot(fit.x(tau) - xs[j], fit.y(tau) - ys[j]));
        }
        if (resid < 1e-10 * std::max(1.0, diam) || order >= msrc / 8) break;
        order *= 2;
    }
    fit = project_zero_area(fit);

    TransformedKnot out;
    out.knot = LegendrianKnot::lift(fit, HPoint{fit.x(0.0), fit.y(0.0), us[0]}, n, true,
                                    k.provenance() + ":mobius");
    // the lift must reproduce the directly mapped vertical coordinates
    const auto* be = out.knot->planar_curve();
    (void)be;
    double u_err = 0.0;
    out.source_s.resize(msrc + 1);
    out.image_s.resize(msrc + 1);
    for (int j = 0; j <= msrc; ++j) {
        const double tau = 2.0 * M_PI * j / msrc;
        out.source_s[j] = L * j / msrc;
        out.image_s[j] = out.knot->arc_of_parameter(tau);
        if (j < msrc && j % 64 == 0) {
            const HPoint p = out.knot->point(out.image_s[j]);
            u_err = std::max(u_err, std::abs(p.u - us[j]));
        }
    }
    if (u_err > 1e-6 * std::max(1.0, diam * diam))
        throw std::runtime_error("transform_knot: lifted image inconsistent with mapped samples");
    return out;
}

}  // namespace hknot
