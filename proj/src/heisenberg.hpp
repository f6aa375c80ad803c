#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

// Heisenberg group H = C x R in exponential coordinates (x, y, u), with the
// Koranyi gauge norm ||(x,y,u)|| = ((x^2+y^2)^2 + 16 u^2)^{1/4} and its
// left-invariant distance. All operations here are pure value functions.

namespace hknot {

using complexd = std::complex<double>;

struct HPoint {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;

    complexd z() const { return {x, y}; }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(u);
    }
};

inline bool operator==(const HPoint& a, const HPoint& b) {
    return a.x == b.x && a.y == b.y && a.u == b.u;
}

// A point of H together with the compactification point at infinity.
// Exactly one alternative holds; metric operations reject infinity.
class ExtendedPoint {
public:
    ExtendedPoint() : inf_(true) {}
    ExtendedPoint(const HPoint& p) : p_(p), inf_(false) {}
    static ExtendedPoint infinity() { return ExtendedPoint(); }

    bool is_infinity() const { return inf_; }
    const HPoint& point() const {
        if (inf_) throw std::domain_error("ExtendedPoint: point at infinity");
        return p_;
    }

private:
    HPoint p_{};
    bool inf_;
};

// Group product (x,y,u)(x',y',u') = (x+x', y+y', u+u'+(x y'-x' y)/2).
inline HPoint h_mul(const HPoint& p, const HPoint& q) {
    return {p.x + q.x, p.y + q.y, p.u + q.u + 0.5 * (p.x * q.y - q.x * p.y)};
}

inline HPoint h_inv(const HPoint& p) { return {-p.x, -p.y, -p.u}; }

inline double koranyi_norm(const HPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return std::pow(r2 * r2 + 16.0 * p.u * p.u, 0.25);
}

inline double koranyi_dist(const HPoint& p, const HPoint& q) {
    return koranyi_norm(h_mul(h_inv(p), q));
}

inline HPoint dilate(double lambda, const HPoint& p) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    return {lambda * p.x, lambda * p.y, lambda * lambda * p.u};
}

inline HPoint rotate(double theta, const HPoint& p) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * p.x - s * p.y, s * p.x + c * p.y, p.u};
}

// Koranyi inversion: (z,u) -> (z/(|z|^2+4iu), -u/(|z|^4+16u^2)),
// an involution of H u {inf} exchanging the origin and infinity.
inline ExtendedPoint invert(const ExtendedPoint& p) {
    if (p.is_infinity()) return ExtendedPoint(HPoint{0.0, 0.0, 0.0});
    const HPoint& q = p.point();
    const double r2 = q.x * q.x + q.y * q.y;
    const double den = r2 * r2 + 16.0 * q.u * q.u;
    if (den == 0.0) return ExtendedPoint::infinity();
    const complexd zn = q.z() / complexd(r2, 4.0 * q.u);
    return ExtendedPoint(HPoint{zn.real(), zn.imag(), -q.u / den});
}

// A(z,u) = |z|^2 - 4iu.  |A(p)| = ||p||^2.
inline complexd a_value(const HPoint& p) {
    return {p.x * p.x + p.y * p.y, -4.0 * p.u};
}

// rho(p,q) = A(p^{-1} q) = conj(A(p)) + A(q) - 2 z conj(z').
inline complexd a_rel(const HPoint& p, const HPoint& q) {
    return std::conj(a_value(p)) + a_value(q) - 2.0 * p.z() * std::conj(q.z());
}

}  // namespace hknot
