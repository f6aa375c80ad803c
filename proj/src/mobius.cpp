#include "mobius.hpp"

#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace hknot {

namespace {

// Hermitian form fixed by PU(2,1) in the [1:z:w] chart: v* I v = |z|^2 - Im w
// up to sign, so boundary lifts are exactly the null vectors.
constexpr complexd kI(0.0, 1.0);
const std::array<complexd, 9> kFormH = {
    complexd(0, 0),    complexd(0, 0), complexd(0, 0.5),
    complexd(0, 0),    complexd(1, 0), complexd(0, 0),
    complexd(0, -0.5), complexd(0, 0), complexd(0, 0)};

std::array<complexd, 9> mat_mul(const std::array<complexd, 9>& a,
                                const std::array<complexd, 9>& b) {
    std::array<complexd, 9> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            complexd s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[3 * i + k] * b[3 * k + j];
            r[3 * i + j] = s;
        }
    return r;
}

std::array<complexd, 9> adjoint(const std::array<complexd, 9>& a) {
    std::array<complexd, 9> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[3 * i + j] = std::conj(a[3 * j + i]);
    return r;
}

}  // namespace

MobiusMatrix::MobiusMatrix() : m_{complexd(1), 0, 0, 0, complexd(1), 0, 0, 0, complexd(1)} {}

MobiusMatrix::MobiusMatrix(const std::array<complexd, 9>& entries) : m_(entries) {
    normalize();
}

void MobiusMatrix::normalize() {
    double mx = 0.0;
    for (const auto& e : m_) mx = std::max(mx, std::abs(e));
    if (!(mx > 0.0) || !std::isfinite(mx))
        throw std::invalid_argument("MobiusMatrix: degenerate entries");
    for (auto& e : m_) e /= mx;
}

double MobiusMatrix::form_residual() const {
    const auto g = mat_mul(adjoint(m_), mat_mul(kFormH, m_));
    // fit c from the (1,1) slot, where I_H has entry 1
    const complexd c = g[4];
    if (!(std::abs(c) > 0.0)) return 1.0;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < 9; ++k) {
        num += std::norm(g[k] - c * kFormH[k]);
        den += std::norm(c * kFormH[k]);
    }
    double resid = std::sqrt(num / den);
    // c must be a positive real for an actual group element
    if (std::abs(c.imag()) > 1e-12 * std::abs(c) || c.real() <= 0.0) resid = std::max(resid, 1.0);
    return resid;
}

void MobiusMatrix::require_valid(double tol) const {
    if (form_residual() > tol)
        throw std::invalid_argument("MobiusMatrix: Hermitian form invariant violated");
}

MobiusMatrix mat_translation(const HPoint& p0) {
    const complexd z0 = p0.z();
    const complexd w0(-4.0 * p0.u, std::norm(z0));
    MobiusMatrix t(std::array<complexd, 9>{
        complexd(1), 0, 0,
        z0, complexd(1), 0,
        w0, 2.0 * kI * std::conj(z0), complexd(1)});
    t.word_ = "T";
    return t;
}

MobiusMatrix mat_dilation(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("mat_dilation: lambda must be positive");
    MobiusMatrix d(std::array<complexd, 9>{
        complexd(1), 0, 0, 0, complexd(lambda), 0, 0, 0, complexd(lambda * lambda)});
    d.word_ = "D";
    return d;
}

MobiusMatrix mat_rotation(double theta) {
    MobiusMatrix r(std::array<complexd, 9>{
        complexd(1), 0, 0, 0, std::polar(1.0, theta), 0, 0, 0, complexd(1)});
    r.word_ = "R";
    return r;
}

// [1:z:w] -> [w : iz : -1]; point action is the Koranyi inversion.
MobiusMatrix mat_inversion() {
    MobiusMatrix m(std::array<complexd, 9>{
        0, 0, complexd(1), 0, kI, 0, complexd(-1), 0, 0});
    m.word_ = "I";
    return m;
}

MobiusMatrix compose(const MobiusMatrix& m1, const MobiusMatrix& m2) {
    m1.require_valid();
    m2.require_valid();
    MobiusMatrix r(mat_mul(m1.m_, m2.m_));
    r.word_ = m1.word_ + m2.word_;
    return r;
}

ExtendedPoint apply_point(const MobiusMatrix& m, const ExtendedPoint& p) {
    std::array<complexd, 3> v;
    if (p.is_infinity()) {
        v = {complexd(0), complexd(0), complexd(1)};
    } else {
        const HPoint& q = p.point();
        const complexd z = q.z();
        v = {complexd(1), z, complexd(-4.0 * q.u, std::norm(z))};
    }
    std::array<complexd, 3> w{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i] += m.at(i, j) * v[j];

    double mx = 0.0;
    for (const auto& e : w) mx = std::max(mx, std::abs(e));
    if (std::abs(w[0]) < 1e-13 * mx) return ExtendedPoint::infinity();

    const complexd z = w[1] / w[0];
    const complexd ww = w[2] / w[0];
    const double r2 = std::norm(z);
    const double resid = std::abs(ww.imag() - r2);
    if (resid > 1e-8 * (1.0 + r2 + std::abs(ww.imag())))
        throw std::domain_error("apply_point: boundary relation Im w = |z|^2 violated");
    return ExtendedPoint(HPoint{z.real(), z.imag(), -0.25 * ww.real()});
}

MobiusMatrix random_mobius(std::uint64_t seed, int word_length, const RandomMobiusOptions& opt) {
    if (word_length < 1) throw std::invalid_argument("random_mobius: word_length must be >= 1");
    Rng rng(seed);
    MobiusMatrix m;
    std::string word;
    for (int k = 0; k < word_length; ++k) {
        switch (rng.next_int(4)) {
            case 0: {
                HPoint p0{rng.uniform(-opt.translation_box, opt.translation_box),
                          rng.uniform(-opt.translation_box, opt.translation_box),
                          rng.uniform(-opt.translation_box, opt.translation_box)};
                m = compose(mat_translation(p0), m);
                word += 'T';
                break;
            }
            case 1:
                m = compose(mat_dilation(std::exp(rng.uniform(-opt.log_dilation, opt.log_dilation))), m);
                word += 'D';
                break;
            case 2:
                m = compose(mat_rotation(rng.uniform(0.0, 2.0 * M_PI)), m);
                word += 'R';
                break;
            default:
                m = compose(mat_inversion(), m);
                word += 'I';
                break;
        }
    }
    MobiusMatrix out = m;
    out.word_ = word;
    return out;
}

}  // namespace hknot
