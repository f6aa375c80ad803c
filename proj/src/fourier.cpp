#include "fourier.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hknot {

TrigSeries::TrigSeries(std::vector<double> cosc, std::vector<double> sinc)
    : c_(std::move(cosc)), s_(std::move(sinc)) {
    if (c_.empty()) c_.assign(1, 0.0);
    s_.resize(c_.size(), 0.0);
    s_[0] = 0.0;
}

double TrigSeries::eval(double t, int deriv) const {
    const int n = order();
    double acc = (deriv == 0) ? c_[0] : 0.0;
    for (int k = 1; k <= n; ++k) {
        const double kk = k;
        double f = 1.0;
        for (int d = 0; d < deriv; ++d) f *= kk;
        const double ck = std::cos(kk * t), sk = std::sin(kk * t);
        double a = c_[k], b = s_[k];
        // rotate (a, b) by deriv quarter turns: d/dt maps (a,b) -> (b k, -a k)
        switch (deriv % 4) {
            case 0: acc += f * (a * ck + b * sk); break;
            case 1: acc += f * (-a * sk + b * ck); break;
            case 2: acc += f * (-a * ck - b * sk); break;
            default: acc += f * (a * sk - b * ck); break;
        }
    }
    return acc;
}

TrigSeries TrigSeries::derivative() const {
    const int n = order();
    TrigSeries d(n);
    for (int k = 1; k <= n; ++k) {
        d.c_[k] = k * s_[k];
        d.s_[k] = -k * c_[k];
    }
    return d;
}

TrigSeries TrigSeries::trimmed(double tol) const {
    double mx = 0.0;
    for (std::size_t k = 0; k < c_.size(); ++k)
        mx = std::max(mx, std::max(std::abs(c_[k]), std::abs(s_[k])));
    int last = 0;
    for (int k = order(); k >= 1; --k) {
        if (std::abs(c_[k]) > tol * mx || std::abs(s_[k]) > tol * mx) {
            last = k;
            break;
        }
    }
    TrigSeries out(last);
    for (int k = 0; k <= last; ++k) {
        out.c_[k] = c_[k];
        out.s_[k] = s_[k];
    }
    return out;
}

TrigSeries TrigSeries::periodic_antiderivative() const {
    const int n = order();
    TrigSeries p(n);
    double at_zero = 0.0;
    for (int k = 1; k <= n; ++k) {
        // int (a cos kt + b sin kt) dt = a sin kt / k - b cos kt / k
        p.c_[k] = -s_[k] / k;
        p.s_[k] = c_[k] / k;
        at_zero += p.c_[k];
    }
    p.c_[0] = -at_zero;  // P(0) = 0
    return p;
}

TrigSeries operator+(const TrigSeries& a, const TrigSeries& b) {
    TrigSeries r(std::max(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) {
        r.c_[k] = (k <= a.order() ? a.c_[k] : 0.0) + (k <= b.order() ? b.c_[k] : 0.0);
        r.s_[k] = (k <= a.order() ? a.s_[k] : 0.0) + (k <= b.order() ? b.s_[k] : 0.0);
    }
    return r;
}

TrigSeries operator-(const TrigSeries& a, const TrigSeries& b) {
    return a + (-1.0 * b);
}

TrigSeries operator*(double k, const TrigSeries& a) {
    TrigSeries r = a;
    for (int j = 0; j <= r.order(); ++j) {
        r.c_[j] *= k;
        r.s_[j] *= k;
    }
    return r;
}

TrigSeries trig_mul(const TrigSeries& a, const TrigSeries& b) {
    // exponential coefficients X_k, k = -n..n, X_k = (c_k - i s_k)/2
    const int na = a.order(), nb = b.order(), n = na + nb;
    using cd = std::complex<double>;
    auto expo = [](const TrigSeries& f, int k) -> cd {
        const int a = std::abs(k);
        if (a > f.order()) return {0.0, 0.0};
        if (k == 0) return {f.c_[0], 0.0};
        const double sgn = (k > 0) ? 1.0 : -1.0;
        return {0.5 * f.c_[a], -0.5 * sgn * f.s_[a]};
    };
    TrigSeries r(n);
    for (int m = 0; m <= n; ++m) {
        cd z = 0.0;
        for (int k = -na; k <= na; ++k) {
            const int j = m - k;
            if (std::abs(j) > nb) continue;
            z += expo(a, k) * expo(b, j);
        }
        if (m == 0) {
            r.c_[0] = z.real();
        } else {
            r.c_[m] = 2.0 * z.real();
            r.s_[m] = -2.0 * z.imag();
        }
    }
    return r;
}

TrigSeries trig_fit(const std::vector<double>& samples, int order) {
    const int m = static_cast<int>(samples.size());
    if (2 * order >= m) throw std::invalid_argument("trig_fit: order too high for sample count");
    TrigSeries f(order);
    const double w = 2.0 * M_PI / m;
    for (int k = 0; k <= order; ++k) {
        double sc = 0.0, ss = 0.0;
        for (int j = 0; j < m; ++j) {
            sc += samples[j] * std::cos(w * j * k);
            ss += samples[j] * std::sin(w * j * k);
        }
        if (k == 0) {
            f.cosc(0) = sc / m;
        } else {
            f.cosc(k) = 2.0 * sc / m;
            f.sinc(k) = 2.0 * ss / m;
        }
    }
    return f;
}

}  // namespace hknot
