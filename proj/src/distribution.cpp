#include "distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hknot {

namespace {

// refine the crossing of d(gamma(s0), gamma(.)) = t inside [a, b]
double bisect_crossing(const LegendrianKnot& k, double s0, double t, double a, double b,
                       bool rising) {
    for (int it = 0; it < 64 && b - a > 1e-10; ++it) {
        const double mid = 0.5 * (a + b);
        const bool below = std::abs(k.chord(s0, mid)) < t;
        if (below == rising) a = mid; else b = mid;
    }
    return 0.5 * (a + b);
}

}  // namespace

double psi_local(const LegendrianKnot& k, double s0, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("psi_local: t must be positive");
    const int n = k.size();
    const double L = k.length();
    // absolute grid of the knot's own samples; wrap for closed knots
    const double lo = k.closed() ? s0 : k.sample(0).s;
    const double hi = k.closed() ? s0 + L : k.sample(n - 1).s;
    const int cells = k.closed() ? n : n - 1;
    const double h = (hi - lo) / cells;

    double measure = 0.0;
    double prev_s = lo;
    bool prev_in = std::abs(k.chord(s0, lo)) < t;
    double seg_start = prev_in ? lo : 0.0;
    for (int j = 1; j <= cells; ++j) {
        const double s = lo + h * j;
        const bool in = std::abs(k.chord(s0, s)) < t;
        if (in != prev_in) {
            const double cross = bisect_crossing(k, s0, t, prev_s, s, !prev_in);
            if (prev_in) measure += cross - seg_start;
            else seg_start = cross;
        }
        prev_s = s;
        prev_in = in;
    }
    if (prev_in) measure += hi - seg_start;
    return measure;
}

double psi(const LegendrianKnot& k, double t) {
    const int n = k.size();
    double acc = 0.0;
    if (k.closed()) {
        for (int i = 0; i < n; ++i) acc += psi_local(k, k.sample(i).s, t);
        return acc * k.length() / n;
    }
    const double h = k.length() / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * psi_local(k, k.sample(i).s, t);
    }
    return acc * h;
}

PsiFit psi_fit(const LegendrianKnot& k, double t_max, int n_points) {
    if (k.closed() && t_max > k.safe_epsilon())
        throw std::invalid_argument("psi_fit: t_max outside the safe chord window");
    if (n_points < 4) throw std::invalid_argument("psi_fit: need at least 4 radii");

    std::vector<double> ts(n_points), ps(n_points);
    const double lo = t_max / 64.0;
    for (int i = 0; i < n_points; ++i) {
        ts[i] = lo * std::pow(t_max / lo, i / double(n_points - 1));
        ps[i] = psi(k, ts[i]);
    }

    // least squares on basis (t, t^3, t^5) with unit-norm columns
    double colnorm[3] = {0, 0, 0};
    for (int i = 0; i < n_points; ++i)
        for (int c = 0; c < 3; ++c) {
            const double b = std::pow(ts[i], 2 * c + 1);
            colnorm[c] += b * b;
        }
    for (double& cn : colnorm) cn = std::sqrt(cn);

    double G[3][3] = {};
    double rhs[3] = {};
    for (int i = 0; i < n_points; ++i) {
        double b[3];
        for (int c = 0; c < 3; ++c) b[c] = std::pow(ts[i], 2 * c + 1) / colnorm[c];
        for (int r = 0; r < 3; ++r) {
            rhs[r] += b[r] * ps[i];
            for (int c = 0; c < 3; ++c) G[r][c] += b[r] * b[c];
        }
    }

    // condition number of G by power iteration on G and its inverse
    auto matvec = [&](const double m[3][3], const double v[3], double out[3]) {
        for (int r = 0; r < 3; ++r) out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2];
    };
    double Ginv[3][3];
    {
        const double a = G[0][0], b = G[0][1], c = G[0][2], d = G[1][1], e = G[1][2], f = G[2][2];
        const double det = a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c);
        if (std::abs(det) < 1e-300) throw std::runtime_error("psi_fit: singular normal equations");
        Ginv[0][0] = (d * f - e * e) / det;
        Ginv[0][1] = Ginv[1][0] = (c * e - b * f) / det;
        Ginv[0][2] = Ginv[2][0] = (b * e - c * d) / det;
        Ginv[1][1] = (a * f - c * c) / det;
        Ginv[1][2] = Ginv[2][1] = (b * c - a * e) / det;
        Ginv[2][2] = (a * d - b * b) / det;
    }
    double hi = 0.0, lo_eig = 0.0;
    {
        double v[3] = {1, 1, 1}, w[3];
        for (int it = 0; it < 50; ++it) {
            matvec(G, v, w);
            hi = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
            for (int c = 0; c < 3; ++c) v[c] = w[c] / hi;
        }
        double v2[3] = {1, -1, 1};
        for (int it = 0; it < 50; ++it) {
            matvec(Ginv, v2, w);
            lo_eig = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
            for (int c = 0; c < 3; ++c) v2[c] = w[c] / lo_eig;
        }
    }
    const double condition = hi * lo_eig;  // sigma_max(G) * sigma_max(G^-1)
    if (condition > 1e12) throw std::runtime_error("psi_fit: ill-conditioned fit");

    double sol[3];
    matvec(Ginv, rhs, sol);
    PsiFit fit;
    fit.t_max = t_max;
    fit.c1 = sol[0] / colnorm[0];
    fit.c3 = sol[1] / colnorm[1];
    fit.c5 = sol[2] / colnorm[2];
    fit.condition = condition;
    double rss = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double model = fit.c1 * ts[i] + fit.c3 * std::pow(ts[i], 3) + fit.c5 * std::pow(ts[i], 5);
        rss += (model - ps[i]) * (model - ps[i]);
    }
    fit.residual = std::sqrt(rss / n_points);
    return fit;
}

CurvatureMoments curvature_moments(const LegendrianKnot& k) {
    const int n = k.size();
    const double h = k.closed() ? k.length() / n : k.length() / (n - 1);
    CurvatureMoments mom;
    mom.length = k.length();
    for (int i = 0; i < n; ++i) {
        const auto& s = k.sample(i);
        const double w = (!k.closed() && (i == 0 || i == n - 1)) ? 0.5 : 1.0;
        const double k2 = s.kappa * s.kappa;
        mom.m2 += w * k2;
        mom.m4 += w * k2 * k2;
        mom.m4full += w * (k2 * k2 + 8.0 * s.kappa * s.kappa2 + 8.0 * s.kappa1 * s.kappa1);
    }
    mom.m2 *= h;
    mom.m4 *= h;
    mom.m4full *= h;
    return mom;
}

std::array<double, 3> residues(const LegendrianKnot& k) {
    if (!k.closed()) throw std::domain_error("residues: knot must be closed");
    const CurvatureMoments mom = curvature_moments(k);
    return {2.0 * mom.length, mom.m2 / 12.0, mom.m4 / 192.0};
}

}  // namespace hknot
