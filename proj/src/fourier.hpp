#pragma once

#include <cstddef>
#include <vector>

// Real trigonometric polynomials f(t) = c[0] + sum_k c[k] cos kt + s[k] sin kt.
// Derivatives, products, and antiderivatives are exact coefficient operations,
// which is what makes curvature jets and Legendrian lifts exact downstream.

namespace hknot {

class TrigSeries {
public:
    TrigSeries() : c_(1, 0.0), s_(1, 0.0) {}
    explicit TrigSeries(int order) : c_(order + 1, 0.0), s_(order + 1, 0.0) {}
    TrigSeries(std::vector<double> cosc, std::vector<double> sinc);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double& cosc(int k) { return c_[k]; }
    double& sinc(int k) { return s_[k]; }
    double cosc(int k) const { return c_[k]; }
    double sinc(int k) const { return s_[k]; }

    double eval(double t, int deriv = 0) const;

    TrigSeries derivative() const;

    // drops trailing harmonics below |coef| <= tol * max|coef|
    TrigSeries trimmed(double tol = 0.0) const;

    double mean() const { return c_[0]; }

    // periodic antiderivative of (f - mean): P' = f - mean, P(0) = 0
    TrigSeries periodic_antiderivative() const;

    friend TrigSeries operator+(const TrigSeries& a, const TrigSeries& b);
    friend TrigSeries operator-(const TrigSeries& a, const TrigSeries& b);
    friend TrigSeries operator*(double k, const TrigSeries& a);
    // exact product; order = order(a) + order(b)
    friend TrigSeries trig_mul(const TrigSeries& a, const TrigSeries& b);

private:
    std::vector<double> c_, s_;  // s_[0] unused, kept 0
};

// least-squares projection of samples f(2 pi j / m), j = 0..m-1, onto
// harmonics 0..order (requires 2*order < m)
TrigSeries trig_fit(const std::vector<double>& samples, int order);

}  // namespace hknot
