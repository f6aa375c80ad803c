#pragma once

#include <array>

#include "curves.hpp"

// Interpoint-distance distribution Psi and its pointwise version, the
// curvature moments behind the small-t expansion
//   Psi(t) = 2L t + (1/36) (int kappa^2) t^3 + O(t^5),
// and the residue ladder (2L, m2/12, m4/192) of the beta function.

namespace hknot {

struct PsiFit {
    double t_max = 0.0;
    double c1 = 0.0, c3 = 0.0, c5 = 0.0;
    double residual = 0.0;   // RMS of the fit
    double condition = 0.0;  // condition number of the scaled normal equations
};

struct CurvatureMoments {
    double length = 0.0;
    double m2 = 0.0;      // int kappa^2 ds
    double m4 = 0.0;      // int kappa^4 ds
    double m4full = 0.0;  // int (kappa^4 + 8 kappa kappa'' + 8 kappa'^2) ds
};

// arc-length measure of {s : d_H(gamma(s0), gamma(s)) < t}
double psi_local(const LegendrianKnot& k, double s0, double t);

// Psi(t) = int_K psi_local dp by the knot's arc-length quadrature
double psi(const LegendrianKnot& k, double t);

// least squares of Psi(t) ~ c1 t + c3 t^3 + c5 t^5 on log-spaced radii in
// [t_max/64, t_max]
PsiFit psi_fit(const LegendrianKnot& k, double t_max, int n_points);

CurvatureMoments curvature_moments(const LegendrianKnot& k);

// residues of B_K at -1, -3, -5
std::array<double, 3> residues(const LegendrianKnot& k);

}  // namespace hknot
