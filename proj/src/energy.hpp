#pragma once

#include <map>
#include <string>
#include <vector>

#include "curves.hpp"

// Four routes to the knot energy E(K) = B_K(-2):
//   subtraction : -4 + iint (1/d_H^2 - 1/d_K^2), diagonal value kappa^2/36
//   hadamard    : lim_{eps->0} [ iint_{d_H >= eps} d_H^{-2} - 2L/eps ]
//   cosine      : iint (1 - cos theta_K)/d_H^2
//   beta        : analytic continuation of B_K(zeta) evaluated at -2
// plus the pointwise potential, the 2-form Omega_H, the angle theta_K, the
// Koranyi-Reimann cross ratio, and the 1-form alpha with d alpha = Re Omega_H.

namespace hknot {

struct EnergyReport {
    double value = 0.0;
    std::string method;
    int samples = 0;
    std::map<std::string, double> diagnostics;
};

struct BetaProfile {
    complexd zeta;
    complexd value;
    double epsilon0 = 0.0;
    std::string method;  // "direct" or "continued"
};

// V(K;p) at arc length s0;  = -4/L + int (1/d_H^2 - 1/d_K^2) dq for closed
// knots; open knots are supported only for infinite R-circles
double potential(const LegendrianKnot& k, double s0);

EnergyReport energy_subtraction(const LegendrianKnot& k);

// empty ladder picks a geometric default inside the safe chord window
EnergyReport energy_hadamard(const LegendrianKnot& k, std::vector<double> eps_ladder = {});

EnergyReport energy_cosine(const LegendrianKnot& k);

// Omega_H(v, v') = 2 (conj rho / rho^2) dz(v) conj(dz(v')), rho = A(p^{-1}q);
// horizontal vectors are encoded by their planar components
complexd omega(const HPoint& p, complexd v, const HPoint& q, complexd v2);

// |arg Omega_H| on tangent vectors at samples i, j
double theta(const LegendrianKnot& k, int i, int j);

// geometric route: sends sample i to infinity by ri = iota . R(-phi) . L(p^-1),
// then the angle of the image tangent at sample j against the reference axis
double theta_direct(const LegendrianKnot& k, int i, int j);

// Koranyi-Reimann complex cross ratio
complexd cross_ratio(const HPoint& p1, const HPoint& p2, const HPoint& p3, const HPoint& p4);

struct CrossRatioCheck {
    std::vector<double> h;          // ladder used
    std::vector<complexd> ratio;    // X / h^4 per rung
    complexd extrapolated;          // Richardson limit
    double deviation = 0.0;         // |extrapolated - d^-4| * d^4
};

CrossRatioCheck infinitesimal_cr_check(const LegendrianKnot& k, double s, double t,
                                       std::vector<double> h_ladder = {});

// alpha = Re d_q log rho evaluated on a horizontal vector at q with planar
// component v2
double alpha_form(const HPoint& p, const HPoint& q, complexd v2);

// 4-edge circulation of alpha around an h-square of Legendrian straight moves
// versus Re Omega_H; returns |circulation/h^2 - Re Omega_H(v, v')|
double d_alpha_residual(const HPoint& p, complexd dir_p, const HPoint& q, complexd dir_q,
                        double h);

// Re zeta > -1
BetaProfile beta_direct(const LegendrianKnot& k, complexd zeta);

// meromorphic continuation; Re zeta > -7, away from the poles -1, -3, -5;
// eps0 <= 0 picks a default inside the safe chord window
BetaProfile beta_continued(const LegendrianKnot& k, complexd zeta, double eps0 = 0.0);

}  // namespace hknot
