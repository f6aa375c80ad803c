#pragma once

#include <vector>

#include "curves.hpp"

// Projected finite-difference gradient descent of the knot energy over
// zero-area planar Fourier curves.  R-circle projections sit at the
// energy-zero minimum, so descent from their perturbations flows back.

namespace hknot {

struct MinimizeOptions {
    int max_iter = 200;
    double fd_step = 1e-4;
    double init_step = 0.1;
    double tol = 1e-6;
    int samples = 256;        // quadrature size inside the loop
    int final_samples = 1024; // final reported energy
};

struct TraceEntry {
    int iteration;
    double energy;
    double grad_norm;
};

struct ObjectiveValue {
    double value = 0.0;
    bool barrier = false;  // embeddedness margin fell below the barrier
};

struct OptimizationState {
    PlanarCurve coefficients;
    double energy = 0.0;          // at `samples`
    double final_energy = 0.0;    // re-evaluated at `final_samples`
    int iterations = 0;
    double step = 0.0;
    bool stalled = false;
    std::vector<TraceEntry> trace;
};

// E of the lifted, zero-area-projected, dilation-normalized (L = 2 pi) knot;
// embeddedness margin below 1e-4 yields the barrier value 1e6
ObjectiveValue objective(const PlanarCurve& c, int n);

OptimizationState minimize_energy(const PlanarCurve& c0, const MinimizeOptions& opt = {});

}  // namespace hknot
