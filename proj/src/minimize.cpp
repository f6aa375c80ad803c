#include "minimize.hpp"

#include <cmath>
#include <stdexcept>

#include "energy.hpp"

namespace hknot {

namespace {

constexpr double kBarrier = 1e6;
constexpr double kMarginFloor = 1e-4;
constexpr double kArmijo = 1e-4;

double curve_length(const PlanarCurve& c) {
    const int grid = 1024;
    double acc = 0.0;
    for (int j = 0; j < grid; ++j) acc += c.speed(2.0 * M_PI * j / grid);
    return acc * 2.0 * M_PI / grid;
}

PlanarCurve normalized(const PlanarCurve& c) {
    PlanarCurve zeroed = project_zero_area(c);
    const double L = curve_length(zeroed);
    return zeroed.scaled(2.0 * M_PI / L);
}

}  // namespace

ObjectiveValue objective(const PlanarCurve& c, int n) {
    PlanarCurve cur = normalized(c);
    if (!cur.immersed()) throw std::invalid_argument("objective: curve is not an immersion");
    KnotPtr k = LegendrianKnot::lift(cur, HPoint{cur.x(0.0), cur.y(0.0), 0.0}, n, true,
                                     "objective");
    if (k->embeddedness_margin() < kMarginFloor) return {kBarrier, true};
    return {energy_subtraction(*k).value, false};
}

OptimizationState minimize_energy(const PlanarCurve& c0, const MinimizeOptions& opt) {
    const int order = c0.order();
    PlanarCurve cur = project_zero_area(c0);
    const int ncoef = static_cast<int>(cur.pack().size());

    // gauge freezes: translations (constant terms), the phase of the first
    // harmonic of x, and the rotation direction through yc1
    std::vector<bool> frozen(ncoef, false);
    frozen[0] = true;                  // xc0
    frozen[2 * order + 1] = true;      // yc0
    if (order >= 1) {
        frozen[order + 1] = true;      // xs1
        frozen[2 * order + 2] = true;  // yc1
    }

    const auto eval = [&](const PlanarCurve& c) { return objective(c, opt.samples); };

    OptimizationState st{cur, 0.0, 0.0, 0, opt.init_step, false, {}};
    ObjectiveValue e0 = eval(cur);
    st.energy = e0.value;
    double step = opt.init_step;

    for (int it = 0; it < opt.max_iter; ++it) {
        // central-difference gradient over the free coefficients
        auto coeffs = cur.pack();
        std::vector<double> grad(ncoef, 0.0);
        for (int c = 0; c < ncoef; ++c) {
            if (frozen[c]) continue;
            auto plus = coeffs, minus = coeffs;
            plus[c] += opt.fd_step;
            minus[c] -= opt.fd_step;
            grad[c] = (eval(PlanarCurve::unpack(plus, order)).value -
                       eval(PlanarCurve::unpack(minus, order)).value) /
                      (2.0 * opt.fd_step);
        }
        // project onto the tangent of the zero-area constraint
        const auto agrad = cur.area_gradient();
        double gn2 = 0.0, dot = 0.0;
        for (int c = 0; c < ncoef; ++c) {
            gn2 += agrad[c] * agrad[c];
            dot += grad[c] * agrad[c];
        }
        if (gn2 > 0.0)
            for (int c = 0; c < ncoef; ++c) grad[c] -= dot * agrad[c] / gn2;
        for (int c = 0; c < ncoef; ++c)
            if (frozen[c]) grad[c] = 0.0;

        double gnorm = 0.0;
        for (double g : grad) gnorm += g * g;
        gnorm = std::sqrt(gnorm);
        st.trace.push_back({it, st.energy, gnorm});
        if (gnorm < opt.tol) break;

        // backtracking line search with the Armijo rule
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            auto trial = coeffs;
            for (int c = 0; c < ncoef; ++c) trial[c] -= step * grad[c];
            PlanarCurve cand(PlanarCurve::unpack(trial, order));
            double val;
            try {
                val = eval(cand).value;
            } catch (const std::exception&) {
                step *= 0.5;
                continue;
            }
            if (val <= st.energy - kArmijo * step * gnorm * gnorm) {
                cur = project_zero_area(cand);
                st.energy = val;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        st.iterations = it + 1;
        if (!accepted) {
            st.stalled = true;
            break;
        }
        step = std::min(step * 2.0, 10.0 * opt.init_step);
    }

    st.coefficients = cur;
    st.step = step;
    st.final_energy = objective(cur, opt.final_samples).value;
    if (st.trace.empty() || st.trace.back().energy != st.energy)
        st.trace.push_back({st.iterations, st.energy, 0.0});
    return st;
}

}  // namespace hknot
