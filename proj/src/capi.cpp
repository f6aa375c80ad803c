#include "hknot/hknot.h"

#include <cstring>
#include <string>

#include "curve_spec.hpp"
#include "curves.hpp"
#include "distribution.hpp"
#include "energy.hpp"
#include "minimize.hpp"
#include "mobius.hpp"
#include "rng.hpp"

// extern-C boundary: exceptions from the core are translated to status codes
// and a per-thread message.

namespace {

thread_local std::string g_last_error;

void copy_str(char* buf, size_t buflen, const std::string& s) {
    if (!buf || buflen == 0) return;
    const size_t n = std::min(buflen - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
}

template <typename F>
hk_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return HK_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return HK_ERR_UNSUPPORTED;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return HK_ERR_NUMERICAL;
    }
}

hk_status require(bool cond, const char* msg) {
    if (cond) return HK_OK;
    g_last_error = msg;
    return HK_ERR_INVALID_ARGUMENT;
}

}  // namespace

struct hk_curve {
    hknot::CurveSpec spec;
};

struct hk_knot {
    hknot::KnotPtr knot;
};

struct hk_mobius {
    hknot::MobiusMatrix mat;
};

struct hk_opt {
    hknot::OptimizationState state;
};

extern "C" {

const char* hk_last_error(void) { return g_last_error.c_str(); }

const char* hk_version(void) { return "hknot 0.1.0"; }

hk_status hk_curve_from_json(const char* json_spec, hk_curve** out) {
    if (hk_status s = require(json_spec && out, "null argument")) return s;
    return guarded([&] {
        *out = new hk_curve{hknot::parse_curve_spec(json_spec)};
        return HK_OK;
    });
}

void hk_curve_release(hk_curve* c) { delete c; }

hk_status hk_curve_signed_area(const hk_curve* c, double* out) {
    if (hk_status s = require(c && out, "null argument")) return s;
    return guarded([&] {
        *out = c->spec.is_open() ? 0.0 : c->spec.planar_curve().signed_area();
        return HK_OK;
    });
}

hk_status hk_curve_lift(const hk_curve* c, int samples, hk_knot** out) {
    if (hk_status s = require(c && out, "null argument")) return s;
    if (hk_status s = require(samples >= 64 && samples <= 65536 && samples % 2 == 0,
                              "samples must be even and in [64, 65536]"))
        return s;
    return guarded([&] {
        *out = new hk_knot{c->spec.build_knot(samples)};
        return HK_OK;
    });
}

void hk_knot_release(hk_knot* k) { delete k; }

hk_status hk_knot_length(const hk_knot* k, double* out) {
    if (hk_status s = require(k && out, "null argument")) return s;
    *out = k->knot->length();
    return HK_OK;
}

hk_status hk_knot_is_closed(const hk_knot* k, int* out) {
    if (hk_status s = require(k && out, "null argument")) return s;
    *out = k->knot->closed() ? 1 : 0;
    return HK_OK;
}

hk_status hk_knot_sample_count(const hk_knot* k, int* out) {
    if (hk_status s = require(k && out, "null argument")) return s;
    *out = k->knot->size();
    return HK_OK;
}

hk_status hk_knot_sample(const hk_knot* k, int i, double xyu[3]) {
    if (hk_status s = require(k && xyu, "null argument")) return s;
    if (hk_status s = require(i >= 0 && i < k->knot->size(), "sample index out of range"))
        return s;
    const auto& p = k->knot->sample(i).p;
    xyu[0] = p.x;
    xyu[1] = p.y;
    xyu[2] = p.u;
    return HK_OK;
}

hk_status hk_knot_embeddedness_margin(const hk_knot* k, double* out) {
    if (hk_status s = require(k && out, "null argument")) return s;
    return guarded([&] {
        *out = k->knot->embeddedness_margin();
        return HK_OK;
    });
}

hk_status hk_knot_diameter(const hk_knot* k, double* out) {
    if (hk_status s = require(k && out, "null argument")) return s;
    return guarded([&] {
        *out = k->knot->diameter();
        return HK_OK;
    });
}

hk_status hk_knot_energy(const hk_knot* k, const char* method, hk_energy_report* out) {
    if (hk_status s = require(k && method && out, "null argument")) return s;
    return guarded([&] {
        const std::string m(method);
        hknot::EnergyReport rep;
        double eps0 = 0.0;
        if (m == "subtraction") {
            rep = hknot::energy_subtraction(*k->knot);
        } else if (m == "hadamard") {
            rep = hknot::energy_hadamard(*k->knot);
        } else if (m == "cosine") {
            rep = hknot::energy_cosine(*k->knot);
        } else if (m == "beta") {
            const auto prof = hknot::beta_continued(*k->knot, hknot::complexd(-2.0, 0.0));
            rep.value = prof.value.real();
            rep.method = "beta";
            rep.samples = k->knot->size();
            eps0 = prof.epsilon0;
        } else {
            throw std::invalid_argument("unknown energy method \"" + m + "\"");
        }
        out->value = rep.value;
        copy_str(out->method, sizeof out->method, rep.method);
        out->samples = rep.samples ? rep.samples : k->knot->size();
        out->slope = rep.diagnostics.count("slope") ? rep.diagnostics.at("slope") : 0.0;
        out->epsilon0 = eps0;
        return HK_OK;
    });
}

hk_status hk_knot_potential(const hk_knot* k, double s0, double* out) {
    if (hk_status s = require(k && out, "null argument")) return s;
    return guarded([&] {
        *out = hknot::potential(*k->knot, s0);
        return HK_OK;
    });
}

hk_status hk_knot_beta(const hk_knot* k, double zeta_re, double zeta_im, double eps0,
                       hk_beta_result* out) {
    if (hk_status s = require(k && out, "null argument")) return s;
    return guarded([&] {
        const hknot::complexd zeta(zeta_re, zeta_im);
        const auto prof = (zeta_re > -1.0 && eps0 <= 0.0)
                              ? hknot::beta_direct(*k->knot, zeta)
                              : hknot::beta_continued(*k->knot, zeta, eps0);
        out->value_re = prof.value.real();
        out->value_im = prof.value.imag();
        out->epsilon0 = prof.epsilon0;
        copy_str(out->method, sizeof out->method, prof.method);
        return HK_OK;
    });
}

hk_status hk_knot_psi_fit(const hk_knot* k, double t_max, int n_points, hk_psi_fit* out) {
    if (hk_status s = require(k && out, "null argument")) return s;
    return guarded([&] {
        double tm = t_max;
        if (tm <= 0.0)
            tm = std::min(k->knot->length() / 64.0, 0.5 * k->knot->safe_epsilon());
        const auto fit = hknot::psi_fit(*k->knot, tm, n_points > 0 ? n_points : 32);
        out->t_max = fit.t_max;
        out->c1 = fit.c1;
        out->c3 = fit.c3;
        out->c5 = fit.c5;
        out->residual = fit.residual;
        out->condition = fit.condition;
        return HK_OK;
    });
}

hk_status hk_knot_residues(const hk_knot* k, double out[3]) {
    if (hk_status s = require(k && out, "null argument")) return s;
    return guarded([&] {
        const auto r = hknot::residues(*k->knot);
        out[0] = r[0];
        out[1] = r[1];
        out[2] = r[2];
        return HK_OK;
    });
}

hk_status hk_knot_curvature_moments(const hk_knot* k, double out[4]) {
    if (hk_status s = require(k && out, "null argument")) return s;
    return guarded([&] {
        const auto m = hknot::curvature_moments(*k->knot);
        out[0] = m.length;
        out[1] = m.m2;
        out[2] = m.m4;
        out[3] = m.m4full;
        return HK_OK;
    });
}

hk_status hk_mobius_random(uint64_t seed, int word_length, hk_mobius** out) {
    if (hk_status s = require(out != nullptr, "null argument")) return s;
    return guarded([&] {
        *out = new hk_mobius{hknot::random_mobius(seed, word_length)};
        return HK_OK;
    });
}

void hk_mobius_release(hk_mobius* m) { delete m; }

hk_status hk_mobius_word(const hk_mobius* m, char* buf, size_t buflen) {
    if (hk_status s = require(m && buf && buflen > 0, "null argument")) return s;
    copy_str(buf, buflen, m->mat.word());
    return HK_OK;
}

hk_status hk_knot_transform(const hk_knot* k, const hk_mobius* m, int samples, hk_knot** out) {
    if (hk_status s = require(k && m && out, "null argument")) return s;
    if (hk_status s = require(samples >= 64 && samples <= 65536 && samples % 2 == 0,
                              "samples must be even and in [64, 65536]"))
        return s;
    return guarded([&] {
        *out = new hk_knot{hknot::transform_knot(*k->knot, m->mat, samples).knot};
        return HK_OK;
    });
}

hk_status hk_check_omega_identity(uint64_t seed, int trials, double* max_dev) {
    if (hk_status s = require(max_dev && trials > 0, "need trials > 0")) return s;
    return guarded([&] {
        hknot::Rng rng(seed);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            hknot::HPoint p{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            hknot::HPoint q{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            if (hknot::koranyi_dist(p, q) < 1e-3) continue;
            const hknot::complexd v = std::polar(rng.uniform(0.1, 2.0), rng.uniform(0.0, 2 * M_PI));
            const hknot::complexd w = std::polar(rng.uniform(0.1, 2.0), rng.uniform(0.0, 2 * M_PI));
            const double lhs = std::abs(hknot::omega(p, v, q, w));
            const double d = hknot::koranyi_dist(p, q);
            const double rhs = 2.0 * std::abs(v) * std::abs(w) / (d * d);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        *max_dev = worst;
        return HK_OK;
    });
}

hk_status hk_check_theta_agreement(const hk_knot* k, uint64_t seed, int pairs, double* max_dev) {
    if (hk_status s = require(k && max_dev && pairs > 0, "need pairs > 0")) return s;
    return guarded([&] {
        hknot::Rng rng(seed);
        const int n = k->knot->size();
        double worst = 0.0;
        int done = 0;
        while (done < pairs) {
            const int i = rng.next_int(n), j = rng.next_int(n);
            if (k->knot->arc_dist(k->knot->sample(i).s, k->knot->sample(j).s) <
                k->knot->length() / 32.0)
                continue;
            worst = std::max(worst, std::abs(hknot::theta(*k->knot, i, j) -
                                             hknot::theta_direct(*k->knot, i, j)));
            ++done;
        }
        *max_dev = worst;
        return HK_OK;
    });
}

hk_status hk_check_dalpha(uint64_t seed, double h, double* residual) {
    if (hk_status s = require(residual && h > 0, "need h > 0")) return s;
    return guarded([&] {
        hknot::Rng rng(seed);
        hknot::HPoint p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        hknot::HPoint q{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (hknot::koranyi_dist(p, q) < 0.5) q = hknot::h_mul(q, {1.0, 1.0, 0.0});
        const hknot::complexd dp = std::polar(1.0, rng.uniform(0.0, 2 * M_PI));
        const hknot::complexd dq = std::polar(1.0, rng.uniform(0.0, 2 * M_PI));
        *residual = hknot::d_alpha_residual(p, dp, q, dq, h);
        return HK_OK;
    });
}

void hk_minimize_options_default(hk_minimize_options* opt) {
    if (!opt) return;
    const hknot::MinimizeOptions d;
    opt->max_iter = d.max_iter;
    opt->fd_step = d.fd_step;
    opt->init_step = d.init_step;
    opt->tol = d.tol;
    opt->samples = d.samples;
    opt->final_samples = d.final_samples;
}

hk_status hk_minimize(const hk_curve* c0, const hk_minimize_options* opt, hk_opt** out) {
    if (hk_status s = require(c0 && out, "null argument")) return s;
    return guarded([&] {
        hknot::MinimizeOptions o;
        if (opt) {
            o.max_iter = opt->max_iter;
            o.fd_step = opt->fd_step;
            o.init_step = opt->init_step;
            o.tol = opt->tol;
            o.samples = opt->samples;
            o.final_samples = opt->final_samples;
        }
        if (o.max_iter < 1 || o.samples < 64 || o.samples % 2 != 0)
            throw std::invalid_argument("minimize: bad options");
        *out = new hk_opt{hknot::minimize_energy(c0->spec.planar_curve(), o)};
        return HK_OK;
    });
}

void hk_opt_release(hk_opt* o) { delete o; }

hk_status hk_opt_trace_size(const hk_opt* o, int* out) {
    if (hk_status s = require(o && out, "null argument")) return s;
    *out = static_cast<int>(o->state.trace.size());
    return HK_OK;
}

hk_status hk_opt_trace_entry(const hk_opt* o, int i, double out[3]) {
    if (hk_status s = require(o && out, "null argument")) return s;
    if (hk_status s = require(i >= 0 && i < static_cast<int>(o->state.trace.size()),
                              "trace index out of range"))
        return s;
    out[0] = o->state.trace[i].iteration;
    out[1] = o->state.trace[i].energy;
    out[2] = o->state.trace[i].grad_norm;
    return HK_OK;
}

hk_status hk_opt_energy(const hk_opt* o, double* out) {
    if (hk_status s = require(o && out, "null argument")) return s;
    *out = o->state.energy;
    return HK_OK;
}

hk_status hk_opt_final_energy(const hk_opt* o, double* out) {
    if (hk_status s = require(o && out, "null argument")) return s;
    *out = o->state.final_energy;
    return HK_OK;
}

hk_status hk_opt_stalled(const hk_opt* o, int* out) {
    if (hk_status s = require(o && out, "null argument")) return s;
    *out = o->state.stalled ? 1 : 0;
    return HK_OK;
}

}  // extern "C"
