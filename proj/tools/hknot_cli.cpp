// Command-line front end. Links the C API only; all numerics live behind
// the hknot shared library.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hknot/hknot.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

void check(hk_status st, const std::string& context) {
    if (st == HK_OK) return;
    const int code = (st == HK_ERR_INVALID_ARGUMENT) ? kExitValidation : kExitNumerical;
    fail(code, context + ": " + hk_last_error());
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// numbers rendered with 17 significant digits so outputs are reproducible
// byte for byte
ordered_json num17(double v) { return ordered_json::parse(fmt17(v)); }

std::string load_curve_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return arg;
    std::ifstream in(arg);
    if (!in) fail(kExitValidation, "cannot open curve file: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CurveHandle {
    hk_curve* ptr = nullptr;
    ~CurveHandle() { hk_curve_release(ptr); }
};

struct KnotHandle {
    hk_knot* ptr = nullptr;
    ~KnotHandle() { hk_knot_release(ptr); }
};

struct MobiusHandle {
    hk_mobius* ptr = nullptr;
    ~MobiusHandle() { hk_mobius_release(ptr); }
};

struct OptHandle {
    hk_opt* ptr = nullptr;
    ~OptHandle() { hk_opt_release(ptr); }
};

struct Config {
    std::string command;
    std::string curve;
    int samples = 1024;
    std::uint64_t seed = 1;
    double zeta_re = 0.0, zeta_im = 0.0;
    double eps0 = 0.0;
    std::string output;
    std::string format;  // "json", "csv", or "" for the command default
    int trials = 10;
    int max_iter = 200;
};

void emit(const Config& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) fail(kExitValidation, "cannot open output file: " + cfg.output);
    out << text;
}

std::string csv_header(const Config& cfg) {
    std::ostringstream os;
    os << "# " << hk_version() << "\n";
    os << "# command=" << cfg.command << " samples=" << cfg.samples << " seed=" << cfg.seed
       << " trials=" << cfg.trials << " max_iter=" << cfg.max_iter << "\n";
    os << "# curve=" << cfg.curve << "\n";
    return os.str();
}

ordered_json meta(const Config& cfg) {
    ordered_json m;
    m["tool"] = hk_version();
    m["command"] = cfg.command;
    m["curve"] = ordered_json::parse(cfg.curve);
    m["samples"] = cfg.samples;
    return m;
}

std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

KnotHandle make_knot(const Config& cfg, const CurveHandle& curve) {
    KnotHandle k;
    check(hk_curve_lift(curve.ptr, cfg.samples, &k.ptr), "lift");
    return k;
}

hk_energy_report energy_of(const hk_knot* k, const char* method) {
    hk_energy_report rep{};
    check(hk_knot_energy(k, method, &rep), std::string("energy(") + method + ")");
    return rep;
}

int cmd_energy(const Config& cfg) {
    CurveHandle curve;
    check(hk_curve_from_json(cfg.curve.c_str(), &curve.ptr), "curve");
    KnotHandle knot = make_knot(cfg, curve);
    const auto rep = energy_of(knot.ptr, "subtraction");
    double len = 0.0, margin = 0.0;
    check(hk_knot_length(knot.ptr, &len), "length");
    int closed = 0;
    check(hk_knot_is_closed(knot.ptr, &closed), "is_closed");
    if (closed) check(hk_knot_embeddedness_margin(knot.ptr, &margin), "margin");

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << csv_header(cfg) << "value,method,samples,length\n"
           << fmt17(rep.value) << "," << rep.method << "," << rep.samples << "," << fmt17(len)
           << "\n";
        emit(cfg, os.str());
        return 0;
    }
    ordered_json j = meta(cfg);
    j["value"] = num17(rep.value);
    j["method"] = rep.method;
    j["length"] = num17(len);
    if (closed) j["embeddedness_margin"] = num17(margin);
    emit(cfg, render_json(j));
    return 0;
}

int cmd_beta(const Config& cfg) {
    CurveHandle curve;
    check(hk_curve_from_json(cfg.curve.c_str(), &curve.ptr), "curve");
    KnotHandle knot = make_knot(cfg, curve);
    hk_beta_result res{};
    check(hk_knot_beta(knot.ptr, cfg.zeta_re, cfg.zeta_im, cfg.eps0, &res), "beta");
    double len = 0.0;
    check(hk_knot_length(knot.ptr, &len), "length");

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << csv_header(cfg) << "zeta_re,zeta_im,value_re,value_im,method,epsilon0,length\n"
           << fmt17(cfg.zeta_re) << "," << fmt17(cfg.zeta_im) << "," << fmt17(res.value_re)
           << "," << fmt17(res.value_im) << "," << res.method << "," << fmt17(res.epsilon0)
           << "," << fmt17(len) << "\n";
        emit(cfg, os.str());
        return 0;
    }
    ordered_json j = meta(cfg);
    j["zeta_re"] = num17(cfg.zeta_re);
    j["zeta_im"] = num17(cfg.zeta_im);
    j["value_re"] = num17(res.value_re);
    j["value_im"] = num17(res.value_im);
    j["method"] = res.method;
    j["epsilon0"] = num17(res.epsilon0);
    j["length"] = num17(len);
    emit(cfg, render_json(j));
    return 0;
}

int cmd_invariance(const Config& cfg) {
    CurveHandle curve;
    check(hk_curve_from_json(cfg.curve.c_str(), &curve.ptr), "curve");
    KnotHandle knot = make_knot(cfg, curve);
    const auto base = energy_of(knot.ptr, "subtraction");

    std::ostringstream os;
    os << csv_header(cfg) << "trial,word,energy_base,energy_image,abs_dev\n";
    double worst = 0.0;
    int kept = 0;
    std::uint64_t attempt = 0;
    while (kept < cfg.trials && attempt < 20ull * cfg.trials) {
        const std::uint64_t word_seed = cfg.seed + attempt;
        ++attempt;
        MobiusHandle mob;
        check(hk_mobius_random(word_seed, 5, &mob.ptr), "random_mobius");
        char word[64] = {0};
        check(hk_mobius_word(mob.ptr, word, sizeof word), "word");

        KnotHandle image;
        if (hk_knot_transform(knot.ptr, mob.ptr, cfg.samples, &image.ptr) != HK_OK) {
            os << "# trial skipped (seed " << word_seed << ", word " << word
               << "): " << hk_last_error() << "\n";
            continue;
        }
        double diam = 0.0;
        check(hk_knot_diameter(image.ptr, &diam), "diameter");
        if (diam < 0.1 || diam > 50.0) {
            os << "# trial skipped (seed " << word_seed << ", word " << word
               << "): image diameter " << fmt17(diam) << " outside [0.1, 50]\n";
            continue;
        }
        hk_energy_report rep{};
        if (hk_knot_energy(image.ptr, "subtraction", &rep) != HK_OK) {
            os << "# trial skipped (seed " << word_seed << ", word " << word
               << "): " << hk_last_error() << "\n";
            continue;
        }
        const double dev = std::abs(rep.value - base.value);
        worst = std::max(worst, dev);
        os << kept << "," << word << "," << fmt17(base.value) << "," << fmt17(rep.value) << ","
           << fmt17(dev) << "\n";
        ++kept;
    }
    if (kept < cfg.trials) fail(kExitNumerical, "invariance: too many skipped trials");
    os << "max," << "," << "," << "," << fmt17(worst) << "\n";
    emit(cfg, os.str());
    return 0;
}

int cmd_cosine_check(const Config& cfg) {
    CurveHandle curve;
    check(hk_curve_from_json(cfg.curve.c_str(), &curve.ptr), "curve");
    KnotHandle knot = make_knot(cfg, curve);
    const auto sub = energy_of(knot.ptr, "subtraction");
    const auto had = energy_of(knot.ptr, "hadamard");
    const auto cos = energy_of(knot.ptr, "cosine");
    const auto bet = energy_of(knot.ptr, "beta");
    const double vals[4] = {sub.value, had.value, cos.value, bet.value};
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            const double denom = std::max({1e-3, std::abs(vals[a]), std::abs(vals[b])});
            worst = std::max(worst, std::abs(vals[a] - vals[b]) / denom);
        }
    ordered_json j = meta(cfg);
    j["subtraction"] = num17(sub.value);
    j["hadamard"] = num17(had.value);
    j["cosine"] = num17(cos.value);
    j["beta_minus_2"] = num17(bet.value);
    j["max_pairwise_rel_dev"] = num17(worst);
    emit(cfg, render_json(j));
    return 0;
}

int cmd_psi_fit(const Config& cfg) {
    CurveHandle curve;
    check(hk_curve_from_json(cfg.curve.c_str(), &curve.ptr), "curve");
    KnotHandle knot = make_knot(cfg, curve);
    hk_psi_fit fit{};
    check(hk_knot_psi_fit(knot.ptr, cfg.eps0, 32, &fit), "psi_fit");
    double mom[4] = {0, 0, 0, 0};
    check(hk_knot_curvature_moments(knot.ptr, mom), "curvature_moments");

    ordered_json j = meta(cfg);
    j["t_max"] = num17(fit.t_max);
    j["c1"] = num17(fit.c1);
    j["c3"] = num17(fit.c3);
    j["c5"] = num17(fit.c5);
    j["residual"] = num17(fit.residual);
    j["condition"] = num17(fit.condition);
    j["two_length"] = num17(2.0 * mom[0]);
    j["m2_over_36"] = num17(mom[1] / 36.0);
    emit(cfg, render_json(j));
    return 0;
}

int cmd_residues(const Config& cfg) {
    CurveHandle curve;
    check(hk_curve_from_json(cfg.curve.c_str(), &curve.ptr), "curve");
    KnotHandle knot = make_knot(cfg, curve);
    double r[3] = {0, 0, 0}, mom[4] = {0, 0, 0, 0};
    check(hk_knot_residues(knot.ptr, r), "residues");
    check(hk_knot_curvature_moments(knot.ptr, mom), "curvature_moments");

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << csv_header(cfg) << "r1,r3,r5,length,m2,m4,m4full\n"
           << fmt17(r[0]) << "," << fmt17(r[1]) << "," << fmt17(r[2]) << "," << fmt17(mom[0])
           << "," << fmt17(mom[1]) << "," << fmt17(mom[2]) << "," << fmt17(mom[3]) << "\n";
        emit(cfg, os.str());
        return 0;
    }
    ordered_json j = meta(cfg);
    j["r1"] = num17(r[0]);
    j["r3"] = num17(r[1]);
    j["r5"] = num17(r[2]);
    j["length"] = num17(mom[0]);
    j["m2"] = num17(mom[1]);
    j["m4"] = num17(mom[2]);
    j["m4full"] = num17(mom[3]);
    emit(cfg, render_json(j));
    return 0;
}

int cmd_minimize(const Config& cfg) {
    CurveHandle curve;
    check(hk_curve_from_json(cfg.curve.c_str(), &curve.ptr), "curve");
    hk_minimize_options opt{};
    hk_minimize_options_default(&opt);
    opt.max_iter = cfg.max_iter;
    opt.samples = std::min(cfg.samples, 512);
    OptHandle run;
    check(hk_minimize(curve.ptr, &opt, &run.ptr), "minimize");

    int nt = 0, stalled = 0;
    double e_final = 0.0, e_low = 0.0;
    check(hk_opt_trace_size(run.ptr, &nt), "trace_size");
    check(hk_opt_stalled(run.ptr, &stalled), "stalled");
    check(hk_opt_final_energy(run.ptr, &e_final), "final_energy");
    check(hk_opt_energy(run.ptr, &e_low), "energy");

    std::ostringstream os;
    os << csv_header(cfg);
    os << "# stalled=" << stalled << " energy=" << fmt17(e_low)
       << " final_energy_highres=" << fmt17(e_final) << "\n";
    os << "iteration,energy,grad_norm\n";
    for (int i = 0; i < nt; ++i) {
        double e[3];
        check(hk_opt_trace_entry(run.ptr, i, e), "trace_entry");
        os << static_cast<int>(e[0]) << "," << fmt17(e[1]) << "," << fmt17(e[2]) << "\n";
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_omega_check(const Config& cfg) {
    double omega_dev = 0.0;
    check(hk_check_omega_identity(cfg.seed, 1000, &omega_dev), "omega identity");

    CurveHandle curve;
    check(hk_curve_from_json(cfg.curve.c_str(), &curve.ptr), "curve");
    KnotHandle knot = make_knot(cfg, curve);
    double theta_dev = 0.0;
    check(hk_check_theta_agreement(knot.ptr, cfg.seed, 200, &theta_dev), "theta agreement");

    ordered_json j = meta(cfg);
    j["omega_abs_identity_max_dev"] = num17(omega_dev);
    j["theta_agreement_max_dev"] = num17(theta_dev);
    ordered_json ladder = ordered_json::array();
    const double hs[3] = {1e-2, 5e-3, 2.5e-3};
    double resid[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        check(hk_check_dalpha(cfg.seed, hs[i], &resid[i]), "dalpha");
        ordered_json row;
        row["h"] = num17(hs[i]);
        row["residual"] = num17(resid[i]);
        ladder.push_back(row);
    }
    j["dalpha_ladder"] = ladder;
    j["dalpha_observed_order"] = num17(std::log2(resid[0] / resid[2]) / 2.0);
    emit(cfg, render_json(j));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mobius-invariant energies of Legendrian knots in the Heisenberg group"};
    app.set_version_flag("--version", hk_version());

    Config cfg;
    std::string curve_arg = "{\"type\":\"gerono\"}";
    app.add_option("--command", cfg.command,
                   "one of: energy, beta, invariance, cosine-check, psi-fit, residues, "
                   "minimize, omega-check")
        ->required();
    app.add_option("--curve", curve_arg, "curve spec: inline JSON or a path to a JSON file");
    app.add_option("--samples", cfg.samples, "arc-length sample count")->default_val(1024);
    app.add_option("--seed", cfg.seed, "seed for randomized harnesses")->default_val(1);
    app.add_option("--zeta-re", cfg.zeta_re, "Re zeta for the beta command");
    app.add_option("--zeta-im", cfg.zeta_im, "Im zeta for the beta command");
    app.add_option("--eps0", cfg.eps0,
                   "split radius (beta) or fit radius t_max (psi-fit); 0 = auto");
    app.add_option("--output", cfg.output, "write the result to this path instead of stdout");
    app.add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv", ""}));
    app.add_option("--trials", cfg.trials, "trial count for the invariance command")
        ->default_val(10);
    app.add_option("--max-iter", cfg.max_iter, "iteration cap for the minimize command")
        ->default_val(200);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e) == 0) return 0;  // --help/--version
        return kExitValidation;
    }

    try {
        if (cfg.samples < 64 || cfg.samples > 65536 || cfg.samples % 2 != 0)
            fail(kExitValidation, "samples must be even and in [64, 65536]");
        cfg.curve = load_curve_arg(curve_arg);
        if (cfg.command == "energy") return cmd_energy(cfg);
        if (cfg.command == "beta") return cmd_beta(cfg);
        if (cfg.command == "invariance") return cmd_invariance(cfg);
        if (cfg.command == "cosine-check") return cmd_cosine_check(cfg);
        if (cfg.command == "psi-fit") return cmd_psi_fit(cfg);
        if (cfg.command == "residues") return cmd_residues(cfg);
        if (cfg.command == "minimize") return cmd_minimize(cfg);
        if (cfg.command == "omega-check") return cmd_omega_check(cfg);
        fail(kExitValidation, "unknown command: " + cfg.command);
    } catch (const CliError& e) {
        std::cerr << "hknot-cli: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "hknot-cli: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
