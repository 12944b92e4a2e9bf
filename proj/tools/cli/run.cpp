// Copyright 2026 The cbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cbell/errors.hpp"
#include "cbell/fock.hpp"
#include "cbell/hvbound.hpp"
#include "cbell/phasespace.hpp"
#include "cbell/weyl.hpp"

namespace cbell::cli {
namespace {

using nlohmann::json;

class UsageError : public Error {
   public:
    using Error::Error;
};

bool is_grid(const std::string& command) { return command == "wigner" || command == "sigma-curve"; }

std::string effective_format(const RunConfig& c) {
    if (!c.format.empty()) return c.format;
    return is_grid(c.command) ? "csv" : "json";
}

int effective_truncation(const RunConfig& c) {
    if (c.truncation) return *c.truncation;
    return (c.command == "chsh") ? 2 : (c.command == "bipartite" || c.command == "sigma-curve") ? 32 : 64;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json quad_json(const quad::QuadResult& q) {
    return {{"value", q.value},
            {"error_estimate", q.error_estimate},
            {"evaluations", q.evaluations},
            {"method", std::string(quad::to_string(q.method))}};
}

json config_json(const RunConfig& c) {
    return {{"command", c.command},
            {"truncation", effective_truncation(c)},
            {"r_max", c.spec.r_max},
            {"abs_tol", c.spec.abs_tol},
            {"rel_tol", c.spec.rel_tol},
            {"mc_samples", c.spec.mc_samples},
            {"mc_strata", c.spec.mc_strata},
            {"seed", c.spec.seed},
            {"sigma_step", c.spec.sigma_step},
            {"sigma_max", c.spec.sigma_max},
            {"n_max", c.n_max},
            {"format", effective_format(c)},
            {"state", c.state},
            {"points", c.points}};
}

FockOperator pauli(int which) {
    Matrix m(2, 2);
    if (which == 1) {
        m << 0, 1, 1, 0;
    } else {
        m << 1, 0, 0, -1;
    }
    return FockOperator(m, 2);
}

void run_chsh(const RunConfig& c, json& results, json& components) {
    if (effective_truncation(c) != 2) throw UsageError("chsh works on one qubit per side (truncation 2)");
    const FockOperator z = pauli(3), x = pauli(1);
    const double s = 1.0 / std::sqrt(2.0);
    // Settings reaching 2 sqrt 2 on the singlet.
    const FockOperator a = z, a_prime = x;
    const FockOperator b = -s * (z + x), b_prime = s * (x - z);
    const Decomposition d = chsh_decomposition(a, a_prime, b, b_prime);
    Vector psi = Vector::Zero(4);
    psi(1) = s;
    psi(2) = -s;
    const DensityMatrix rho = DensityMatrix::pure(psi, 2, 2);
    const BellReport r = bell_report(rho, d);
    const FockOperator target = tensor(a, b) + tensor(a, b_prime) + tensor(a_prime, b) - tensor(a_prime, b_prime);
    results = {{"hv_bound", r.hv_bound},
               {"qm_mean", r.qm_mean},
               {"qm_mean_squared", r.qm_mean * r.qm_mean},
               {"qm_second_moment", r.qm_second_moment},
               {"bound_difference", r.bound_difference},
               {"violation", r.violation},
               {"margin", r.margin},
               {"skipped_terms", r.skipped_terms},
               {"hilbert_dimension", r.hilbert_dimension},
               {"gleason_applicable", r.gleason_applicable}};
    components = {{"terms", d.size()},
                  {"reconstruction_residual", d.operator_sum().max_abs_diff(target)},
                  {"sandwich_residual", sandwich_sum(d).max_abs_diff(4.0 * FockOperator::identity(2, 2))},
                  {"state", "singlet"}};
}

void run_single(const RunConfig& c, json& results, json& components) {
    SingleParticleCase sp = SingleParticleCase::standard(effective_truncation(c));
    sp.spec = c.spec;
    const SingleParticleBound b = sp_hv_bound(sp);
    const GenericBound g = sp_hv_bound_generic(sp.state, sp.symbol, c.n_max, c.spec);
    const quad::QuadResult coarse = coarse_parity_bound(sp.state, sp.symbol, c.spec);
    results = {{"hv_bound", b.hv_bound},
               {"hv_bound_error", b.error_estimate},
               {"qm_mean", b.qm_mean},
               {"qm_mean_squared", b.qm_mean * b.qm_mean},
               {"violation", b.violation},
               {"margin", b.margin}};
    components = {{"symbol", sp.symbol.description()},
                  {"radius", sp.symbol.step_form()->radius},
                  {"I_inf_inf", quad_json(b.i_inf_inf)},
                  {"I_R_inf", quad_json(b.i_r_inf)},
                  {"I_inf_R", quad_json(b.i_inf_r)},
                  {"I_R_R", quad_json(b.i_r_r)},
                  {"qm_mean_quadrature", b.qm_mean_quadrature},
                  {"number_state_route",
                   {{"value", g.value},
                    {"quadrature_error", g.quadrature_error},
                    {"tail_estimate", g.tail_estimate},
                    {"radial_cutoff", g.radial_cutoff},
                    {"n_max", g.n_max}}},
                  {"coarse_parity_bound", quad_json(coarse)}};
}

json curve_json(const SigmaCurve& curve) {
    return {{"sigma", curve.sigma},
            {"f", curve.f},
            {"error", curve.error},
            {"integral", curve.integral},
            {"integral_error", curve.integral_error},
            {"tail_estimate", curve.tail_estimate},
            {"tail_decaying", curve.tail_decaying},
            {"peak", curve.peak},
            {"samples_per_point", curve.samples_per_point}};
}

void run_bipartite(const RunConfig& c, json& results, json& components) {
    BipartiteCase bp = BipartiteCase::standard(effective_truncation(c));
    bp.spec = c.spec;
    const BipartiteBound b = bp_hv_bound(bp);
    results = {{"hv_bound", b.hv_bound},
               {"hv_bound_error", b.error_estimate},
               {"qm_mean", b.qm_mean},
               {"qm_mean_squared", b.qm_mean * b.qm_mean},
               {"violation", b.violation},
               {"margin", b.margin}};
    components = {{"symbol", bp.symbol.description()},
                  {"I_11", quad_json(b.i_11)},
                  {"I_theta_1", quad_json(b.i_theta_1)},
                  {"I_B_theta", quad_json(b.i_b_theta)},
                  {"sigma_curve", curve_json(b.curve)}};
}

void run_eigenvalues(const RunConfig& c, json& results, json& components) {
    if (c.n_max < 1) throw UsageError("--n-max must be >= 1");
    const RadialSymbol symbol = RadialSymbol::single_particle();
    const SpectralExpansion q = quantize_radial(symbol, c.n_max, c.spec);
    json levels = json::array();
    for (int n = 0; n < c.n_max; ++n) {
        json row = {{"n", n},
                    {"quadrature", q.eigenvalues[static_cast<std::size_t>(n)]},
                    {"quadrature_error", q.error_estimates[static_cast<std::size_t>(n)]}};
        row["generating"] = (n <= 20) ? json(bell_eigenvalue_generating(n)) : json(nullptr);
        levels.push_back(row);
    }
    results = {{"levels", levels}};
    components = {{"symbol", symbol.description()}};
}

DensityMatrix parse_state(const std::string& name, int dim) {
    if (name.rfind("fock", 0) == 0 && name.size() > 4) {
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(name.substr(4), &used);
            if (used != name.size() - 4) throw std::invalid_argument(name);
        } catch (const std::exception&) {
            throw UsageError("unknown state '" + name + "'");
        }
        if (n < 0 || n >= dim) throw UsageError("state " + name + " outside the truncation");
        return DensityMatrix::number_state(n, dim);
    }
    throw UsageError("unknown state '" + name + "' (expected fock<n>)");
}

void run_wigner(const RunConfig& c, json& results, std::string& csv, bool want_csv) {
    if (c.points < 2) throw UsageError("--points must be >= 2");
    const DensityMatrix rho = parse_state(c.state, effective_truncation(c));
    const double r = c.spec.r_max;
    std::vector<double> re, im, w;
    std::ostringstream os;
    os << "re_alpha,im_alpha,w\n";
    for (int i = 0; i < c.points; ++i) {
        for (int j = 0; j < c.points; ++j) {
            const double x = -r + 2.0 * r * i / (c.points - 1);
            const double y = -r + 2.0 * r * j / (c.points - 1);
            const double value = wigner(rho, PhasePoint(x, y));
            re.push_back(x);
            im.push_back(y);
            w.push_back(value);
            if (want_csv) os << num(x) << ',' << num(y) << ',' << num(value) << '\n';
        }
    }
    results = {{"re_alpha", re}, {"im_alpha", im}, {"w", w}};
    if (want_csv) csv = os.str();
}

void run_sigma_curve(const RunConfig& c, json& results, std::string& csv, bool want_csv) {
    BipartiteCase bp = BipartiteCase::standard(effective_truncation(c));
    bp.spec = c.spec;
    const SigmaCurve curve = sigma_curve(bp);
    results = curve_json(curve);
    if (want_csv) {
        std::ostringstream os;
        os << "sigma,f,error\n";
        for (std::size_t i = 0; i < curve.sigma.size(); ++i) {
            os << num(curve.sigma[i]) << ',' << num(curve.f[i]) << ',' << num(curve.error[i]) << '\n';
        }
        csv = os.str();
    }
}

}  // namespace

Outcome execute(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    json results = json::object();
    json components = json::object();
    json errors = json::array();
    const std::string format = effective_format(config);
    try {
        if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");
        if (format == "csv" && !is_grid(config.command)) {
            throw UsageError("csv output is only available for wigner and sigma-curve");
        }
        config.spec.validate();
        const bool want_csv = format == "csv";
        if (config.command == "chsh") {
            run_chsh(config, results, components);
        } else if (config.command == "single-particle") {
            run_single(config, results, components);
        } else if (config.command == "bipartite") {
            run_bipartite(config, results, components);
        } else if (config.command == "eigenvalues") {
            run_eigenvalues(config, results, components);
        } else if (config.command == "wigner") {
            run_wigner(config, results, o.csv, want_csv);
        } else if (config.command == "sigma-curve") {
            run_sigma_curve(config, results, o.csv, want_csv);
        } else {
            throw UsageError("unknown command '" + config.command + "'");
        }
    } catch (const ConvergenceError& e) {
        errors.push_back({{"type", "convergence"},
                          {"message", e.what()},
                          {"estimate", e.estimate()},
                          {"error", e.error()}});
        o.exit_code = 2;
    } catch (const UsageError& e) {
        errors.push_back({{"type", "usage"}, {"message", e.what()}});
        o.exit_code = 1;
    } catch (const InvalidArgument& e) {
        errors.push_back({{"type", "usage"}, {"message", e.what()}});
        o.exit_code = 1;
    } catch (const Error& e) {
        errors.push_back({{"type", "numerical"}, {"message", e.what()}});
        o.exit_code = 2;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.document = {{"command", config.command},
                  {"config", config_json(config)},
                  {"results", results},
                  {"components", components},
                  {"errors", errors},
                  {"timing_seconds", elapsed},
                  {"tool_version", kToolVersion}};
    return o;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
    const Outcome o = execute(config);
    const bool csv = o.exit_code == 0 && effective_format(config) == "csv";
    const std::string text = csv ? o.csv : o.document.dump(2) + "\n";
    if (config.out == "-") {
        out << text;
    } else {
        std::ofstream file(config.out);
        if (!file) {
            log << "cannot write " << config.out << "\n";
            return 1;
        }
        file << text;
    }
    for (const auto& e : o.document["errors"]) log << "error: " << e["message"].get<std::string>() << "\n";
    return o.exit_code;
}

std::optional<int> parse(int argc, char** argv, RunConfig& config, std::ostream& log) {
    CLI::App app{"Collapse-based Bell operators: HV bounds and phase-space integrals"};
    app.add_option("command", config.command, "chsh | single-particle | bipartite | eigenvalues | wigner | sigma-curve")
        ->required()
        ->check(CLI::IsMember({"chsh", "single-particle", "bipartite", "eigenvalues", "wigner", "sigma-curve"}));
    app.add_option("--truncation", config.truncation, "Fock levels per mode (default 64, two-mode 32, chsh 2)");
    app.add_option("--r-max", config.spec.r_max, "Radial cutoff, also the wigner grid half-width")
        ->capture_default_str();
    app.add_option("--abs-tol", config.spec.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
    app.add_option("--rel-tol", config.spec.rel_tol, "Tolerance on n-truncation tails")->capture_default_str();
    app.add_option("--mc-samples", config.spec.mc_samples, "Monte Carlo samples per evaluation")
        ->capture_default_str();
    app.add_option("--mc-strata", config.spec.mc_strata, "Monte Carlo strata")->capture_default_str();
    app.add_option("--seed", config.spec.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--sigma-step", config.spec.sigma_step, "Grid step of the sigma scan")->capture_default_str();
    app.add_option("--sigma-max", config.spec.sigma_max, "End of the sigma scan")->capture_default_str();
    app.add_option("--n-max", config.n_max, "Number-state cut (single-particle) or level count (eigenvalues)")
        ->capture_default_str();
    app.add_option("--format", config.format, "json or csv (csv only for wigner and sigma-curve)");
    app.add_option("--out", config.out, "Output file, - for stdout")->capture_default_str();
    app.add_option("--state", config.state, "wigner state, fock<n>")->capture_default_str();
    app.add_option("--points", config.points, "wigner grid points per axis")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream sink;
        const int code = app.exit(e, sink, log);
        log << sink.str();
        return code == 0 ? 0 : 1;
    }
    return std::nullopt;
}

}  // namespace cbell::cli
