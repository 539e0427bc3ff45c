#include "extremal_sl/io.hpp"
#include "extremal_sl/parallel.hpp"
#include "extremal_sl/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace extremal_sl;

int run_eig(const RunConfig& rc, const std::string& q_spec, std::size_t k) {
    const GridFunction q = parse_potential(q_spec, rc.grid_n);
    const SpectralResult result = lambda_k(q, k);
    write_output(rc.output_path, eig_json(result, rc.grid_n).dump(2));
    return 0;
}

int run_minimize(const RunConfig& rc, double gamma) {
    MinimizeConfig cfg;
    cfg.n = rc.grid_n;
    cfg.max_iters = rc.max_iters;
    const OptimReport report = minimize_G(GammaParam(gamma), cfg);
    write_output(rc.output_path, minimize_json(report).dump(2));
    return 0;
}

int run_scan(const RunConfig& rc, const std::string& gammas_spec) {
    const std::vector<double> gammas = parse_sweep(gammas_spec);
    MinimizeConfig cfg;
    cfg.n = rc.grid_n;
    cfg.max_iters = rc.max_iters;
    const ScanResult scan = scan_gamma(gammas, cfg);
    write_output(rc.output_path, scan_csv(scan));
    return 0;
}

int run_period(const RunConfig& rc, double gamma, const std::string& alphas_spec) {
    const GammaParam gp(gamma);
    const std::vector<double> alphas = parse_sweep(alphas_spec);
    std::vector<PeriodProfile> rows(alphas.size(),
                                    PeriodProfile{0, 0, 0, 0, 0, 0});
    parallel_for(alphas.size(), [&](std::size_t i) {
        rows[i] = I0(gp, alphas[i], rc.tol_quad);
    });
    write_output(rc.output_path, period_csv(rows));
    return 0;
}

int run_shoot(const RunConfig& rc, double gamma, double mu, double y0) {
    const GammaParam gp(gamma);
    const Trajectory traj = shoot(gp, mu, y0);
    const PeriodProfile prof = I0(gp, traj.alpha_hat, rc.tol_quad);
    const double predicted = (1.0 - gp.gamma) * prof.I0 / std::sqrt(mu);
    const double rel = std::abs(traj.half_period - predicted) / predicted;
    write_output(rc.output_path, shoot_json(gamma, traj, rel).dump(2));
    return 0;
}

int run_verify(const RunConfig& rc) {
    std::ostringstream buffer;
    const auto results = run_acceptance(rc.grid_n, std::cout);
    if (rc.output_path != "-") {
        for (const auto& r : results)
            buffer << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": "
                   << r.detail << "\n";
        write_output(rc.output_path, buffer.str());
    }
    return all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Variational bounds for the smallest Neumann eigenvalue over "
        "normalized potentials, and the period integrals behind them"};
    app.require_subcommand(1);
    app.fallthrough(); // accept the global options after the subcommand name

    RunConfig rc;
    app.add_option("--n", rc.grid_n, "grid intervals")->capture_default_str();
    app.add_option("--tol-alg", rc.tol_alg, "algebraic tolerance")
        ->capture_default_str();
    app.add_option("--tol-quad", rc.tol_quad, "quadrature tolerance")
        ->capture_default_str();
    app.add_option("--max-iters", rc.max_iters, "optimizer iteration budget")
        ->capture_default_str();
    app.add_option("--output,-o", rc.output_path, "output path, '-' for stdout")
        ->capture_default_str();

    std::string q_spec = "const:0";
    std::size_t k = 1;
    auto* eig = app.add_subcommand(
        "eig", "k-th Neumann eigenvalue and eigenfunction of -y'' + q y");
    eig->add_option("--q", q_spec, "potential: const:c, step:a,b,v, or a file")
        ->required();
    eig->add_option("--k", k, "eigenvalue index, 1-based")->capture_default_str();

    double gamma = 0.9;
    auto* minimize = app.add_subcommand(
        "minimize", "minimize the eigenvalue bound functional at one gamma");
    minimize->add_option("--gamma", gamma, "constraint exponent in (0,1)")
        ->required();

    std::string gammas_spec;
    auto* scan = app.add_subcommand(
        "scan", "minimize across a gamma sweep, report the trend");
    scan->add_option("--gammas", gammas_spec, "sweep: a:b:step or comma list")
        ->required();

    double pgamma = 0.5;
    std::string alphas_spec;
    auto* period = app.add_subcommand(
        "period", "period integrals of the reduced oscillation profile");
    period->add_option("--gamma", pgamma, "constraint exponent in (0,1)")
        ->required();
    period->add_option("--alphas", alphas_spec, "sweep: a:b:step or comma list")
        ->required();

    double sgamma = 0.5, mu = 1.0, y0 = 2.0;
    auto* shoot_cmd = app.add_subcommand(
        "shoot", "integrate one half oscillation of y'' = y^r - mu y");
    shoot_cmd->add_option("--gamma", sgamma, "constraint exponent in (0,1)")
        ->required();
    shoot_cmd->add_option("--mu", mu, "linear coefficient, > 0")->required();
    shoot_cmd->add_option("--y0", y0, "initial amplitude, > 0")->required();

    auto* verify = app.add_subcommand(
        "verify", "run the full verification checklist (exit 1 on any FAIL)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (eig->parsed()) return run_eig(rc, q_spec, k);
        if (minimize->parsed()) return run_minimize(rc, gamma);
        if (scan->parsed()) return run_scan(rc, gammas_spec);
        if (period->parsed()) return run_period(rc, pgamma, alphas_spec);
        if (shoot_cmd->parsed()) return run_shoot(rc, sgamma, mu, y0);
        if (verify->parsed()) return run_verify(rc);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
