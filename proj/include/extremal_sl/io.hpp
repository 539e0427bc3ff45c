#pragma once

#include "extremal_sl/optimize.hpp"
#include "extremal_sl/period.hpp"
#include "extremal_sl/sturm.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace extremal_sl {

inline constexpr int schema_version = 1;

enum class OutputFormat { csv, json };

/// Knobs shared by the command-line entry points.
struct RunConfig {
    std::size_t grid_n = 4096;
    double tol_alg = 1e-10;
    double tol_quad = 1e-10;
    std::size_t max_iters = 10000;
    std::string output_path = "-";   ///< "-" means stdout
    OutputFormat format = OutputFormat::json;
};

/// Potential specifications accepted on the command line:
///   "const:c"      constant c
///   "step:a,b,v"   v on [a,b], 0 elsewhere
///   anything else  path to a file with n+1 whitespace-separated nodal values
/// Throws std::invalid_argument on malformed specs or value-count mismatch.
GridFunction parse_potential(const std::string& spec, std::size_t n);

/// "a:b:step" sweeps (inclusive of b up to rounding) or comma-separated
/// lists; single numbers are one-element lists.
std::vector<double> parse_sweep(const std::string& spec);

/// Shortest exact decimal form via printf %.17g; used for CSV cells so that
/// repeated runs are byte-identical.
std::string fmt_g17(double v);

std::string scan_csv(const ScanResult& scan);
std::string period_csv(const std::vector<PeriodProfile>& rows);

nlohmann::json eig_json(const SpectralResult& result, std::size_t n);
nlohmann::json minimize_json(const OptimReport& report);
nlohmann::json shoot_json(double gamma, const Trajectory& traj,
                          double identity_rel_err);

/// Writes content to the path, or to stdout when path is "-".
void write_output(const std::string& path, const std::string& content);

} // namespace extremal_sl
