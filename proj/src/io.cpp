#include "extremal_sl/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace extremal_sl {

namespace {

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
    if (pos != s.size())
        throw std::invalid_argument("trailing junk after number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(s);
    while (std::getline(stream, item, sep))
        out.push_back(item);
    if (!s.empty() && s.back() == sep)
        out.push_back("");
    return out;
}

} // namespace

GridFunction parse_potential(const std::string& spec, std::size_t n) {
    if (spec.rfind("const:", 0) == 0) {
        const double c = parse_double(spec.substr(6));
        return GridFunction::constant(c, n);
    }
    if (spec.rfind("step:", 0) == 0) {
        const auto parts = split(spec.substr(5), ',');
        if (parts.size() != 3)
            throw std::invalid_argument("step potential needs 'step:a,b,value'");
        const double a = parse_double(parts[0]);
        const double b = parse_double(parts[1]);
        const double v = parse_double(parts[2]);
        if (!(a <= b))
            throw std::invalid_argument("step potential needs a <= b");
        return sample([&](double x) { return (x >= a && x <= b) ? v : 0.0; }, n);
    }
    std::ifstream in(spec);
    if (!in)
        throw std::invalid_argument("cannot open potential file '" + spec + "'");
    std::vector<double> values;
    double v;
    while (in >> v)
        values.push_back(v);
    if (!in.eof())
        throw std::invalid_argument("malformed number in potential file '" + spec + "'");
    if (values.size() != n + 1)
        throw std::invalid_argument("potential file '" + spec + "' has " +
                                    std::to_string(values.size()) + " values, expected " +
                                    std::to_string(n + 1));
    return GridFunction::build(std::move(values));
}

std::vector<double> parse_sweep(const std::string& spec) {
    if (spec.empty())
        throw std::invalid_argument("empty sweep specification");
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("sweep needs 'start:stop:step'");
        const double a = parse_double(parts[0]);
        const double b = parse_double(parts[1]);
        const double step = parse_double(parts[2]);
        if (!(step > 0.0))
            throw std::invalid_argument("sweep step must be positive");
        if (!(b >= a))
            throw std::invalid_argument("sweep needs stop >= start");
        std::vector<double> out;
        const std::size_t count =
            static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(a + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(spec, ','))
        out.push_back(parse_double(item));
    return out;
}

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string scan_csv(const ScanResult& scan) {
    std::string out = "gamma,m_hat,grad_norm,duality_gap,converged\n";
    for (const auto& r : scan.reports) {
        out += fmt_g17(r.gamma);
        out += ',';
        out += fmt_g17(r.m_hat);
        out += ',';
        out += fmt_g17(r.grad_norm);
        out += ',';
        out += fmt_g17(r.duality_gap);
        out += ',';
        out += r.converged ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string period_csv(const std::vector<PeriodProfile>& rows) {
    std::string out = "alpha,omega_minus,omega_plus,I0,err\n";
    for (const auto& r : rows) {
        out += fmt_g17(r.alpha);
        out += ',';
        out += fmt_g17(r.omega_minus);
        out += ',';
        out += fmt_g17(r.omega_plus);
        out += ',';
        out += fmt_g17(r.I0);
        out += ',';
        out += fmt_g17(r.err);
        out += '\n';
    }
    return out;
}

nlohmann::json eig_json(const SpectralResult& result, std::size_t n) {
    return nlohmann::json{
        {"schema_version", schema_version},
        {"n", n},
        {"k", result.k},
        {"lambda", result.lambda},
        {"residual", result.residual},
        {"eigenfunction", std::vector<double>(result.eigenfunction.values().begin(),
                                              result.eigenfunction.values().end())},
    };
}

nlohmann::json minimize_json(const OptimReport& report) {
    return nlohmann::json{
        {"schema_version", schema_version},
        {"n", report.minimizer.n()},
        {"gamma", report.gamma},
        {"m_hat", report.m_hat},
        {"grad_norm", report.grad_norm},
        {"duality_gap", report.duality_gap},
        {"iterations", report.iterations},
        {"converged", report.converged},
        {"minimizer", std::vector<double>(report.minimizer.values().begin(),
                                          report.minimizer.values().end())},
        {"extremal_potential",
         std::vector<double>(report.extremal_potential.values().begin(),
                             report.extremal_potential.values().end())},
    };
}

nlohmann::json shoot_json(double gamma, const Trajectory& traj,
                          double identity_rel_err) {
    std::vector<double> xs, ys, yps;
    xs.reserve(traj.samples.size());
    ys.reserve(traj.samples.size());
    yps.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        xs.push_back(s.x);
        ys.push_back(s.y);
        yps.push_back(s.yp);
    }
    return nlohmann::json{
        {"schema_version", schema_version},
        {"gamma", gamma},
        {"mu", traj.mu},
        {"y0", traj.y0},
        {"energy", traj.energy},
        {"alpha_hat", traj.alpha_hat},
        {"half_period", traj.half_period},
        {"energy_drift", traj.energy_drift},
        {"period_identity_rel_err", identity_rel_err},
        {"samples", {{"x", xs}, {"y", ys}, {"yp", yps}}},
    };
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        if (content.empty() || content.back() != '\n')
            std::cout << '\n';
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (content.empty() || content.back() != '\n')
        out << '\n';
    if (!out)
        throw std::runtime_error("failed writing output file '" + path + "'");
}

} // namespace extremal_sl
