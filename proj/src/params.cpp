#include "fdbec/params.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace fdbec {

double PhysicalParams::big_gamma() const {
    return gamma * std::sqrt(static_cast<double>(n_atoms));
}

double PhysicalParams::eta() const {
    return 1.0 / static_cast<double>(n_atoms);
}

void PhysicalParams::validate() const {
    if (!(gamma > 0.0))
        throw std::invalid_argument("PhysicalParams: gamma must be > 0");
    if (n_atoms < 1)
        throw std::invalid_argument("PhysicalParams: n_atoms must be >= 1");
    if (!(g >= 0.0))
        throw std::invalid_argument("PhysicalParams: g must be >= 0");
    if (!(kappa >= 0.0))
        throw std::invalid_argument("PhysicalParams: kappa must be >= 0");
    if (!std::isfinite(omega_bar) || !std::isfinite(omega_laser))
        throw std::invalid_argument("PhysicalParams: frequencies must be finite");
}

DerivedParams derive_params(const PhysicalParams& p) {
    p.validate();
    return {p.detuning(), p.big_gamma(), p.eta()};
}

Complex beta0(const PhysicalParams& p) {
    p.validate();
    const double root_n = std::sqrt(static_cast<double>(p.n_atoms));
    return Complex(0.0, -p.g * root_n) / Complex(p.big_gamma(), p.detuning());
}

double collision_rate(double density, double scatt_length, double v_rms) {
    if (density < 0.0 || scatt_length < 0.0 || v_rms < 0.0)
        throw std::invalid_argument("collision_rate: inputs must be >= 0");
    return density * std::numbers::pi * scatt_length * scatt_length * v_rms;
}

PhysicalParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open parameter file: " + path);

    std::map<std::string, double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string key, eq, value;
        std::istringstream ls(line);
        if (!(ls >> key)) continue; // blank line
        if (!(ls >> eq >> value) || eq != "=")
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        try {
            values[key] = std::stod(value);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": bad numeric value '" + value + "'");
        }
    }

    static const std::set<std::string> known = {"omega_bar", "omega_laser", "g",
                                                "gamma", "n_atoms", "kappa"};
    for (const auto& [k, v] : values)
        if (!known.count(k))
            throw std::runtime_error(path + ": unknown key '" + k + "'");
    for (const auto& k : known)
        if (!values.count(k))
            throw std::runtime_error(path + ": missing required key '" + k + "'");

    PhysicalParams p;
    p.omega_bar = values["omega_bar"];
    p.omega_laser = values["omega_laser"];
    p.g = values["g"];
    p.gamma = values["gamma"];
    p.n_atoms = static_cast<long>(std::llround(values["n_atoms"]));
    p.kappa = values["kappa"];
    p.validate();
    return p;
}

} // namespace fdbec
