#include "uscsim/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "uscsim/units.hpp"

namespace uscsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key +
                                    "': " + text);
    }
    if (consumed != text.size()) {
        throw std::invalid_argument("config: trailing characters in value for '" +
                                    key + "': " + text);
    }
    return value;
}

}  // namespace

ModePair SimConfig::modes() const { return ModePair(omega_a, omega_b, kappa_a, kappa_b); }

PumpConfig SimConfig::pumps() const {
    return PumpConfig(g_blue, g_red, omega_eff, phi_blue, phi_red);
}

std::map<std::string, double> SimConfig::file_units() const {
    return {
        {"omega_a_mhz", rad_to_mhz(omega_a)},
        {"omega_b_mhz", rad_to_mhz(omega_b)},
        {"kappa_a_mhz", rad_to_mhz(kappa_a)},
        {"kappa_b_mhz", rad_to_mhz(kappa_b)},
        {"g_blue_mhz", rad_to_mhz(g_blue)},
        {"g_red_mhz", rad_to_mhz(g_red)},
        {"omega_eff_mhz", rad_to_mhz(omega_eff)},
        {"phi_blue_rad", phi_blue},
        {"phi_red_rad", phi_red},
        {"temperature_mk", temperature * 1.0e3},
    };
}

SimConfig default_config() {
    SimConfig config{};
    config.omega_a = mhz_to_rad(8477.0);
    config.omega_b = mhz_to_rad(6476.0);
    config.kappa_a = mhz_to_rad(19.0);
    config.kappa_b = mhz_to_rad(22.0);
    config.g_blue = 0.0;
    config.g_red = 0.0;
    config.omega_eff = mhz_to_rad(26.0);
    config.phi_blue = 0.0;
    config.phi_red = 0.0;
    config.temperature = mk_to_kelvin(10.0);
    return config;
}

void set_config_key(SimConfig& config, const std::string& key, double value) {
    if (key == "omega_a_mhz") {
        config.omega_a = mhz_to_rad(value);
    } else if (key == "omega_b_mhz") {
        config.omega_b = mhz_to_rad(value);
    } else if (key == "kappa_a_mhz") {
        config.kappa_a = mhz_to_rad(value);
    } else if (key == "kappa_b_mhz") {
        config.kappa_b = mhz_to_rad(value);
    } else if (key == "g_blue_mhz") {
        config.g_blue = mhz_to_rad(value);
    } else if (key == "g_red_mhz") {
        config.g_red = mhz_to_rad(value);
    } else if (key == "omega_eff_mhz") {
        config.omega_eff = mhz_to_rad(value);
    } else if (key == "phi_blue_rad") {
        config.phi_blue = value;
    } else if (key == "phi_red_rad") {
        config.phi_red = value;
    } else if (key == "temperature_mk") {
        config.temperature = mk_to_kelvin(value);
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

SimConfig parse_config_text(const std::string& text) {
    SimConfig config = default_config();
    std::istringstream stream(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config: line " << lineno << " is not of the form key = value";
            throw std::invalid_argument(msg.str());
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        set_config_key(config, key, parse_number(key, value));
    }
    return config;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace uscsim
