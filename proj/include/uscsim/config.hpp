#pragma once

#include <map>
#include <string>

#include "uscsim/model.hpp"

namespace uscsim {

/// Resolved simulation parameters. Frequencies internal (rad/s), temperature
/// in kelvin; the key=value file and CLI flags speak ordinary MHz / mK.
struct SimConfig {
    double omega_a;
    double omega_b;
    double kappa_a;
    double kappa_b;
    double g_blue;
    double g_red;
    double omega_eff;
    double phi_blue;
    double phi_red;
    double temperature;

    ModePair modes() const;
    PumpConfig pumps() const;

    /// key -> printable value in file units, for config echo headers.
    std::map<std::string, double> file_units() const;
};

/// Operating point used when a key is absent from the file.
SimConfig default_config();

/// Parse `key = value` lines; '#' starts a comment. Unknown keys are a hard
/// error, as are unparsable numbers.
SimConfig parse_config_text(const std::string& text);
SimConfig parse_config_file(const std::string& path);

/// Apply one file-format key to a config (used by CLI overrides).
void set_config_key(SimConfig& config, const std::string& key, double value);

}  // namespace uscsim
