#pragma once

#include <array>
#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace uscsim {

/// Physical resonator pair: mode frequencies and output coupling rates.
/// All rates are angular (rad/s). Construction validates omega_a > omega_b > 0,
/// positive couplings, and kappa << omega (factor >= 50 separation).
struct ModePair {
    double omega_a;
    double omega_b;
    double kappa_a;
    double kappa_b;

    ModePair(double omega_a, double omega_b, double kappa_a, double kappa_b);
};

/// Effective rotating-frame system set by the two pump tones: the blue pump
/// drives pair production at rate g_blue, the red pump drives frequency
/// conversion at rate g_red, and both effective modes sit at omega_eff.
/// Phases default to zero; they rotate the squeezing quadratures.
struct PumpConfig {
    double g_blue = 0.0;      // rad/s, >= 0
    double g_red = 0.0;       // rad/s, >= 0
    double phi_blue = 0.0;    // rad
    double phi_red = 0.0;     // rad
    double omega_eff = 0.0;   // rad/s, >= 0

    PumpConfig(double g_blue, double g_red, double omega_eff,
               double phi_blue = 0.0, double phi_red = 0.0);

    /// Alternative input pathway: couplings derived from raw pump drive
    /// amplitudes through the linear calibration g = chi * |amp|.
    static PumpConfig from_amplitudes(double chi, double amp_blue, double amp_red,
                                      double omega_eff,
                                      double phi_blue = 0.0, double phi_red = 0.0);
};

/// g = chi * amp for each pump; linear in the drive amplitude.
std::pair<double, double> effective_couplings(double chi, double amp_blue,
                                              double amp_red);

/// Generator A of the linear Langevin dynamics dv/dt = A v + K v_in in the
/// operator basis v = (c, d, c^dag, d^dag). The lower half is the elementwise
/// conjugate of the upper half (rows for c^dag, d^dag).
struct DriftMatrix {
    Eigen::Matrix4cd entries;
};

DriftMatrix build_drift(const ModePair& modes, const PumpConfig& pumps);

struct StabilityReport {
    bool stable;       // margin < -tolerance
    bool critical;     // |margin| <= tolerance (eigenvalue jitter at collapse)
    double margin;     // max over eigenvalues of Re(lambda), rad/s
    std::array<std::complex<double>, 4> eigenvalues;
};

/// Spectral stability of the drift matrix. The tolerance below which a margin
/// counts as zero is 1e-6 * max(kappa_a, kappa_b), with the kappas read off
/// the diagonal of the drift matrix itself.
StabilityReport stability(const DriftMatrix& drift);

struct NormalModes {
    double omega_plus;
    double omega_minus;
    bool collapsed;    // 2g > omega_eff: the lower hybrid frequency vanished
};

/// Hybrid normal-mode frequencies of the lossless symmetric system
/// (g_blue = g_red = g): omega_pm = omega_eff * sqrt(1 +- 2g/omega_eff).
NormalModes normal_mode_frequencies(const PumpConfig& pumps);

/// Pump-on minus pump-off output power difference under red-only driving,
/// proportional to coth(hbar*omega_b/2kT) - coth(hbar*omega_a/2kT); returned
/// in units of hbar*omega_a. Zero at T = 0 and for omega_a = omega_b.
double thermal_asymmetry(const ModePair& modes, double temperature_k);

}  // namespace uscsim
