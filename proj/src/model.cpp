#include "uscsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "uscsim/units.hpp"

namespace uscsim {

namespace {

constexpr double kappa_separation_factor = 50.0;

double coth(double x) {
    // 1 + 2/(e^{2x} - 1); stable for large x (expm1 overflows to inf -> 1).
    return 1.0 + 2.0 / std::expm1(2.0 * x);
}

double hbar_omega_over_2kt(double omega, double temperature_k) {
    return hbar * omega / (2.0 * k_boltzmann * temperature_k);
}

}  // namespace

ModePair::ModePair(double omega_a_, double omega_b_, double kappa_a_, double kappa_b_)
    : omega_a(omega_a_), omega_b(omega_b_), kappa_a(kappa_a_), kappa_b(kappa_b_) {
    if (!(omega_a > omega_b && omega_b > 0.0)) {
        throw std::invalid_argument("ModePair: requires omega_a > omega_b > 0");
    }
    if (!(kappa_a > 0.0 && kappa_b > 0.0)) {
        throw std::invalid_argument("ModePair: coupling rates must be positive");
    }
    if (kappa_a * kappa_separation_factor > omega_a ||
        kappa_b * kappa_separation_factor > omega_b) {
        throw std::invalid_argument(
            "ModePair: kappa must be well below omega (factor >= 50)");
    }
}

PumpConfig::PumpConfig(double g_blue_, double g_red_, double omega_eff_,
                       double phi_blue_, double phi_red_)
    : g_blue(g_blue_), g_red(g_red_), phi_blue(phi_blue_), phi_red(phi_red_),
      omega_eff(omega_eff_) {
    if (g_blue < 0.0 || g_red < 0.0) {
        throw std::invalid_argument("PumpConfig: coupling rates must be >= 0");
    }
    if (omega_eff < 0.0) {
        throw std::invalid_argument("PumpConfig: omega_eff must be >= 0");
    }
}

PumpConfig PumpConfig::from_amplitudes(double chi, double amp_blue, double amp_red,
                                       double omega_eff, double phi_blue,
                                       double phi_red) {
    auto [g_blue, g_red] = effective_couplings(chi, amp_blue, amp_red);
    return PumpConfig(g_blue, g_red, omega_eff, phi_blue, phi_red);
}

std::pair<double, double> effective_couplings(double chi, double amp_blue,
                                              double amp_red) {
    if (!(chi > 0.0)) {
        throw std::invalid_argument("effective_couplings: chi must be positive");
    }
    if (amp_blue < 0.0 || amp_red < 0.0) {
        throw std::invalid_argument("effective_couplings: amplitudes must be >= 0");
    }
    return {chi * amp_blue, chi * amp_red};
}

DriftMatrix build_drift(const ModePair& modes, const PumpConfig& pumps) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> blue = pumps.g_blue * std::exp(i * pumps.phi_blue);
    const std::complex<double> red = pumps.g_red * std::exp(i * pumps.phi_red);

    // dc/dt = (i w_eff - ka/2) c - i g_R e^{i phi_R} d - i g_B e^{i phi_B} d^dag
    // dd/dt = (i w_eff - kb/2) d - i g_R e^{-i phi_R} c - i g_B e^{i phi_B} c^dag
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    a(0, 0) = i * pumps.omega_eff - 0.5 * modes.kappa_a;
    a(0, 1) = -i * red;
    a(1, 0) = -i * std::conj(red);
    a(1, 1) = i * pumps.omega_eff - 0.5 * modes.kappa_b;
    a(0, 3) = -i * blue;
    a(1, 2) = -i * blue;
    // conjugate rows for (c^dag, d^dag)
    a.block<2, 2>(2, 2) = a.block<2, 2>(0, 0).conjugate();
    a.block<2, 2>(2, 0) = a.block<2, 2>(0, 2).conjugate();
    return DriftMatrix{a};
}

StabilityReport stability(const DriftMatrix& drift) {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(drift.entries, false);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "stability: eigenvalue solver failed on drift matrix\n"
            << drift.entries;
        throw std::runtime_error(msg.str());
    }

    StabilityReport report{};
    double margin = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
        report.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
        margin = std::max(margin, solver.eigenvalues()(k).real());
    }
    const double kappa_a = -2.0 * drift.entries(0, 0).real();
    const double kappa_b = -2.0 * drift.entries(1, 1).real();
    const double tol = 1e-6 * std::max(kappa_a, kappa_b);
    report.margin = margin;
    report.stable = margin < -tol;
    report.critical = std::abs(margin) <= tol;
    return report;
}

NormalModes normal_mode_frequencies(const PumpConfig& pumps) {
    const double scale = std::max({pumps.g_blue, pumps.g_red, 1.0});
    if (std::abs(pumps.g_blue - pumps.g_red) > 1e-9 * scale) {
        throw std::invalid_argument(
            "normal_mode_frequencies: defined only at the symmetric point "
            "g_blue = g_red");
    }
    const double g = 0.5 * (pumps.g_blue + pumps.g_red);
    const double w = pumps.omega_eff;

    NormalModes nm{};
    nm.omega_plus = std::sqrt(w * (w + 2.0 * g));
    if (2.0 * g > w) {
        nm.omega_minus = 0.0;
        nm.collapsed = true;
    } else {
        nm.omega_minus = std::sqrt(w * (w - 2.0 * g));
        nm.collapsed = false;
    }
    return nm;
}

double thermal_asymmetry(const ModePair& modes, double temperature_k) {
    if (temperature_k < 0.0) {
        throw std::invalid_argument("thermal_asymmetry: temperature must be >= 0");
    }
    if (temperature_k == 0.0) {
        return 0.0;  // coth -> 1 for both modes
    }
    const double x_a = hbar_omega_over_2kt(modes.omega_a, temperature_k);
    const double x_b = hbar_omega_over_2kt(modes.omega_b, temperature_k);
    return coth(x_b) - coth(x_a);
}

}  // namespace uscsim
