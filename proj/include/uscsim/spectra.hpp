#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "uscsim/model.hpp"

namespace uscsim {

enum class Port { A, B };

/// Bogoliubov scattering matrix of the circuit at one probe offset omega
/// (rotating frame), mapping (c_in, d_in, c_in^dag, d_in^dag) to the
/// corresponding output vector: S = K (-i omega I - A)^{-1} K - I with
/// K = diag(sqrt(ka), sqrt(kb), sqrt(ka), sqrt(kb)).
struct ScatteringMatrix {
    double omega;
    Eigen::Matrix4cd entries;
};

ScatteringMatrix scattering_matrix(const DriftMatrix& drift, const ModePair& modes,
                                   double omega);

/// Photon-flux spectral density of one output port over a probe-offset grid.
/// Normal-ordered (vacuum subtracted): pumps off gives identically zero.
struct SpectrumTrace {
    std::vector<double> grid;    // strictly increasing, rad/s
    std::vector<double> values;  // >= 0 everywhere
    Port port = Port::A;
    bool near_critical = false;  // stability margin within tolerance of zero
};

/// 2001 points spanning +-4*max(omega_eff, kappa); resolves all peaks with
/// >= 10 points per kappa linewidth at the usual operating points.
std::vector<double> default_grid(const ModePair& modes, const PumpConfig& pumps,
                                 std::size_t points = 2001);

std::pair<SpectrumTrace, SpectrumTrace> emission_psd(const ModePair& modes,
                                                     const PumpConfig& pumps,
                                                     const std::vector<double>& grid);

struct Peak {
    double omega;   // rad/s, refined by quadratic interpolation
    double height;
};

/// Local maxima exceeding min_prominence * global maximum, positions refined
/// by the parabola through the three samples around each maximum.
std::vector<Peak> find_peaks(const SpectrumTrace& trace, double min_prominence = 0.05);

}  // namespace uscsim
