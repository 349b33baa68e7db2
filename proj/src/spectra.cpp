#include "uscsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uscsim/units.hpp"

// Fourier convention, fixed project-wide: f[w] = Integral e^{i w t} f(t) dt,
// so d/dt -> -i w and the intracavity solution is v[w] = (-i w I - A)^{-1} K v_in[w].
// Creation rows at probe offset w pair with annihilation rows at -w.

namespace uscsim {

namespace {

Eigen::Vector4d coupling_diagonal(const ModePair& modes) {
    const double ra = std::sqrt(modes.kappa_a);
    const double rb = std::sqrt(modes.kappa_b);
    return Eigen::Vector4d(ra, rb, ra, rb);
}

void require_not_unstable(const DriftMatrix& drift, const char* who) {
    const StabilityReport report = stability(drift);
    if (!report.stable && !report.critical) {
        std::ostringstream msg;
        msg << who << ": system is unstable (stability margin "
            << report.margin << " rad/s)";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

ScatteringMatrix scattering_matrix(const DriftMatrix& drift, const ModePair& modes,
                                   double omega) {
    require_not_unstable(drift, "scattering_matrix");

    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix4cd resolvent_arg = -i * omega * Eigen::Matrix4cd::Identity()
                                     - drift.entries;
    Eigen::FullPivLU<Eigen::Matrix4cd> lu(resolvent_arg);
    if (!lu.isInvertible()) {
        std::ostringstream msg;
        msg << "scattering_matrix: singular resolvent at omega = " << omega;
        throw std::runtime_error(msg.str());
    }
    const Eigen::Vector4d k = coupling_diagonal(modes);
    Eigen::Matrix4cd s = k.asDiagonal() * lu.inverse() * k.asDiagonal();
    s -= Eigen::Matrix4cd::Identity();
    return ScatteringMatrix{omega, s};
}

std::vector<double> default_grid(const ModePair& modes, const PumpConfig& pumps,
                                 std::size_t points) {
    if (points < 2) {
        throw std::invalid_argument("default_grid: need at least 2 points");
    }
    const double span =
        4.0 * std::max(pumps.omega_eff, std::max(modes.kappa_a, modes.kappa_b));
    std::vector<double> grid(points);
    const double step = 2.0 * span / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) {
        grid[k] = -span + step * static_cast<double>(k);
    }
    return grid;
}

std::pair<SpectrumTrace, SpectrumTrace> emission_psd(const ModePair& modes,
                                                     const PumpConfig& pumps,
                                                     const std::vector<double>& grid) {
    if (grid.empty()) {
        throw std::invalid_argument("emission_psd: empty grid");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw std::invalid_argument("emission_psd: grid must be strictly increasing");
        }
    }

    const DriftMatrix drift = build_drift(modes, pumps);
    require_not_unstable(drift, "emission_psd");
    const bool near_critical = stability(drift).critical;

    SpectrumTrace a{grid, std::vector<double>(grid.size()), Port::A, near_critical};
    SpectrumTrace b{grid, std::vector<double>(grid.size()), Port::B, near_critical};

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const ScatteringMatrix s = scattering_matrix(drift, modes, grid[k]);
        // <c_out^dag[w] c_out[w]>: anomalous elements of the creation rows.
        a.values[k] = std::norm(s.entries(2, 0)) + std::norm(s.entries(2, 1));
        b.values[k] = std::norm(s.entries(3, 0)) + std::norm(s.entries(3, 1));
    }
    return {std::move(a), std::move(b)};
}

std::vector<Peak> find_peaks(const SpectrumTrace& trace, double min_prominence) {
    const std::size_t n = trace.values.size();
    if (n == 0) {
        throw std::invalid_argument("find_peaks: empty trace");
    }
    const double global_max = *std::max_element(trace.values.begin(), trace.values.end());
    std::vector<Peak> peaks;
    if (!(global_max > 0.0)) {
        return peaks;
    }
    const double threshold = min_prominence * global_max;

    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double y0 = trace.values[k - 1];
        const double y1 = trace.values[k];
        const double y2 = trace.values[k + 1];
        if (!(y1 > y0 && y1 >= y2) || y1 < threshold) {
            continue;
        }
        // skip the flat interior of a plateau; the first sample wins
        if (y1 == y2) {
            std::size_t j = k + 1;
            while (j + 1 < n && trace.values[j] == y1) ++j;
            if (trace.values[j] > y1) continue;
        }

        // vertex of the parabola through the three surrounding samples
        const double x0 = trace.grid[k - 1];
        const double x1 = trace.grid[k];
        const double x2 = trace.grid[k + 1];
        const double d01 = x1 - x0;
        const double d12 = x1 - x2;
        const double num = d01 * d01 * (y1 - y2) - d12 * d12 * (y1 - y0);
        const double den = d01 * (y1 - y2) - d12 * (y1 - y0);
        Peak p{x1, y1};
        if (std::abs(den) > 0.0) {
            const double shift = 0.5 * num / den;
            if (std::abs(shift) <= std::max(d01, -d12)) {
                p.omega = x1 - shift;
                // parabola value at the vertex
                const double a_coef =
                    ((y0 - y1) / ((x0 - x1) * (x0 - x2)) + (y2 - y1) / ((x2 - x1) * (x2 - x0)));
                p.height = y1 - a_coef * shift * shift;
                if (!(p.height >= y1)) p.height = y1;
            }
        }
        peaks.push_back(p);
    }
    return peaks;
}

}  // namespace uscsim
