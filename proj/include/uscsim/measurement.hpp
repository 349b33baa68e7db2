#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "uscsim/gaussian.hpp"

namespace uscsim {

/// Detection chain parameters: per-mode amplification of the quadrature
/// variances (V^2 per vacuum-unit variance) and added noise referred to the
/// input, in the same units as the covariance entries (vacuum = 1/4).
struct DetectionChain {
    double gain_a;
    double gain_b;
    double added_noise_a = 0.0;
    double added_noise_b = 0.0;
    std::uint64_t seed = 0;

    DetectionChain(double gain_a, double gain_b, double added_noise_a = 0.0,
                   double added_noise_b = 0.0, std::uint64_t seed = 0);
};

/// Synthetic heterodyne samples in volts, strictly interleaved pump on/off.
struct QuadratureRecordSet {
    std::vector<std::array<double, 4>> samples;  // X_a, P_a, X_b, P_b
    std::vector<std::uint8_t> pump_on;           // 1 = pump on, 0 = off

    std::size_t count() const { return samples.size(); }
};

/// Draw n interleaved records (on, off, on, ...) from the chain-amplified
/// model covariance (pump on) and the chain-amplified vacuum (pump off).
/// Identical seeds give bitwise-identical records.
QuadratureRecordSet sample_records(const CovarianceMatrix& v_model,
                                   const DetectionChain& chain, std::size_t n);

enum class Axis { Xa = 0, Pa = 1, Xb = 2, Pb = 3 };

/// 2-D histogram counts over uniform bins; real-valued after subtraction.
struct HistogramGrid {
    Axis axis_x;
    Axis axis_y;
    std::vector<double> x_edges;  // size nx + 1
    std::vector<double> y_edges;  // size ny + 1
    std::vector<double> counts;   // row-major, ny rows of nx columns

    double& at(std::size_t ix, std::size_t iy) {
        return counts[iy * (x_edges.size() - 1) + ix];
    }
    double at(std::size_t ix, std::size_t iy) const {
        return counts[iy * (x_edges.size() - 1) + ix];
    }
};

/// Pump-on histogram minus pump-off histogram over identical bin edges
/// spanning +-5 sample standard deviations. Outliers land in the edge bins,
/// so the total signed count is exactly n_on - n_off.
HistogramGrid histogram_difference(const QuadratureRecordSet& records, Axis ax,
                                   Axis ay, std::size_t bins = 101);

enum class PumpState { Off = 0, On = 1 };

/// Unbiased sample covariance (divisor n-1) of one pump state, in volts^2.
CovarianceMatrix estimate_covariance(const QuadratureRecordSet& records,
                                     PumpState which);

/// Per-mode least-squares scale relating the measured on-minus-off diagonal
/// blocks to the reference-minus-vacuum blocks of a known model state.
std::pair<double, double> calibrate_gain(const CovarianceMatrix& reference_model,
                                         const CovarianceMatrix& measured_on,
                                         const CovarianceMatrix& measured_off);

struct SqueezingEstimate {
    double r_db;          // NaN when flagged
    bool flagged;         // log argument was not positive (over-subtraction)
    double raw_argument;
};

/// r = 10 log10((sigma_on - sigma_off)/(gain * sigma_vac) + 1).
SqueezingEstimate estimate_squeezing(double sigma_on, double sigma_off, double gain,
                                     double sigma_vac = vacuum_variance);

}  // namespace uscsim
