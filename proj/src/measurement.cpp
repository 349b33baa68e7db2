#include "uscsim/measurement.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "uscsim/units.hpp"

namespace uscsim {

namespace {

// Gaussian deviates from explicit Box-Muller over mt19937_64 words, so record
// sets are reproducible per seed independent of the standard library's
// normal_distribution.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = two_pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    double uniform_open() {
        // strictly inside (0, 1)
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

Eigen::Matrix4d chain_covariance(const Eigen::Matrix4d& v, const DetectionChain& chain) {
    Eigen::Vector4d root_gain;
    const double ra = std::sqrt(chain.gain_a);
    const double rb = std::sqrt(chain.gain_b);
    root_gain << ra, ra, rb, rb;
    Eigen::Matrix4d noisy = v;
    noisy(0, 0) += chain.added_noise_a;
    noisy(1, 1) += chain.added_noise_a;
    noisy(2, 2) += chain.added_noise_b;
    noisy(3, 3) += chain.added_noise_b;
    return root_gain.asDiagonal() * noisy * root_gain.asDiagonal();
}

Eigen::Matrix4d cholesky_factor(const Eigen::Matrix4d& sigma, const char* label) {
    Eigen::LLT<Eigen::Matrix4d> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument(std::string("sample_records: ") + label +
                                    " covariance is not positive definite");
    }
    return llt.matrixL();
}

std::size_t axis_index(Axis axis) { return static_cast<std::size_t>(axis); }

double sample_std(const QuadratureRecordSet& records, Axis axis) {
    const std::size_t idx = axis_index(axis);
    double mean = 0.0;
    for (const auto& s : records.samples) mean += s[idx];
    mean /= static_cast<double>(records.count());
    double var = 0.0;
    for (const auto& s : records.samples) {
        const double d = s[idx] - mean;
        var += d * d;
    }
    var /= static_cast<double>(records.count() - 1);
    return std::sqrt(var);
}

}  // namespace

DetectionChain::DetectionChain(double gain_a_, double gain_b_, double added_noise_a_,
                               double added_noise_b_, std::uint64_t seed_)
    : gain_a(gain_a_), gain_b(gain_b_), added_noise_a(added_noise_a_),
      added_noise_b(added_noise_b_), seed(seed_) {
    if (!(gain_a > 0.0) || !(gain_b > 0.0)) {
        throw std::invalid_argument("DetectionChain: gains must be positive");
    }
    if (added_noise_a < 0.0 || added_noise_b < 0.0) {
        throw std::invalid_argument("DetectionChain: added noise must be >= 0");
    }
}

QuadratureRecordSet sample_records(const CovarianceMatrix& v_model,
                                   const DetectionChain& chain, std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("sample_records: need at least 2 samples");
    }
    if (!is_physical(v_model)) {
        throw std::invalid_argument("sample_records: model covariance is unphysical");
    }
    const Eigen::Matrix4d l_on =
        cholesky_factor(chain_covariance(v_model.entries, chain), "pump-on");
    const Eigen::Matrix4d l_off =
        cholesky_factor(chain_covariance(vacuum_covariance().entries, chain), "pump-off");

    GaussianStream rng(chain.seed);
    QuadratureRecordSet records;
    records.samples.resize(n);
    records.pump_on.resize(n);
    Eigen::Vector4d z;
    for (std::size_t k = 0; k < n; ++k) {
        for (int i = 0; i < 4; ++i) z(i) = rng.next();
        const bool on = (k % 2 == 0);
        const Eigen::Vector4d x = (on ? l_on : l_off) * z;
        records.samples[k] = {x(0), x(1), x(2), x(3)};
        records.pump_on[k] = on ? 1 : 0;
    }
    return records;
}

HistogramGrid histogram_difference(const QuadratureRecordSet& records, Axis ax,
                                   Axis ay, std::size_t bins) {
    if (records.count() == 0) {
        throw std::invalid_argument("histogram_difference: empty record set");
    }
    if (bins < 1) {
        throw std::invalid_argument("histogram_difference: need at least one bin");
    }
    bool has_on = false;
    bool has_off = false;
    for (std::uint8_t tag : records.pump_on) {
        (tag ? has_on : has_off) = true;
    }
    if (!has_on || !has_off) {
        throw std::invalid_argument(
            "histogram_difference: records must contain both pump states");
    }

    const double span_x = 5.0 * sample_std(records, ax);
    const double span_y = 5.0 * sample_std(records, ay);
    HistogramGrid grid;
    grid.axis_x = ax;
    grid.axis_y = ay;
    grid.x_edges.resize(bins + 1);
    grid.y_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(bins);
        grid.x_edges[i] = -span_x + 2.0 * span_x * frac;
        grid.y_edges[i] = -span_y + 2.0 * span_y * frac;
    }
    grid.counts.assign(bins * bins, 0.0);

    const std::size_t ix_col = axis_index(ax);
    const std::size_t iy_col = axis_index(ay);
    const auto bin_of = [bins](double value, double span) -> std::size_t {
        if (span <= 0.0) return 0;
        const double pos = (value + span) / (2.0 * span) * static_cast<double>(bins);
        if (pos < 0.0) return 0;
        const auto idx = static_cast<std::size_t>(pos);
        return std::min(idx, bins - 1);  // clamp outliers into the edge bins
    };
    for (std::size_t k = 0; k < records.count(); ++k) {
        const auto& s = records.samples[k];
        const std::size_t bx = bin_of(s[ix_col], span_x);
        const std::size_t by = bin_of(s[iy_col], span_y);
        grid.counts[by * bins + bx] += records.pump_on[k] ? 1.0 : -1.0;
    }
    return grid;
}

CovarianceMatrix estimate_covariance(const QuadratureRecordSet& records,
                                     PumpState which) {
    const std::uint8_t want = (which == PumpState::On) ? 1 : 0;
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();
    std::size_t n = 0;
    for (std::size_t k = 0; k < records.count(); ++k) {
        if (records.pump_on[k] != want) continue;
        for (int i = 0; i < 4; ++i) mean(i) += records.samples[k][static_cast<std::size_t>(i)];
        ++n;
    }
    if (n < 2) {
        throw std::invalid_argument(
            "estimate_covariance: need at least 2 samples of the requested state");
    }
    mean /= static_cast<double>(n);
    Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
    Eigen::Vector4d x;
    for (std::size_t k = 0; k < records.count(); ++k) {
        if (records.pump_on[k] != want) continue;
        for (int i = 0; i < 4; ++i) x(i) = records.samples[k][static_cast<std::size_t>(i)];
        x -= mean;
        acc += x * x.transpose();
    }
    return CovarianceMatrix{acc / static_cast<double>(n - 1)};
}

std::pair<double, double> calibrate_gain(const CovarianceMatrix& reference_model,
                                         const CovarianceMatrix& measured_on,
                                         const CovarianceMatrix& measured_off) {
    const Eigen::Matrix4d contrast =
        reference_model.entries - vacuum_covariance().entries;
    const Eigen::Matrix4d measured = measured_on.entries - measured_off.entries;

    const auto block_scale = [&](int offset) -> double {
        const Eigen::Matrix2d r = contrast.block<2, 2>(offset, offset);
        const Eigen::Matrix2d m = measured.block<2, 2>(offset, offset);
        const double denom = (r.array() * r.array()).sum();
        if (!(denom > 0.0)) {
            throw std::invalid_argument(
                "calibrate_gain: reference has no contrast against vacuum");
        }
        return (m.array() * r.array()).sum() / denom;
    };
    return {block_scale(0), block_scale(2)};
}

SqueezingEstimate estimate_squeezing(double sigma_on, double sigma_off, double gain,
                                     double sigma_vac) {
    if (!(gain > 0.0)) {
        throw std::invalid_argument("estimate_squeezing: gain must be positive");
    }
    if (sigma_on < 0.0 || sigma_off < 0.0) {
        throw std::invalid_argument("estimate_squeezing: variances must be >= 0");
    }
    if (!(sigma_vac > 0.0)) {
        throw std::invalid_argument("estimate_squeezing: sigma_vac must be positive");
    }
    const double argument = (sigma_on - sigma_off) / (gain * sigma_vac) + 1.0;
    if (!(argument > 0.0)) {
        return {std::numeric_limits<double>::quiet_NaN(), true, argument};
    }
    return {10.0 * std::log10(argument), false, argument};
}

}  // namespace uscsim
